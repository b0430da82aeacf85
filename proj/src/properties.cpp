#include "blowup/properties.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "blowup/admissibility.hpp"
#include "blowup/biharmonic.hpp"
#include "blowup/catalog.hpp"
#include "blowup/errors.hpp"
#include "blowup/oracles.hpp"
#include "blowup/point_search.hpp"

namespace blowup {

namespace {

// Distinct counters per suite within the Properties stream.
constexpr std::uint64_t kInvariance = 1ULL << 32;
constexpr std::uint64_t kGrid = 2ULL << 32;
constexpr std::uint64_t kAdjoin = 3ULL << 32;
constexpr std::uint64_t kCover = 4ULL << 32;
constexpr std::uint64_t kBiharmonic = 5ULL << 32;
constexpr std::uint64_t kMean = 6ULL << 32;

Eigen::MatrixXd gaussian(Eigen::Index rows, Eigen::Index cols, CounterRng& rng) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = rng.normal();
    return m;
}

int uniform_int(CounterRng& rng, int lo, int hi) {
    return lo + static_cast<int>(rng.uniform() * (hi - lo + 1));
}

void note_failure(PropertyResult& r, const std::string& what) {
    ++r.failures;
    if (r.detail.size() < 400) r.detail += (r.detail.empty() ? "" : "; ") + what;
}

}  // namespace

PropertyResult prop_verdict_invariance(std::uint64_t seed, int cases) {
    PropertyResult res{"verdict invariance", 0, 0, 0, 0.0, ""};
    const KernelBasis bases[2] = {pn_kernel_basis(1), pn_kernel_basis(2)};
    for (int c = 0; c < cases; ++c) {
        CounterRng rng(seed, Stream::Properties, kInvariance + static_cast<std::uint64_t>(c));
        const KernelBasis& basis = bases[c % 2];
        const int d = static_cast<int>(basis.size());
        const int n = basis.manifold().complex_dim();
        const int m = uniform_int(rng, d + 1, 2 * d + 2);
        std::vector<ConfigPoint> pts;
        for (int i = 0; i < m; ++i) pts.push_back(random_config_point(basis.manifold(), rng));
        ++res.cases;
        const AdmissibilityReport base = check(basis, pts);
        if (std::isfinite(base.margin) && std::abs(base.margin) < 1e-7) {
            ++res.skipped;
            continue;
        }
        const auto same = [&](const AdmissibilityReport& r, const char* what) {
            if (r.c1 != base.c1 || r.c2_status != base.c2_status || r.verdict != base.verdict)
                note_failure(res, std::string(what) + " changed the verdict in case " + std::to_string(c));
        };
        Eigen::MatrixXd a = gaussian(d, d, rng);
        while (Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues().minCoeff() < 1e-2) a = gaussian(d, d, rng);
        same(check_matrix(a * base.matrix, d, n), "basis change");

        std::vector<int> perm(static_cast<std::size_t>(m));
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = m - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(uniform_int(rng, 0, i))]);
        std::vector<ConfigPoint> permuted;
        for (int i : perm) permuted.push_back(pts[static_cast<std::size_t>(i)]);
        same(check(basis, permuted), "point permutation");

        Eigen::VectorXd scale(m);
        for (int i = 0; i < m; ++i) scale[i] = 0.1 + 10.0 * rng.uniform();
        same(check_matrix(base.matrix * scale.asDiagonal(), d, n), "column scaling");

        std::vector<ConfigPoint> rescaled;
        for (const auto& p : pts) {
            const Complex lambda(rng.normal(), rng.normal());
            rescaled.emplace_back(ProjectivePoint(Eigen::VectorXcd(lambda * p.projective(0).coords())));
        }
        const AdmissibilityReport r = check(basis, rescaled);
        res.worst = std::max(res.worst, (r.matrix - base.matrix).cwiseAbs().maxCoeff());
        same(r, "coordinate rescaling");
    }
    if (res.worst > 1e-12) note_failure(res, "rescaled coordinates moved matrix entries by " + std::to_string(res.worst));
    return res;
}

PropertyResult prop_lp_vs_grid(std::uint64_t seed, int cases) {
    PropertyResult res{"LP vs kernel grid", 0, 0, 0, 0.0, ""};
    for (int c = 0; c < cases; ++c) {
        CounterRng rng(seed, Stream::Properties, kGrid + static_cast<std::uint64_t>(c));
        const int d = uniform_int(rng, 1, 4);
        const int k = uniform_int(rng, 1, 2);
        const int m = d + k;
        Eigen::MatrixXd mat;
        if (c % 2 == 0) {
            mat = gaussian(d, m, rng);
        } else {
            // plant a kernel containing a positive vector
            Eigen::MatrixXd span(m, k);
            for (int i = 0; i < m; ++i) span(i, 0) = 0.05 + rng.uniform();
            if (k == 2)
                for (int i = 0; i < m; ++i) span(i, 1) = rng.normal();
            const Eigen::HouseholderQR<Eigen::MatrixXd> qr(span);
            const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, k);
            mat = gaussian(d, m, rng) * (Eigen::MatrixXd::Identity(m, m) - q * q.transpose());
        }
        ++res.cases;
        const oracle::GridVerdict grid = oracle::kernel_grid_c2(mat);
        if (grid.kernel_dim != k || std::abs(grid.margin) < 1e-7) {
            ++res.skipped;
            continue;
        }
        const PositiveKernel lp = positive_kernel_c2(mat);
        if (lp.positive != grid.positive)
            note_failure(res, "case " + std::to_string(c) + ": LP " + to_string(lp.status) + ", grid margin " +
                                  std::to_string(grid.margin));
    }
    return res;
}

PropertyResult prop_adjoin_monotone(std::uint64_t seed, int cases) {
    PropertyResult res{"adjoin monotonicity", 0, 0, 0, 0.0, ""};
    constexpr int kPerChain = 10;
    for (int chain = 0; res.cases < cases; ++chain) {
        const int n = chain % 2 == 0 ? 1 : 2;
        const KernelBasis basis = pn_kernel_basis(n);
        Configuration cfg{basis, example3_points(n, 0.8, 0.6), std::nullopt, "example 3", 0};
        AdmissibilityReport report = check(basis, cfg.points);
        if (!report.verdict) {
            note_failure(res, "base configuration not admissible");
            break;
        }
        for (int step = 0; step < kPerChain && res.cases < cases; ++step) {
            CounterRng rng(seed, Stream::Properties, kAdjoin + static_cast<std::uint64_t>(chain * kPerChain + step));
            const ConfigPoint p = random_config_point(basis.manifold(), rng);
            ++res.cases;
            try {
                AdjoinResult a = adjoin_point(cfg, report, p);
                const double resid = (a.report.matrix * a.constructed_witness).cwiseAbs().maxCoeff();
                res.worst = std::max(res.worst, resid);
                if (!a.report.verdict || a.config.m() != cfg.m() + 1 || a.report.c1 != report.c1 ||
                    a.constructed_witness.minCoeff() <= 0.0 || resid > 1e-9)
                    note_failure(res, "adjunction broke admissibility at chain " + std::to_string(chain));
                cfg = std::move(a.config);
                report = std::move(a.report);
            } catch (const Error& e) {
                note_failure(res, std::string("adjoin threw: ") + e.what());
            }
        }
    }
    return res;
}

PropertyResult prop_cover_d1(std::uint64_t seed, int cases) {
    PropertyResult res{"cover construction, d = 1", 0, 0, 0, 0.0, ""};
    const SymmetryGroup g = example5_group();
    const KernelBasis basis = invariant_subbasis(product_kernel_basis(g.manifold()), g);
    if (basis.size() != 1) {
        note_failure(res, "reduced basis has dimension " + std::to_string(basis.size()));
        return res;
    }
    for (int c = 0; c < cases; ++c) {
        CoverOptions o;
        o.seed = derive_seed(seed, Stream::Properties, kCover + static_cast<std::uint64_t>(c));
        o.probe_size = 200;
        ++res.cases;
        try {
            const CoverResult r = cover_construct(basis, o);
            if (!r.report.verdict || r.config.m() != 2 || r.extra_points != 0 ||
                !cover_failures(basis, r.config.points, r.net).empty())
                note_failure(res, "case " + std::to_string(c) + " gave m = " + std::to_string(r.config.m()));
        } catch (const Error& e) {
            note_failure(res, std::string("cover threw: ") + e.what());
        }
    }
    return res;
}

PropertyResult prop_biharmonic_fd(std::uint64_t seed) {
    PropertyResult res{"biharmonic finite differences", 0, 0, 0, 0.0, ""};
    std::uint64_t counter = 0;
    for (int n = 2; n <= 5; ++n)
        for (int gamma = 0; gamma <= 12; ++gamma)
            for (Side side : {Side::Inner, Side::Outer}) {
                CounterRng rng(seed, Stream::Properties, kBiharmonic + counter++);
                ModeData md{gamma, n, rng.normal(), rng.normal()};
                if (side == Side::Outer && gamma == 0) md.k = 0.0;
                const RadialSolution s = side == Side::Inner ? inner_extension_mode(md) : outer_extension_mode(md);
                const double r = oracle::fd_bilaplacian_sample(s, derive_seed(seed, Stream::Properties, kBiharmonic + counter));
                ++res.cases;
                res.worst = std::max(res.worst, r);
                if (!(r < 1e-6))
                    note_failure(res, std::string(to_string(side)) + " n=" + std::to_string(n) + " gamma=" +
                                          std::to_string(gamma) + " residual " + std::to_string(r));
            }
    return res;
}

PropertyResult prop_mean_zero(std::uint64_t seed, int rounds, int samples) {
    PropertyResult res{"Monte Carlo mean zero", 0, 0, 0, 0.0, ""};
    for (int round = 0; round < rounds; ++round)
        for (int n = 1; n <= 3; ++n) {
            const KernelBasis basis = pn_kernel_basis(n);
            const auto est = mean_zero_check(
                basis, samples, derive_seed(seed, Stream::Properties, kMean + static_cast<std::uint64_t>(round * 8 + n)));
            for (std::size_t i = 0; i < est.size(); ++i) {
                ++res.cases;
                const double z = est[i].standard_error > 0.0 ? std::abs(est[i].mean) / est[i].standard_error : INFINITY;
                res.worst = std::max(res.worst, z);
                if (!(z <= 3.0)) note_failure(res, basis[i].label + " on P^" + std::to_string(n) + " at " + std::to_string(z) + " sigma");
            }
        }
    return res;
}

std::vector<PropertyResult> all_properties(std::uint64_t seed) {
    return {prop_verdict_invariance(seed), prop_lp_vs_grid(seed), prop_adjoin_monotone(seed),
            prop_cover_d1(seed),           prop_biharmonic_fd(seed), prop_mean_zero(seed)};
}

}  // namespace blowup
