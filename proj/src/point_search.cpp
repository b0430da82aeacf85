#include "blowup/point_search.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include "blowup/errors.hpp"

namespace blowup {

namespace {

constexpr double kDistinctTol = 1e-8;

// Fisher-Yates with our own generator; std::shuffle's draw pattern is not
// specified, which would make runs differ across standard libraries.
template <class T>
void shuffle_in_place(std::vector<T>& v, CounterRng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng() % i);
        std::swap(v[i - 1], v[j]);
    }
}

void enumerate_l1_sphere(int d, int k, std::vector<int>& prefix, std::vector<Eigen::VectorXd>& out) {
    const int used = static_cast<int>(prefix.size());
    int rest = k;
    for (int v : prefix) rest -= std::abs(v);
    if (used == d - 1) {
        for (int sign : {1, -1}) {
            if (rest == 0 && sign < 0) break;
            Eigen::VectorXd v(d);
            for (int i = 0; i < used; ++i) v[i] = prefix[static_cast<std::size_t>(i)];
            v[d - 1] = sign * rest;
            out.push_back(v);
        }
        return;
    }
    for (int v = -rest; v <= rest; ++v) {
        prefix.push_back(v);
        enumerate_l1_sphere(d, k, prefix, out);
        prefix.pop_back();
    }
}

Eigen::MatrixXd random_rotation(int d, CounterRng& rng) {
    Eigen::MatrixXd g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i)
        if (r(i, i) < 0) q.col(i) *= -1.0;
    return q;
}

// Unit directions from the integer points of the L1 sphere of radius k. Any
// unit vector is within chordal distance 2d/k of one of them.
std::vector<Eigen::VectorXd> direction_net(int d, int k, const Eigen::MatrixXd& rotation) {
    std::vector<Eigen::VectorXd> raw;
    std::vector<int> prefix;
    enumerate_l1_sphere(d, k, prefix, raw);
    for (auto& v : raw) v = rotation * (v / v.norm());
    return raw;
}

std::size_t l1_sphere_size(int d, int k) {
    // number of integer points with sum |v_i| = k: sum_j 2^j C(d,j) C(k-1,j-1)
    double total = 0.0;
    double cd = 1.0;  // C(d, j)
    for (int j = 1; j <= std::min(d, k); ++j) {
        cd = cd * (d - j + 1) / j;
        double ck = 1.0;  // C(k-1, j-1)
        for (int i = 1; i <= j - 1; ++i) ck = ck * (k - i) / i;
        total += std::pow(2.0, j) * cd * ck;
    }
    return total > 1e15 ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(total);
}

}  // namespace

double min_pairwise_distance(const std::vector<ConfigPoint>& points) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) best = std::min(best, points[i].chordal_distance(points[j]));
    return best;
}

Configuration random_rank_search(const KernelBasis& basis, int m, std::uint64_t seed, int max_tries,
                                 double rank_tol) {
    const int d = static_cast<int>(basis.size());
    if (m < d)
        throw Error(ErrorCode::Precondition, "random_rank_search needs m >= d (m = " + std::to_string(m) +
                                                 ", d = " + std::to_string(d) + ")");
    for (int t = 0; t < max_tries; ++t) {
        std::vector<ConfigPoint> pts;
        for (int i = 0; i < m; ++i) {
            CounterRng rng(seed, Stream::RankSearch, (static_cast<std::uint64_t>(t) << 20) + static_cast<std::uint64_t>(i));
            pts.push_back(random_config_point(basis.manifold(), rng));
        }
        if (min_pairwise_distance(pts) <= kDistinctTol) continue;
        if (rank_c1(build_matrix(basis, pts).entries, rank_tol) == d)
            return Configuration{basis, std::move(pts), std::nullopt, "random_rank_search", t + 1};
    }
    throw Error(ErrorCode::SearchFailure, "no full-rank configuration in " + std::to_string(max_tries) + " tries");
}

std::vector<std::size_t> cover_failures(const KernelBasis& basis, const std::vector<ConfigPoint>& points,
                                        const std::vector<Eigen::VectorXd>& net) {
    const Eigen::MatrixXd values = build_matrix(basis, points).entries;  // d x m
    std::vector<std::size_t> failed;
    for (std::size_t i = 0; i < net.size(); ++i) {
        const Eigen::VectorXd f = values.transpose() * net[i];
        if (!(f.minCoeff() < 0.0 && f.maxCoeff() > 0.0)) failed.push_back(i);
    }
    return failed;
}

CoverResult cover_construct(const KernelBasis& basis, const CoverOptions& options) {
    const int d = static_cast<int>(basis.size());
    if (d < 1) throw Error(ErrorCode::EmptyKernel, "cover_construct needs d >= 1");
    if (!(options.net_angle > 0.0)) throw Error(ErrorCode::OutOfDomain, "net_angle must be positive");
    if (options.probe_size < 2) throw Error(ErrorCode::OutOfDomain, "probe_size must be at least 2");

    std::vector<ConfigPoint> probe;
    Eigen::MatrixXd x(options.probe_size, d);
    Eigen::VectorXd norms(options.probe_size);
    for (int i = 0; i < options.probe_size; ++i) {
        CounterRng rng(options.seed, Stream::Cover, static_cast<std::uint64_t>(i));
        probe.push_back(random_config_point(basis.manifold(), rng));
        x.row(i) = evaluate(basis, probe.back()).transpose();
        norms[i] = x.row(i).norm();
    }
    CounterRng rot_rng(options.seed, Stream::NetRotation, 0);
    const Eigen::MatrixXd rotation = d > 1 ? random_rotation(d, rot_rng) : Eigen::MatrixXd::Identity(1, 1);

    int k = std::max(1, static_cast<int>(std::ceil(2.0 * d / options.net_angle)));
    std::vector<int> chosen;
    std::vector<Eigen::VectorXd> net;
    std::vector<std::size_t> uncovered;
    double theta = 0.0;
    int refinement = 0;
    for (;; ++refinement) {
        if (l1_sphere_size(d, k) > options.max_net_size) break;
        net = direction_net(d, k, rotation);
        theta = d == 1 ? 0.0 : 2.0 * d / k;
        chosen.clear();
        uncovered.clear();
        for (std::size_t li = 0; li < net.size(); ++li) {
            const Eigen::VectorXd f = x * net[li];
            bool ok = true;
            for (double side : {-1.0, 1.0}) {
                // side = -1 looks for f < -tau, robust on the cap: f + theta |xi| < 0
                const Eigen::VectorXd g = side * f;
                const double tau = 0.5 * std::max(0.0, -g.minCoeff());
                const auto good = [&](int i) { return g[i] < -tau && g[i] + theta * norms[i] < 0.0; };
                if (std::any_of(chosen.begin(), chosen.end(), good)) continue;
                Eigen::Index best = 0;
                (g + theta * norms).minCoeff(&best);
                if (good(static_cast<int>(best)))
                    chosen.push_back(static_cast<int>(best));
                else
                    ok = false;
            }
            if (!ok) uncovered.push_back(li);
        }
        if (uncovered.empty() || refinement >= options.max_refinements || d == 1) break;
        k *= 2;
    }
    if (!uncovered.empty() || net.empty()) {
        std::ostringstream msg;
        if (net.empty()) {
            msg << "direction net exceeds " << options.max_net_size << " directions before any cover was attempted";
        } else {
            msg << uncovered.size() << " of " << net.size() << " directions uncovered at radius " << theta
                << " after " << refinement << " refinements; first:";
            for (std::size_t i = 0; i < std::min<std::size_t>(uncovered.size(), 5); ++i) {
                msg << " [";
                const auto& v = net[uncovered[i]];
                for (Eigen::Index j = 0; j < v.size(); ++j) msg << (j ? "," : "") << v[j];
                msg << "]";
            }
        }
        throw Error(ErrorCode::PartialCover, msg.str());
    }

    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
    CoverResult out{Configuration{basis, {}, std::nullopt, "cover_construct", refinement + 1}, {}, net, theta,
                    refinement, static_cast<int>(chosen.size()), 0};
    for (int i : chosen) out.config.points.push_back(probe[static_cast<std::size_t>(i)]);
    out.report = check(basis, out.config.points);
    std::uint64_t counter = 1ULL << 32;
    while (!out.report.verdict && out.extra_points < options.max_extra_points) {
        CounterRng rng(options.seed, Stream::Cover, counter++);
        out.config.points.push_back(random_config_point(basis.manifold(), rng));
        ++out.extra_points;
        out.report = check(basis, out.config.points);
    }
    if (!out.report.verdict)
        throw Error(ErrorCode::SearchFailure, "cover points failed the admissibility check even after " +
                                                  std::to_string(out.extra_points) + " extra points");
    return out;
}

AdjoinResult adjoin_point(const Configuration& cfg, const AdmissibilityReport& report, const ConfigPoint& p,
                          const CheckOptions& options) {
    const int d = static_cast<int>(cfg.basis.size());
    if (!report.verdict || !report.witness)
        throw Error(ErrorCode::Precondition, "adjoin_point needs an admissible configuration");
    p.check_compatible(cfg.manifold());
    for (std::size_t i = 0; i < cfg.points.size(); ++i)
        if (cfg.points[i].chordal_distance(p) <= kDistinctTol)
            throw Error(ErrorCode::Precondition, "adjoined point duplicates point " + std::to_string(i));

    const Eigen::MatrixXd& m = report.matrix;
    const Eigen::VectorXd& a = *report.witness;
    const Eigen::VectorXd c = evaluate(cfg.basis, p);
    // minimum-norm solution of M x = c; exists because rank M = d
    const Eigen::VectorXd xs = d ? Eigen::VectorXd(m.completeOrthogonalDecomposition().solve(c))
                                 : Eigen::VectorXd(Eigen::VectorXd::Zero(m.cols()));
    double t = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < xs.size(); ++i)
        if (xs[i] > 0.0) t = std::min(t, a[i] / xs[i]);
    t = std::isfinite(t) ? 0.5 * t : a.minCoeff();

    AdjoinResult out{cfg, {}, Eigen::VectorXd(), t, false};
    out.config.points.push_back(p);
    out.config.provenance = cfg.provenance + "+adjoin";
    Eigen::VectorXd b(a.size() + 1);
    b.head(a.size()) = a - t * xs;
    b[a.size()] = t;
    out.constructed_witness = b / b.sum();
    out.used_fallback = !(t >= report.margin / 4.0) || out.constructed_witness.minCoeff() <= 0.0;

    out.report = check(out.config.basis, out.config.points, options);
    if (!out.report.verdict) {
        std::cerr << "blowup: adjoin_point produced a non-admissible configuration (c1 = " << out.report.c1
                  << ", t* = " << out.report.margin << ")\n";
        throw Error(ErrorCode::Inconsistency, "adjunction broke admissibility: c1 = " + std::to_string(out.report.c1) +
                                                  ", t* = " + std::to_string(out.report.margin));
    }
    return out;
}

M0Result m0_estimate(const KernelBasis& basis, const M0Options& options) {
    const int d = static_cast<int>(basis.size());
    if (options.trials < 0 || (options.trials == 0 && options.seeds.empty() && !options.use_cover))
        throw Error(ErrorCode::Precondition, "m0_estimate needs random trials, seeds or the cover construction");
    if (d < 1) throw Error(ErrorCode::EmptyKernel, "m0_estimate needs d >= 1");

    struct Candidate {
        std::vector<ConfigPoint> points;
        std::string provenance;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < options.seeds.size(); ++i)
        candidates.push_back({options.seeds[i], "seed " + std::to_string(i)});
    M0Result out{0, Configuration{basis, {}, std::nullopt, "", 0}, {}, {}};
    if (options.use_cover && d <= 3) {
        try {
            CoverOptions co;
            co.seed = options.seed;
            candidates.push_back({cover_construct(basis, co).config.points, "cover_construct"});
        } catch (const Error& e) {
            out.log.push_back(std::string("cover_construct skipped: ") + e.what());
        }
    }
    for (int t = 0; t < options.trials; ++t) {
        for (int mult = 2; mult <= 4; ++mult) {
            std::vector<ConfigPoint> pts;
            for (int i = 0; i < mult * d; ++i) {
                CounterRng rng(options.seed, Stream::M0,
                               (static_cast<std::uint64_t>(t) << 24) + (static_cast<std::uint64_t>(mult) << 20) +
                                   static_cast<std::uint64_t>(i));
                pts.push_back(random_config_point(basis.manifold(), rng));
            }
            if (check(basis, pts).verdict) {
                candidates.push_back({std::move(pts), "random trial " + std::to_string(t)});
                break;
            }
        }
    }

    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
        auto pts = candidates[ci].points;
        AdmissibilityReport rep = check(basis, pts);
        if (!rep.verdict) {
            out.log.push_back(candidates[ci].provenance + ": not admissible, skipped");
            continue;
        }
        CounterRng rng(options.seed, Stream::M0, (1ULL << 40) + ci);
        bool removed = true;
        while (removed && static_cast<int>(pts.size()) > d + 1) {
            removed = false;
            std::vector<std::size_t> order(pts.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            shuffle_in_place(order, rng);
            for (std::size_t idx : order) {
                auto trial = pts;
                trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(idx));
                AdmissibilityReport r = check(basis, trial);
                if (r.verdict) {
                    pts = std::move(trial);
                    rep = std::move(r);
                    removed = true;
                    break;
                }
            }
        }
        out.log.push_back(candidates[ci].provenance + ": " + std::to_string(candidates[ci].points.size()) + " -> " +
                          std::to_string(pts.size()));
        if (out.m == 0 || static_cast<int>(pts.size()) < out.m) {
            out.m = static_cast<int>(pts.size());
            out.config = Configuration{basis, pts, std::nullopt, "m0_estimate/" + candidates[ci].provenance, 0};
            out.report = rep;
        }
    }
    if (out.m == 0) throw Error(ErrorCode::SearchFailure, "no admissible configuration found within the budget");
    if (out.m <= d)
        throw Error(ErrorCode::Inconsistency, "admissible configuration with m <= d reported; this is impossible");
    return out;
}

}  // namespace blowup
