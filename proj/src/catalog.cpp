#include "blowup/catalog.hpp"

#include <cmath>
#include <functional>

#include "blowup/errors.hpp"

namespace blowup {

namespace {

constexpr Complex kI(0.0, 1.0);

ProjectivePoint basis_vector(int n, int k) {
    Eigen::VectorXcd z = Eigen::VectorXcd::Zero(n + 1);
    z[k] = 1.0;
    return ProjectivePoint(z);
}

ProjectivePoint two_entry(int n, int i, Complex a, int j, Complex b) {
    Eigen::VectorXcd z = Eigen::VectorXcd::Zero(n + 1);
    z[i] = a;
    z[j] = b;
    return ProjectivePoint(z);
}

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::OutOfDomain, what);
}

Eigen::VectorXd normalized(const Eigen::VectorXd& v) { return v / v.sum(); }

double bisect(const std::function<bool(double)>& admissible, double lo, double hi, double tol) {
    // admissible(lo) == false, admissible(hi) == true
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (admissible(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

const char* to_string(MatrixMatch m) {
    switch (m) {
        case MatrixMatch::Exact: return "exact";
        case MatrixMatch::UpToSigns: return "up_to_signs";
        case MatrixMatch::Mismatch: return "mismatch";
        case MatrixMatch::NotDisplayed: return "not_displayed";
    }
    return "unknown";
}

CatalogParams default_params(int id) {
    switch (id) {
        case 1: return {3, 0.0, 0.0};
        case 2: return {3, 0.6, 0.8};
        case 3: return {2, 0.8, 0.6};
        case 4: return {2, 1.0, 0.0};
        case 5: return {1, 0.0, 0.0};
        case 6: return {0, 0.0, 0.0};
        default: throw Error(ErrorCode::UnknownExample, "no example with id " + std::to_string(id));
    }
}

MatrixMatch compare_matrices(const Eigen::MatrixXd& computed, const Eigen::MatrixXd& displayed,
                             std::vector<std::pair<int, int>>* differing, double tol) {
    if (differing) differing->clear();
    if (computed.rows() != displayed.rows() || computed.cols() != displayed.cols()) return MatrixMatch::Mismatch;
    if ((computed - displayed).cwiseAbs().maxCoeff() < tol) return MatrixMatch::Exact;
    // rows may be permuted and sign-flipped (the difference-of-moduli functions
    // appear with both sign conventions)
    std::vector<bool> used(static_cast<std::size_t>(displayed.rows()), false);
    bool all = true;
    for (Eigen::Index r = 0; r < computed.rows() && all; ++r) {
        bool found = false;
        for (Eigen::Index s = 0; s < displayed.rows() && !found; ++s) {
            if (used[static_cast<std::size_t>(s)]) continue;
            for (double sign : {1.0, -1.0})
                if ((computed.row(r) - sign * displayed.row(s)).cwiseAbs().maxCoeff() < tol) {
                    used[static_cast<std::size_t>(s)] = true;
                    found = true;
                    break;
                }
        }
        all = found;
    }
    if (all) return MatrixMatch::UpToSigns;
    if (differing)
        for (Eigen::Index r = 0; r < computed.rows(); ++r)
            for (Eigen::Index c = 0; c < computed.cols(); ++c)
                if (std::abs(computed(r, c) - displayed(r, c)) >= tol)
                    differing->emplace_back(static_cast<int>(r), static_cast<int>(c));
    return MatrixMatch::Mismatch;
}

std::vector<ConfigPoint> example1_points(int n) {
    require(n >= 1, "example 1 needs n >= 1");
    std::vector<ConfigPoint> pts;
    for (int k = 0; k <= n; ++k) pts.emplace_back(basis_vector(n, k));
    return pts;
}

std::vector<ConfigPoint> example2_points(int n, double alpha, double beta) {
    require(n >= 2, "example 2 needs n >= 2");
    require(std::abs(alpha * alpha + beta * beta - 1.0) < 1e-9, "example 2 needs alpha^2 + beta^2 = 1");
    require(alpha != 0.0 && beta != 0.0, "example 2 needs alpha, beta nonzero");
    std::vector<ConfigPoint> pts;
    for (int k = 0; k < n; ++k) pts.emplace_back(basis_vector(n, k));
    pts.emplace_back(two_entry(n, n - 1, -alpha, n, beta));
    pts.emplace_back(two_entry(n, n - 1, alpha, n, beta));
    return pts;
}

std::vector<ConfigPoint> example3_points(int n, double alpha, double beta) {
    require(n >= 1, "example 3 needs n >= 1");
    require(std::abs(alpha * alpha + beta * beta - 1.0) < 1e-9, "example 3 needs alpha^2 + beta^2 = 1");
    require(alpha != 0.0 && beta != 0.0, "example 3 needs alpha, beta nonzero");
    require(std::abs(alpha * alpha - beta * beta) > 1e-12, "example 3 needs alpha^2 != beta^2");
    const std::vector<std::pair<Complex, Complex>> kinds = {
        {alpha, beta}, {alpha, -beta}, {beta, kI * alpha}, {beta, -kI * alpha}};
    std::vector<ConfigPoint> pts;
    for (const auto& [a, b] : kinds)
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) pts.emplace_back(two_entry(n, i, a, j, b));
    return pts;
}

std::vector<ConfigPoint> example5_points() {
    const RigidPoint q{"q"};
    return {ConfigPoint({ProjectivePoint{kI, 1.0}, q}), ConfigPoint({ProjectivePoint{1.0, kI}, q})};
}

std::vector<ConfigPoint> example6_points() {
    const auto pt = [](ProjectivePoint a, ProjectivePoint b) { return ConfigPoint({std::move(a), std::move(b)}); };
    return {pt({1.0, 0.0}, {0.0, 1.0, 0.0}), pt({0.0, 1.0}, {1.0, 0.0, 0.0}), pt({1.0, 0.0}, {0.0, 0.0, 1.0}),
            pt({1.0, 2.0}, {1.0, 1.0, 1.0})};
}

KernelFunction permutation_invariant_function(int n) {
    require(n >= 1, "needs n >= 1");
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Ones(n + 1, n + 1);
    h.diagonal().setZero();
    return {0, h, "sum_xi_ab"};
}

namespace {

std::vector<ConfigPoint> example4_points(int n, double alpha) {
    require(n >= 1, "example 4 needs n >= 1");
    require(alpha > 0.0, "example 4 needs alpha > 0");
    Eigen::VectorXcd p1 = Eigen::VectorXcd::Ones(n + 1);
    Eigen::VectorXcd p2 = Eigen::VectorXcd::Ones(n + 1);
    p2[n] = -alpha;
    return {ConfigPoint(ProjectivePoint(p1)), ConfigPoint(ProjectivePoint(p2))};
}

KernelBasis example4_basis(int n) { return KernelBasis(ModelManifold::projective_space(n), {permutation_invariant_function(n)}); }

}  // namespace

Eigen::MatrixXd example4_matrix(int n, double alpha) {
    return build_matrix(example4_basis(n), example4_points(n, alpha)).entries;
}

SymmetryGroup example5_group() {
    const ModelManifold m({Factor::projective(1), Factor::rigid()});
    // (z1, z2) -> (z2, -z1)
    GroupElement g{{SignedPermutation{{1, 0}, {Complex(1.0), Complex(-1.0)}}}};
    return SymmetryGroup::generated_by(m, {g});
}

double example2_margin(int n, double beta) {
    const double alpha = std::sqrt(1.0 - beta * beta);
    const ModelManifold m = ModelManifold::projective_space(n);
    const KernelBasis inv = invariant_subbasis(pn_kernel_basis(n), SymmetryGroup::sign_flips(m));
    return positive_kernel_c2(build_matrix(inv, example2_points(n, alpha, beta)).entries).margin;
}

double example4_margin(int n, double alpha) { return positive_kernel_c2(example4_matrix(n, alpha)).margin; }

double example2_boundary(int n, double tol) {
    const ModelManifold m = ModelManifold::projective_space(n);
    const KernelBasis inv = invariant_subbasis(pn_kernel_basis(n), SymmetryGroup::sign_flips(m));
    return bisect(
        [&](double beta) {
            const double alpha = std::sqrt(1.0 - beta * beta);
            return positive_kernel_c2(build_matrix(inv, example2_points(n, alpha, beta)).entries).positive;
        },
        0.5, 0.9, tol);
}

double example4_threshold(int n, double tol) {
    return bisect([&](double alpha) { return positive_kernel_c2(example4_matrix(n, alpha)).positive; }, 1e-3,
                  static_cast<double>(n) + 1.0, tol);
}

CatalogEntry example_catalog(int id, CatalogParams params) {
    const CatalogParams defaults = default_params(id);
    if (params.n == 0) params.n = defaults.n;
    if (params.alpha == 0.0) params.alpha = defaults.alpha;
    if (params.beta == 0.0) params.beta = defaults.beta;
    const int n = params.n;

    CatalogEntry e;
    e.id = id;
    e.params = params;
    std::vector<ConfigPoint> points;
    std::optional<KernelBasis> basis;
    std::optional<SymmetryGroup> group;

    switch (id) {
        case 1: {
            require(n >= 1, "example 1 needs n >= 1");
            const ModelManifold m = ModelManifold::projective_space(n);
            group = SymmetryGroup::sign_flips(m);
            basis = invariant_subbasis(pn_kernel_basis(n), *group);
            points = example1_points(n);
            e.title = "P^n, sign-flip symmetric, coordinate points";
            e.claim = "bidiagonal matrix of rank n; kernel spanned by (1,...,1)";
            Eigen::MatrixXd disp = Eigen::MatrixXd::Zero(n, n + 1);
            for (int i = 0; i < n; ++i) {
                disp(i, i) = 1.0;
                disp(i, i + 1) = -1.0;
            }
            e.displayed_matrix = disp;
            e.expected_witness = Eigen::VectorXd::Ones(n + 1);
            e.expected_rank = n;
            e.claimed_verdict = true;
            break;
        }
        case 2: {
            const double a = params.alpha, b = params.beta;
            points = example2_points(n, a, b);
            const ModelManifold m = ModelManifold::projective_space(n);
            group = SymmetryGroup::sign_flips(m);
            basis = invariant_subbasis(pn_kernel_basis(n), *group);
            e.title = "P^n, sign-flip symmetric, n coordinate points plus (.., -alpha, beta), (.., alpha, beta)";
            e.claim = "rank n, two-dimensional kernel with a positive vector for 0 < beta < 1/sqrt(2)";
            Eigen::MatrixXd disp = Eigen::MatrixXd::Zero(n, n + 2);
            for (int i = 0; i < n; ++i) {
                disp(i, i) = 1.0;
                if (i + 1 < n) disp(i, i + 1) = -1.0;
            }
            disp(n - 2, n) = disp(n - 2, n + 1) = -a * a;
            disp(n - 1, n) = disp(n - 1, n + 1) = a * a - b * b;
            e.displayed_matrix = disp;
            Eigen::VectorXd shown = Eigen::VectorXd::Ones(n + 2);
            shown[n - 1] = 1.0 / (4.0 * b * b);
            shown[n] = shown[n + 1] = 1.0 - 1.0 / (2.0 * b * b);
            e.displayed_witness = shown;
            e.expected_rank = n;
            e.claimed_verdict = b > 0.0 && b < 1.0 / std::sqrt(2.0);
            e.notes.push_back("hand-derived kernel: x_1..x_{n-1} = beta^2 s, x_n = (beta^2 - alpha^2) s, "
                              "y_1 + y_2 = s; strictly positive exactly for 1/sqrt(2) < beta < 1");
            break;
        }
        case 3: {
            points = example3_points(n, params.alpha, params.beta);
            basis = pn_kernel_basis(n);
            e.title = "P^n, full kernel, 2n(n+1) two-entry points";
            e.claim = "C1 = d and (1,...,1) lies in the kernel, so m0 <= 2n(n+1)";
            e.expected_witness = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(points.size()));
            e.expected_rank = n * n + 2 * n;
            e.claimed_verdict = true;
            break;
        }
        case 4: {
            points = example4_points(n, params.alpha);
            basis = example4_basis(n);
            e.title = "P^n, permutation symmetric, p1 = (1,...,1), p2 = (1,...,1,-alpha)";
            e.claim = "matrix (n, n(n-1-2 alpha)/(n+alpha^2)); conditions hold for alpha > (n-1)/2";
            Eigen::MatrixXd disp(1, 2);
            disp << n, n * (n - 1 - 2.0 * params.alpha) / (n + params.alpha * params.alpha);
            e.displayed_matrix = disp;
            e.expected_rank = 1;
            e.claimed_verdict = params.alpha > (n - 1) / 2.0;
            const ModelManifold m = ModelManifold::projective_space(n);
            e.equivariant = equivariant_check(pn_kernel_basis(n), SymmetryGroup::coordinate_permutations(m), points);
            break;
        }
        case 5: {
            group = example5_group();
            basis = invariant_subbasis(product_kernel_basis(group->manifold()), *group);
            points = example5_points();
            e.title = "P^1 x rigid factor, group generated by (z1, z2) -> (z2, -z1)";
            e.claim = "invariant kernel spanned by xihat_12; matrix (-1 1); both conditions hold";
            Eigen::MatrixXd disp(1, 2);
            disp << -1.0, 1.0;
            e.displayed_matrix = disp;
            e.expected_witness = Eigen::VectorXd::Ones(2);
            e.expected_rank = 1;
            e.claimed_verdict = true;
            e.equivariant = equivariant_check(product_kernel_basis(group->manifold()), *group, points);
            break;
        }
        case 6: {
            const ModelManifold m({Factor::projective(1), Factor::projective(2)});
            group = SymmetryGroup::sign_flips(m);
            basis = invariant_subbasis(product_kernel_basis(m), *group);
            points = example6_points();
            e.title = "P^1 x P^2, sign flips on both factors";
            e.claim = "rank 3 with a positive kernel vector";
            Eigen::MatrixXd disp(3, 4);
            disp << -1, 1, 1, -3.0 / 5.0, -1, 1, 0, 0, 1, 0, -1, 0;
            e.displayed_matrix = disp;
            // hand solution of the computed system: x1 = x2 = x3, x4 = 5 x1 / 3
            Eigen::VectorXd w(4);
            w << 1, 1, 1, 5.0 / 3.0;
            e.expected_witness = w;
            e.expected_rank = 3;
            e.claimed_verdict = true;
            break;
        }
        default: throw Error(ErrorCode::UnknownExample, "no example with id " + std::to_string(id));
    }

    e.config = Configuration{*basis, points, group, "example " + std::to_string(id), 0};
    e.report = check(*basis, points);
    auto& diff = e.diff;
    if (e.displayed_matrix) diff.matrix_match = compare_matrices(e.report.matrix, *e.displayed_matrix, &diff.differing_entries);
    diff.rank_match = e.report.c1 == e.expected_rank;
    diff.verdict_match = e.report.verdict == e.claimed_verdict;
    if (e.expected_witness && e.report.witness)
        diff.witness_error = (normalized(*e.report.witness) - normalized(*e.expected_witness)).cwiseAbs().maxCoeff();
    if (e.displayed_witness) diff.displayed_witness_residual = (e.report.matrix * *e.displayed_witness).cwiseAbs().maxCoeff();
    if (id == 6 && diff.matrix_match == MatrixMatch::Mismatch && e.displayed_matrix) {
        const Eigen::VectorXd w = *e.expected_witness;
        e.notes.push_back("displayed matrix differs from direct evaluation in " +
                          std::to_string(diff.differing_entries.size()) +
                          " entries; displayed-matrix residual on the same kernel vector: " +
                          std::to_string((*e.displayed_matrix * w).cwiseAbs().maxCoeff()));
    }
    return e;
}

}  // namespace blowup
