#include "blowup/admissibility.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "blowup/errors.hpp"
#include "blowup/simplex.hpp"

namespace blowup {

AdmissibilityMatrix build_matrix(const KernelBasis& basis, const std::vector<ConfigPoint>& points) {
    if (points.empty()) throw Error(ErrorCode::Precondition, "need at least one point");
    AdmissibilityMatrix out;
    out.entries.resize(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(points.size()));
    for (std::size_t l = 0; l < points.size(); ++l)
        out.entries.col(static_cast<Eigen::Index>(l)) = evaluate(basis, points[l]);
    out.row_labels = basis.labels();
    return out;
}

int rank_c1(const Eigen::MatrixXd& m, double tol) {
    if (m.size() == 0) return 0;
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    return static_cast<int>((sv.array() > tol * sv(0)).count());
}

const char* to_string(C2Status s) {
    switch (s) {
        case C2Status::Positive: return "positive";
        case C2Status::Marginal: return "marginal";
        case C2Status::Absent: return "absent";
        case C2Status::Infeasible: return "infeasible";
    }
    return "unknown";
}

PositiveKernel positive_kernel_c2(const Eigen::MatrixXd& m, double tol_pos) {
    const Eigen::Index d = m.rows();
    const Eigen::Index cols = m.cols();
    if (cols == 0) throw Error(ErrorCode::Precondition, "matrix has no columns");
    // a = b + (tp - tm) 1 with b, tp, tm >= 0; t = tp - tm.
    const Eigen::Index nv = cols + 2;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d + 1, nv);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d + 1);
    const Eigen::VectorXd row_sums = m.rowwise().sum();
    a.topLeftCorner(d, cols) = m;
    a.col(cols).head(d) = row_sums;
    a.col(cols + 1).head(d) = -row_sums;
    a.row(d).head(cols).setOnes();
    a(d, cols) = static_cast<double>(cols);
    a(d, cols + 1) = -static_cast<double>(cols);
    rhs(d) = 1.0;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(nv);
    c(cols) = 1.0;
    c(cols + 1) = -1.0;

    const LpResult lp = solve_standard_form(a, rhs, c);
    PositiveKernel out;
    out.iterations = lp.iterations;
    switch (lp.status) {
        case LpStatus::IterationLimit:
            throw Error(ErrorCode::LpFailure, "simplex iteration guard exceeded after " +
                                                  std::to_string(lp.iterations) + " pivots on a " +
                                                  std::to_string(d) + "x" + std::to_string(cols) + " matrix");
        case LpStatus::Unbounded:
            // t <= 1/m on the feasible set, so this is a numerical breakdown
            throw Error(ErrorCode::LpFailure, "simplex reported an unbounded margin");
        case LpStatus::Infeasible:
            out.status = C2Status::Infeasible;
            out.margin = -std::numeric_limits<double>::infinity();
            return out;
        case LpStatus::Optimal: break;
    }
    const double t = lp.x(cols) - lp.x(cols + 1);
    Eigen::VectorXd w = lp.x.head(cols).array() + t;
    out.margin = w.minCoeff();
    out.witness = w;
    if (out.margin > tol_pos)
        out.status = C2Status::Positive;
    else if (out.margin >= -tol_pos)
        out.status = C2Status::Marginal;
    else
        out.status = C2Status::Absent;
    out.positive = out.status == C2Status::Positive;
    return out;
}

double cn_constant(int n) {
    if (n < 2) throw Error(ErrorCode::InvalidDimension, "c_n needs n >= 2, got " + std::to_string(n));
    // |S^{2n-1}| = 2 pi^n / (n-1)!
    double factorial = 1.0;
    for (int k = 2; k <= n - 1; ++k) factorial *= k;
    const double sphere = 2.0 * std::pow(std::numbers::pi, n) / factorial;
    if (n == 2) return 2.0 * sphere;
    return 4.0 * (n - 2) * (n - 1) * sphere;
}

Coefficients coefficients(const Eigen::VectorXd& a, int n) {
    if (a.size() == 0 || (a.array() <= 0.0).any())
        throw Error(ErrorCode::Precondition, "coefficients need a strictly positive vector");
    const double cn = cn_constant(n);
    return {cn * a.sum(), cn};
}

AdmissibilityReport check_matrix(const Eigen::MatrixXd& m, int d, int complex_dim, const CheckOptions& options,
                                 std::vector<std::string> row_labels) {
    AdmissibilityReport r;
    r.matrix = m;
    r.row_labels = std::move(row_labels);
    r.d = d;
    r.m = static_cast<int>(m.cols());
    r.c1 = rank_c1(m, options.rank_tol);
    r.kernel_dim = r.m - r.c1;
    const PositiveKernel pk = positive_kernel_c2(m, options.tol_pos);
    r.c2_status = pk.status;
    r.c2_positive = pk.positive;
    r.witness = pk.witness;
    r.margin = pk.margin;
    if (pk.witness) {
        r.residual = m.rows() ? (m * *pk.witness).cwiseAbs().maxCoeff() : 0.0;
        if (pk.positive) {
            const double norm = m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
            if (r.residual > 1e-9 * (1.0 + norm))
                throw Error(ErrorCode::Inconsistency, "positive witness fails the kernel residual check: " +
                                                          std::to_string(r.residual));
        }
    }
    if (complex_dim >= 2 && pk.positive) {
        const Coefficients c = coefficients(*pk.witness, complex_dim);
        r.a0 = c.a0;
        r.cn = c.cn;
    }
    r.verdict = r.c1 == d && r.c2_positive;
    return r;
}

AdmissibilityReport check(const KernelBasis& basis, const std::vector<ConfigPoint>& points,
                          const CheckOptions& options) {
    const AdmissibilityMatrix mat = build_matrix(basis, points);
    return check_matrix(mat.entries, static_cast<int>(basis.size()), basis.manifold().complex_dim(), options,
                        mat.row_labels);
}

EquivariantReport equivariant_check(const KernelBasis& basis, const SymmetryGroup& group,
                                    const std::vector<ConfigPoint>& representatives, const CheckOptions& options) {
    if (representatives.empty()) throw Error(ErrorCode::Precondition, "need at least one orbit representative");
    KernelBasis inv = invariant_subbasis(basis, group);

    std::vector<std::vector<ConfigPoint>> orbits;
    for (const auto& rep : representatives) {
        rep.check_compatible(basis.manifold());
        for (std::size_t k = 0; k < orbits.size(); ++k)
            for (const auto& q : orbits[k])
                if (q.chordal_distance(rep) < 1e-10)
                    throw Error(ErrorCode::OverlappingOrbits, "representative " + std::to_string(orbits.size()) +
                                                                  " lies in the orbit of representative " +
                                                                  std::to_string(k));
        orbits.push_back(group.orbit(rep));
    }

    Eigen::MatrixXd reduced(static_cast<Eigen::Index>(inv.size()), static_cast<Eigen::Index>(orbits.size()));
    std::vector<std::size_t> sizes;
    std::vector<ConfigPoint> expanded;
    for (std::size_t k = 0; k < orbits.size(); ++k) {
        sizes.push_back(orbits[k].size());
        // the orbit sum of any kernel function equals |O| times its group average at the representative
        const Eigen::VectorXd values = inv.size() ? evaluate(inv, representatives[k]) : Eigen::VectorXd();
        reduced.col(static_cast<Eigen::Index>(k)) = static_cast<double>(orbits[k].size()) * values;
        expanded.insert(expanded.end(), orbits[k].begin(), orbits[k].end());
    }

    EquivariantReport out{inv, {}, {}, sizes, expanded, false};
    out.reduced = check_matrix(reduced, static_cast<int>(inv.size()), basis.manifold().complex_dim(), options,
                               inv.labels());
    out.full = check(basis, expanded, options);
    out.consistent = out.reduced.c2_positive == out.full.c2_positive;
    return out;
}

}  // namespace blowup
