#include "blowup/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "blowup/errors.hpp"

namespace blowup {

const char* to_string(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::IterationLimit: return "iteration-limit";
    }
    return "unknown";
}

namespace {

class Tableau {
public:
    // rows: constraint rows; last column holds the right-hand side.
    Eigen::MatrixXd t;
    std::vector<int> basis;  // basic variable per row
    const SimplexOptions& opt;
    int iterations = 0;

    Tableau(Eigen::MatrixXd tableau, std::vector<int> initial_basis, const SimplexOptions& o)
        : t(std::move(tableau)), basis(std::move(initial_basis)), opt(o) {}

    Eigen::Index rows() const { return t.rows(); }
    Eigen::Index rhs_col() const { return t.cols() - 1; }

    void pivot(Eigen::Index r, Eigen::Index col) {
        t.row(r) /= t(r, col);
        for (Eigen::Index i = 0; i < rows(); ++i)
            if (i != r && t(i, col) != 0.0) t.row(i) -= t(i, col) * t.row(r);
        t(r, col) = 1.0;
        basis[static_cast<std::size_t>(r)] = static_cast<int>(col);
        ++iterations;
    }

    // Maximizes cost . x over columns < `active_cols`. Returns the final status.
    LpStatus optimize(const Eigen::VectorXd& cost, Eigen::Index active_cols) {
        while (true) {
            if (iterations >= opt.max_iterations) return LpStatus::IterationLimit;
            // reduced cost r_j = c_j - c_B . column_j; Bland: first improving j
            Eigen::Index entering = -1;
            for (Eigen::Index j = 0; j < active_cols; ++j) {
                double r = cost[j];
                for (Eigen::Index i = 0; i < rows(); ++i) r -= cost[basis[static_cast<std::size_t>(i)]] * t(i, j);
                if (r > opt.cost_tol) {
                    entering = j;
                    break;
                }
            }
            if (entering < 0) return LpStatus::Optimal;
            Eigen::Index leaving = -1;
            double best = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < rows(); ++i) {
                const double a = t(i, entering);
                if (a <= opt.pivot_tol) continue;
                const double ratio = t(i, rhs_col()) / a;
                // ties broken by smallest basic variable index
                if (ratio < best - 1e-15 ||
                    (std::abs(ratio - best) <= 1e-15 && basis[static_cast<std::size_t>(i)] <
                                                            basis[static_cast<std::size_t>(leaving)])) {
                    best = ratio;
                    leaving = i;
                }
            }
            if (leaving < 0) return LpStatus::Unbounded;
            pivot(leaving, entering);
        }
    }
};

}  // namespace

LpResult solve_standard_form(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                             const SimplexOptions& options) {
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    if (b.size() != m || c.size() != n) throw Error(ErrorCode::DimensionMismatch, "LP data sizes disagree");

    // Phase one: artificial variables n..n+m-1, rows sign-normalized so b >= 0.
    Eigen::MatrixXd tab = Eigen::MatrixXd::Zero(m, n + m + 1);
    std::vector<int> basis(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) {
        const double sign = b[i] < 0.0 ? -1.0 : 1.0;
        tab.row(i).head(n) = sign * a.row(i);
        tab(i, n + i) = 1.0;
        tab(i, n + m) = sign * b[i];
        basis[static_cast<std::size_t>(i)] = static_cast<int>(n + i);
    }
    Tableau tb(std::move(tab), std::move(basis), options);
    Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(n + m);
    phase1_cost.tail(m).setConstant(-1.0);

    LpResult result;
    LpStatus st = tb.optimize(phase1_cost, n + m);
    result.iterations = tb.iterations;
    if (st == LpStatus::IterationLimit) {
        result.status = st;
        return result;
    }
    double infeasibility = 0.0;
    for (Eigen::Index i = 0; i < m; ++i)
        if (tb.basis[static_cast<std::size_t>(i)] >= n) infeasibility += tb.t(i, n + m);
    const double scale = 1.0 + b.cwiseAbs().maxCoeff();
    if (infeasibility > options.feasibility_tol * scale) {
        result.status = LpStatus::Infeasible;
        return result;
    }

    // Drive zero-level artificials out of the basis; rows where that is
    // impossible are linearly dependent and are dropped.
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < tb.rows(); ++i) {
        if (tb.basis[static_cast<std::size_t>(i)] < n) {
            keep.push_back(i);
            continue;
        }
        Eigen::Index col = -1;
        for (Eigen::Index j = 0; j < n; ++j)
            if (std::abs(tb.t(i, j)) > options.pivot_tol) {
                col = j;
                break;
            }
        if (col >= 0) {
            tb.pivot(i, col);
            keep.push_back(i);
        }
    }
    Eigen::MatrixXd reduced(static_cast<Eigen::Index>(keep.size()), n + 1);
    std::vector<int> reduced_basis;
    for (std::size_t k = 0; k < keep.size(); ++k) {
        reduced.row(static_cast<Eigen::Index>(k)).head(n) = tb.t.row(keep[k]).head(n);
        reduced(static_cast<Eigen::Index>(k), n) = tb.t(keep[k], n + m);
        reduced_basis.push_back(tb.basis[static_cast<std::size_t>(keep[k])]);
    }
    Tableau phase2(std::move(reduced), std::move(reduced_basis), options);
    phase2.iterations = tb.iterations;
    st = phase2.optimize(c, n);
    result.iterations = phase2.iterations;
    result.status = st;
    if (st != LpStatus::Optimal) return result;

    result.x = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < phase2.rows(); ++i)
        result.x[phase2.basis[static_cast<std::size_t>(i)]] = std::max(0.0, phase2.t(i, n));
    result.objective = c.dot(result.x);
    return result;
}

}  // namespace blowup
