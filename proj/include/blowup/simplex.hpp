#pragma once

// Dense two-phase tableau simplex for small problems
//
//     maximize c^T x  subject to  A x = b,  x >= 0.
//
// Pivoting follows Bland's smallest-index rule throughout and the phase-one
// basis is the artificial identity, so the pivot sequence (and therefore the
// returned vertex) is a deterministic function of the input bits.

#include <Eigen/Dense>

#include <string>

namespace blowup {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(LpStatus status);

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Eigen::VectorXd x;
    double objective = 0.0;
    int iterations = 0;
};

struct SimplexOptions {
    int max_iterations = 20000;
    double pivot_tol = 1e-11;
    double cost_tol = 1e-11;
    double feasibility_tol = 1e-9;
};

LpResult solve_standard_form(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                             const SimplexOptions& options = {});

}  // namespace blowup
