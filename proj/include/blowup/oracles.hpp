#pragma once

// Independent cross-checks. Each oracle shares no numerical code with the
// routine it checks: different integrator, different variable, different
// arithmetic or a brute-force search.

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "blowup/admissibility.hpp"
#include "blowup/biharmonic.hpp"

namespace blowup::oracle {

/// lambda = lim zeta(s) as s -> infinity, by Cash-Karp integration of the
/// regular form on [0, 1] followed by the u = 1/s form
///     d zeta/du = -1 + u^{n-2} (u + (n-1) zeta) / (u + zeta)^{n-1}
/// from u = 1 down to u = 0, where the equation is again regular (n >= 3).
double lambda_u_variable(int n, double rel_tol = 1e-11);

/// Finite-difference Laplacian of r^a P(x), P(x) = Re((x1 + i x2)^gamma), at x,
/// divided by r^{a-2} P(x). Requires a - gamma to be an even integer so the
/// whole computation stays in __float128 polynomial arithmetic.
double fd_laplacian_factor(int n, int gamma, int a, const std::vector<double>& x);

/// Relative finite-difference bi-Laplacian residual of a radial solution at x:
/// |Lap^2 H(x)| / ((|c1| r^{e1} + |c2| r^{e2}) / r^4). Composed 3-point
/// second differences with step h, Richardson over (h, h/2, h/4).
double fd_bilaplacian_residual(const RadialSolution& sol, const std::vector<double>& x, double h = 1e-3);

/// Max residual over `count` random points in the solution's validity range
/// (inner r in [0.3, 1], outer r in [1, 3]).
double fd_bilaplacian_sample(const RadialSolution& sol, std::uint64_t seed, int count = 20);

struct GridVerdict {
    int kernel_dim = 0;
    /// max over unit kernel vectors v of min_i v_i
    double margin = 0.0;
    bool positive = false;
};

/// Brute-force C2 for kernel dimension <= 2: scan a fine grid of the unit
/// circle in the kernel, then refine around the best angle.
GridVerdict kernel_grid_c2(const Eigen::MatrixXd& m, double rank_tol = 1e-9, int grid = 4096);

}  // namespace blowup::oracle
