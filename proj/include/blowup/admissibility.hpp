#pragma once

// The d x m matrix of kernel-function values at candidate blow-up points, its
// rank (condition C1) and the existence of a strictly positive kernel vector
// (condition C2), decided by a max-min-entry linear program.

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "blowup/kernel_basis.hpp"

namespace blowup {

struct AdmissibilityMatrix {
    Eigen::MatrixXd entries;
    std::vector<std::string> row_labels;

    Eigen::Index d() const { return entries.rows(); }
    Eigen::Index m() const { return entries.cols(); }
};

AdmissibilityMatrix build_matrix(const KernelBasis& basis, const std::vector<ConfigPoint>& points);

/// Number of singular values above tol * sigma_max (0 for the zero matrix).
int rank_c1(const Eigen::MatrixXd& m, double tol = 1e-9);

enum class C2Status {
    Positive,    // t* > tol_pos
    Marginal,    // |t*| <= tol_pos: kernel touches the cone boundary only
    Absent,      // t* < -tol_pos
    Infeasible,  // no kernel vector with nonzero entry sum
};

const char* to_string(C2Status s);

struct PositiveKernel {
    C2Status status = C2Status::Infeasible;
    bool positive = false;
    /// Optimal a (sum 1); present whenever the LP is feasible.
    std::optional<Eigen::VectorXd> witness;
    /// t* = max min_i a_i; -infinity when infeasible.
    double margin = 0.0;
    int iterations = 0;
};

/// maximize t s.t. M a = 0, sum a = 1, a_i >= t. Throws Error(LpFailure) if the
/// iteration guard trips.
PositiveKernel positive_kernel_c2(const Eigen::MatrixXd& m, double tol_pos = 1e-9);

/// c_n = 4(n-2)(n-1) |S^{2n-1}| for n >= 3, c_2 = 2 |S^3|.
double cn_constant(int n);

struct Coefficients {
    double a0 = 0.0;
    double cn = 0.0;
};

Coefficients coefficients(const Eigen::VectorXd& a, int n);

struct CheckOptions {
    double rank_tol = 1e-9;
    double tol_pos = 1e-9;
};

struct AdmissibilityReport {
    Eigen::MatrixXd matrix;
    std::vector<std::string> row_labels;
    int d = 0;
    int m = 0;
    int c1 = 0;
    int kernel_dim = 0;
    C2Status c2_status = C2Status::Infeasible;
    bool c2_positive = false;
    std::optional<Eigen::VectorXd> witness;
    double margin = 0.0;
    /// max |M a| over the witness, re-verified after the solve.
    double residual = 0.0;
    /// Present when the manifold dimension n >= 2 and a witness exists.
    std::optional<double> a0;
    std::optional<double> cn;
    bool verdict = false;
};

/// Report for an already-assembled matrix; `d` is the kernel dimension the
/// rank must reach and `complex_dim` selects c_n.
AdmissibilityReport check_matrix(const Eigen::MatrixXd& m, int d, int complex_dim, const CheckOptions& options = {},
                                 std::vector<std::string> row_labels = {});

AdmissibilityReport check(const KernelBasis& basis, const std::vector<ConfigPoint>& points,
                          const CheckOptions& options = {});

struct EquivariantReport {
    KernelBasis invariant_basis;
    /// One column per orbit, weighted by orbit size, over the invariant basis.
    AdmissibilityReport reduced;
    /// Full basis against the orbit-expanded point list.
    AdmissibilityReport full;
    std::vector<std::size_t> orbit_sizes;
    std::vector<ConfigPoint> expanded_points;
    /// Agreement of the C2 verdicts. The ranks legitimately differ: the full
    /// matrix of a symmetric configuration only sees the invariant directions.
    bool consistent = false;
};

EquivariantReport equivariant_check(const KernelBasis& basis, const SymmetryGroup& group,
                                    const std::vector<ConfigPoint>& representatives,
                                    const CheckOptions& options = {});

}  // namespace blowup
