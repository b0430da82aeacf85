#pragma once

// The six worked configurations on projective spaces and their products,
// each rebuilt from its point list and compared against the published matrix,
// rank, verdict and kernel direction.

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "blowup/admissibility.hpp"
#include "blowup/point_search.hpp"

namespace blowup {

enum class MatrixMatch { Exact, UpToSigns, Mismatch, NotDisplayed };

const char* to_string(MatrixMatch m);

struct CatalogParams {
    int n = 0;           // 0 selects the example's default
    double alpha = 0.0;  // 0 selects the default where alpha is a parameter
    double beta = 0.0;
};

/// Defaults: 1: n=3; 2: n=3, (alpha, beta) = (0.6, 0.8); 3: n=2, (0.8, 0.6);
/// 4: n=2, alpha=1; 5 and 6 take no parameters.
CatalogParams default_params(int id);

struct CatalogDiff {
    MatrixMatch matrix_match = MatrixMatch::NotDisplayed;
    /// (row, col) entries where the computed matrix differs from the displayed one.
    std::vector<std::pair<int, int>> differing_entries;
    bool rank_match = false;
    bool verdict_match = false;
    /// max |w - w_expected| with both normalized to entry sum 1.
    std::optional<double> witness_error;
    /// max |M v| for the displayed kernel vector, when one is displayed.
    std::optional<double> displayed_witness_residual;
};

struct CatalogEntry {
    int id = 0;
    CatalogParams params;
    std::string title;
    std::string claim;
    Configuration config;
    AdmissibilityReport report;
    std::optional<Eigen::MatrixXd> displayed_matrix;
    std::optional<Eigen::VectorXd> expected_witness;
    std::optional<Eigen::VectorXd> displayed_witness;
    int expected_rank = 0;
    bool claimed_verdict = false;
    CatalogDiff diff;
    /// Orbit-level check where the example is built from group orbits.
    std::optional<EquivariantReport> equivariant;
    std::vector<std::string> notes;
};

CatalogEntry example_catalog(int id, CatalogParams params = {});

MatrixMatch compare_matrices(const Eigen::MatrixXd& computed, const Eigen::MatrixXd& displayed,
                             std::vector<std::pair<int, int>>* differing = nullptr, double tol = 1e-12);

/// Points of each example (homogeneous coordinates normalized).
std::vector<ConfigPoint> example1_points(int n);
std::vector<ConfigPoint> example2_points(int n, double alpha, double beta);
std::vector<ConfigPoint> example3_points(int n, double alpha, double beta);
std::vector<ConfigPoint> example5_points();
std::vector<ConfigPoint> example6_points();

/// Sum over a < b of xi_ab: the form with all off-diagonal entries 1.
KernelFunction permutation_invariant_function(int n);
/// The 1 x 2 matrix (n, n(n-1-2 alpha)/(n + alpha^2)) evaluated from the points.
Eigen::MatrixXd example4_matrix(int n, double alpha);
SymmetryGroup example5_group();

/// LP margin t* as a function of the example parameter.
double example2_margin(int n, double beta);
double example4_margin(int n, double alpha);

/// Bisection on the sign of t*; returns the parameter where admissibility starts.
double example2_boundary(int n, double tol = 1e-9);
double example4_threshold(int n, double tol = 1e-9);

}  // namespace blowup
