#pragma once

// Randomized property suites. Every suite is deterministic in its seed and
// reports how many cases ran, failed or were skipped as too close to a
// decision boundary to be meaningful.

#include <cstdint>
#include <string>
#include <vector>

namespace blowup {

struct PropertyResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    int skipped = 0;
    /// Largest observed error for suites that measure one.
    double worst = 0.0;
    std::string detail;

    bool ok(int min_cases = 100) const { return failures == 0 && cases - skipped >= min_cases; }
};

/// C1 and C2 verdicts unchanged under an invertible change of kernel basis,
/// a permutation of the points, a positive rescaling of the columns and a
/// complex rescaling of homogeneous coordinates.
PropertyResult prop_verdict_invariance(std::uint64_t seed, int cases = 120);

/// LP positivity against the brute-force kernel-grid search, kernel dimension 1 or 2.
PropertyResult prop_lp_vs_grid(std::uint64_t seed, int cases = 200);

/// Adjoining a point to an admissible configuration keeps it admissible.
PropertyResult prop_adjoin_monotone(std::uint64_t seed, int cases = 100);

/// cover_construct on the one-dimensional invariant kernel of P^1 x rigid:
/// two points, every net direction two-signed, LP-admissible.
PropertyResult prop_cover_d1(std::uint64_t seed, int cases = 100);

/// Finite-difference bi-Laplacian residual of inner and outer extensions,
/// n = 2..5, gamma = 0..12, below 1e-6.
PropertyResult prop_biharmonic_fd(std::uint64_t seed);

/// Monte Carlo means of the P^1..P^3 kernel functions within 3 standard errors.
PropertyResult prop_mean_zero(std::uint64_t seed, int rounds = 4, int samples = 4000);

std::vector<PropertyResult> all_properties(std::uint64_t seed);

}  // namespace blowup
