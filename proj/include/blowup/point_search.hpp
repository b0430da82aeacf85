#pragma once

// Constructing admissible configurations: random full-rank search, the
// direction-cover construction, single-point adjunction and an upper-bound
// search for the minimal admissible point count.

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "blowup/admissibility.hpp"
#include "blowup/kernel_basis.hpp"

namespace blowup {

struct Configuration {
    KernelBasis basis;
    std::vector<ConfigPoint> points;
    std::optional<SymmetryGroup> group;
    std::string provenance;
    int tries = 0;

    const ModelManifold& manifold() const { return basis.manifold(); }
    std::size_t m() const { return points.size(); }
};

/// Minimum pairwise chordal distance; +infinity for fewer than two points.
double min_pairwise_distance(const std::vector<ConfigPoint>& points);

/// Samples m uniform points until rank_c1 == d.
Configuration random_rank_search(const KernelBasis& basis, int m, std::uint64_t seed, int max_tries = 100,
                                 double rank_tol = 1e-9);

struct CoverOptions {
    double net_angle = 0.5;      // initial chordal covering radius of the direction net
    int probe_size = 1000;       // sample points used to find negative/positive witnesses
    int max_refinements = 6;     // net halvings before giving up
    std::size_t max_net_size = 200000;
    int max_extra_points = 64;   // random points added if the LP still disagrees
    std::uint64_t seed = kDefaultSeed;
};

struct CoverResult {
    Configuration config;
    AdmissibilityReport report;
    /// Final direction net (unit vectors in R^d) and its covering radius.
    std::vector<Eigen::VectorXd> net;
    double covering_radius = 0.0;
    int refinements = 0;
    /// Number of distinct points chosen by the cover (before any extra points).
    int cover_points = 0;
    int extra_points = 0;
};

/// For each direction L of a net on S^{d-1} picks probe points where
/// f_L = sum L_j xi_j is robustly negative and robustly positive on the whole
/// cap around L. If every cap is covered, no direction is one-signed on the
/// chosen points, which forces C1 = d and a strictly positive kernel vector.
/// The result is re-verified with the LP.
CoverResult cover_construct(const KernelBasis& basis, const CoverOptions& options = {});

/// Every net direction has a strictly negative and a strictly positive value
/// among `points`. Returns the indices of directions that fail.
std::vector<std::size_t> cover_failures(const KernelBasis& basis, const std::vector<ConfigPoint>& points,
                                        const std::vector<Eigen::VectorXd>& net);

struct AdjoinResult {
    Configuration config;
    AdmissibilityReport report;
    /// Witness built by the rank-d update (sum 1), before LP re-verification.
    Eigen::VectorXd constructed_witness;
    double step = 0.0;
    bool used_fallback = false;
};

/// Adds p to an admissible configuration, constructing the new positive kernel
/// vector (a - t x, t) from M x = xi(p), then re-checking with the LP.
AdjoinResult adjoin_point(const Configuration& cfg, const AdmissibilityReport& report, const ConfigPoint& p,
                          const CheckOptions& options = {});

struct M0Options {
    int trials = 8;
    std::uint64_t seed = kDefaultSeed;
    /// Known admissible configurations to start descent from.
    std::vector<std::vector<ConfigPoint>> seeds;
    bool use_cover = true;
};

struct M0Result {
    int m = 0;
    Configuration config;
    AdmissibilityReport report;
    std::vector<std::string> log;
};

/// Upper bound on the minimal admissible point count. Never a minimality claim.
M0Result m0_estimate(const KernelBasis& basis, const M0Options& options = {});

}  // namespace blowup
