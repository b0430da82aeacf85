#pragma once

// Biharmonic extensions per spherical-harmonic mode in R^{2n}.
//
// For a degree-gamma harmonic Y on the unit sphere,
//     Lap(r^a Y) = (a - gamma)(a + gamma + 2n - 2) r^{a-2} Y,
// so r^gamma, r^{gamma+2} span the bounded biharmonic solutions in the ball and
// r^{2-2n-gamma}, r^{4-2n-gamma} the decaying ones outside it.

#include <Eigen/Dense>

#include <array>
#include <string>

namespace blowup {

struct ModeData {
    int gamma = 0;
    int n = 2;
    double h = 0.0;  // trace on r = 1
    double k = 0.0;  // Laplacian trace on r = 1
};

enum class Side { Inner, Outer };
const char* to_string(Side s);

/// (a - gamma)(a + gamma + 2n - 2)
double laplacian_factor(int n, int gamma, double a);

struct RadialSolution {
    Side side = Side::Inner;
    int n = 2;
    int gamma = 0;
    std::array<double, 2> exponent{};
    std::array<double, 2> coefficient{};

    /// Radial profile; the extension is profile(r) * Y(x / r).
    double value(double r) const;
    double dr(double r) const;
    double laplacian(double r) const;
    double dlaplacian(double r) const;
    /// Validity range: r <= 1 for inner, r >= 1 for outer.
    bool valid_at(double r) const;
    /// Exponent of the slowest-decaying nonzero term (outer side).
    double decay_exponent() const;
};

/// Bounded extension with trace h and Laplacian trace k.
RadialSolution inner_extension_mode(const ModeData& md);

/// Decaying extension. For gamma = 0 a nonzero k breaks the mean-zero
/// hypothesis and throws MeanZeroViolation unless `allow_radial_offset` is set
/// (n >= 3 only; for n = 2 the second radial solution is constant and k must
/// vanish regardless).
RadialSolution outer_extension_mode(const ModeData& md, bool allow_radial_offset = false);

/// mu = 4(gamma + n): Lap(r^{gamma+2} Y) = mu r^gamma Y.
double mu_factor(int gamma, int n);
/// nu = 4(2 - n - gamma): Lap(r^{4-2n-gamma} Y) = nu r^{2-2n-gamma} Y.
double nu_factor(int gamma, int n);

struct PoissonMap {
    int gamma = 0;
    int n = 2;
    /// 2x2 in general; 1x1 (k = 0 subspace) for the restricted gamma = 0 map.
    Eigen::MatrixXd matrix;
    double determinant = 0.0;
    double condition = 0.0;
    bool restricted = false;
};

/// (h, k) -> (dr(H^o - H^i), dr Lap(H^o - H^i)) at r = 1. For gamma = 0 the map
/// is restricted to k = 0 unless `unrestricted_radial` is set (n >= 3).
PoissonMap poisson_map_mode(int gamma, int n, bool unrestricted_radial = false);

/// Values at r = 1 of (outer known part) - (inner known part).
struct Jumps {
    double h = 0.0;
    double dh = 0.0;
    double lap = 0.0;
    double dlap = 0.0;
};

struct MatchedData {
    ModeData inner;
    ModeData outer;
};

/// Boundary data for which known jumps + H^o - H^i has vanishing value,
/// radial derivative, Laplacian and radial derivative of the Laplacian at r = 1.
/// Throws SingularMap if the system cannot be solved.
MatchedData match_mode(int gamma, int n, const Jumps& jumps);

/// Jumps produced by a pair of extensions (outer minus inner) at r = 1.
Jumps jumps_of(const RadialSolution& outer, const RadialSolution& inner);

struct Reparameterization {
    double h_offset = 0.0;
    double k_offset = 0.0;
};

/// Offsets absorbing the mismatch of the leading radial terms. For n = 2 the
/// log-coefficient analogue (0, 4(a_tilde - a) eps^2) is returned; the
/// constant multiple of log r_eps^2 is left out since it is absorbed by h.
Reparameterization reparameterize(double a, double a_tilde, double eps, int n);

}  // namespace blowup
