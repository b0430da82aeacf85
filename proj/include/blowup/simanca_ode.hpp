#pragma once

// Radial potential of the scalar-flat blow-up metric on C^n.
//
// With s = |z|^2 and zeta = d f/ds - 1/s, the potential equation becomes
//
//     (1 + s zeta)^{n-1} s^2 zeta' = (1 + s zeta)^{n-1} - 1 - (n-1) s zeta,
//
// i.e. zeta' = zeta^2 P(x) / (1 + x)^{n-1} with x = s zeta and
// P(x) = sum_{k=2}^{n-1} C(n-1, k) x^{k-2}. This form has no cancellation and
// is regular at s = 0, where zeta(0) = 1 and zeta'(0) = (n-1)(n-2)/2.
//
// For large s, zeta = lambda - 1/s + lambda^{2-n} s^{1-n} + O(s^{-n}), hence
// f = lambda s + c - lambda^{2-n} s^{2-n} / (n-2) + O(s^{1-n}) for n >= 3.

#include <optional>
#include <string>
#include <vector>

namespace blowup {

/// zeta' as a function of (s, zeta).
double zeta_rhs(int n, double s, double zeta);

struct ZetaOptions {
    double s0 = 1e-6;
    int samples_per_decade = 40;
    /// Extrapolation nodes s_max * 10^{-j/nodes_per_decade}, j = 0..extrapolation_nodes-1.
    int extrapolation_nodes = 7;
    int nodes_per_decade = 6;
};

struct ZetaTrajectory {
    int n = 0;
    std::vector<double> s;
    std::vector<double> zeta;
    double lambda = 0.0;
    /// |difference| between the full and one-node-shorter extrapolations.
    double lambda_error = 0.0;
    double s_max = 0.0;
    double rel_tol = 0.0;
    long steps = 0;
    long rejected = 0;
};

/// Requires n >= 2, s_max >= 100, rel_tol <= 1e-8.
ZetaTrajectory integrate_zeta(int n, double s_max, double rel_tol, const ZetaOptions& options = {});

struct Potential {
    std::vector<double> s;
    std::vector<double> f;
    /// f - lambda s = log s + G, kept separately to avoid cancellation.
    std::vector<double> f_minus_linear;
    std::vector<double> zeta;
    double lambda = 0.0;
};

/// f from df/ds = zeta + 1/s with f - log s -> 0 as s -> 0. Integrates
/// (zeta, G) with G' = zeta - lambda so that f = log s + lambda s + G.
/// `s_out` defaults to the trajectory's own abscissae.
Potential reconstruct_potential(const ZetaTrajectory& traj, const std::vector<double>& s_out = {},
                                double rel_tol = 1e-13);

enum class TailConvention {
    Derived,  // -lambda^{2-n} s^{2-n} / (n-2), as follows from the zeta expansion
    Literal,  // -lambda^{2-n} s^{2-n}
};

struct PotentialExpansion {
    int n = 0;
    double lambda = 0.0;
    double c = 0.0;
    /// Fitted coefficient of s^{1-n}.
    double next_coefficient = 0.0;
    /// Log-log slope of |f - (lambda s + c + tail)| over the window.
    double remainder_slope = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    TailConvention tail = TailConvention::Derived;
};

double tail_term(int n, double lambda, double s, TailConvention tail);

/// Fits lambda, c and the s^{1-n} coefficient on [s_max/10, s_max] after
/// subtracting the tail; `f_minus_linear_hint` is f - lambda_hint s.
/// Requires n >= 3, max s >= 100 and at least 8 samples in the window.
PotentialExpansion expansion_fit(const std::vector<double>& s, const std::vector<double>& f_minus_linear_hint,
                                 double lambda_hint, int n, TailConvention tail = TailConvention::Derived);
PotentialExpansion expansion_fit(const Potential& p, int n, TailConvention tail = TailConvention::Derived);

/// (2^{2-n} a)^{1/(n-1)}: the rescaling that normalizes the leading
/// correction coefficient of the model potential to a.
double scale_factor(double a_tilde, int n);

}  // namespace blowup
