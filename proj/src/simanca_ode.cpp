#include "blowup/simanca_ode.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "blowup/errors.hpp"
#include "blowup/runge_kutta.hpp"

namespace blowup {

namespace {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

// zeta(s0) from the Taylor expansion at 0: zeta' (0) = C(n-1,2),
// zeta''(0) = 2 C(n-1,2)^2 + C(n-1,3) - (n-1) C(n-1,2).
double series_start(int n, double s0) {
    const double c2 = binomial(n - 1, 2);
    const double c3 = binomial(n - 1, 3);
    const double second = 2.0 * c2 * c2 + c3 - (n - 1) * c2;
    return 1.0 + c2 * s0 + 0.5 * second * s0 * s0;
}

// Neville's algorithm evaluated at x = 0.
double neville_at_zero(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> p = y;
    const std::size_t m = x.size();
    for (std::size_t level = 1; level < m; ++level)
        for (std::size_t i = 0; i + level < m; ++i)
            p[i] = (x[i + level] * p[i] - x[i] * p[i + 1]) / (x[i + level] - x[i]);
    return p[0];
}

std::vector<double> build_grid(double s0, double s_max, const ZetaOptions& o) {
    std::vector<double> grid;
    const double decades = std::log10(s_max / s0);
    const int steps = static_cast<int>(std::floor(decades * o.samples_per_decade));
    for (int k = 1; k <= steps; ++k) grid.push_back(s0 * std::pow(10.0, static_cast<double>(k) / o.samples_per_decade));
    for (int j = 0; j < o.extrapolation_nodes; ++j)
        grid.push_back(s_max * std::pow(10.0, -static_cast<double>(j) / o.nodes_per_decade));
    std::sort(grid.begin(), grid.end());
    std::vector<double> out;
    for (double s : grid) {
        if (s <= s0 || s > s_max) continue;
        if (!out.empty() && std::abs(s - out.back()) <= 1e-12 * s) {
            // keep the exact extrapolation node rather than the log-grid neighbour
            out.back() = s;
            continue;
        }
        out.push_back(s);
    }
    if (out.empty() || out.back() != s_max) out.push_back(s_max);
    return out;
}

}  // namespace

double zeta_rhs(int n, double s, double zeta) {
    const double x = s * zeta;
    // P(x) by Horner, highest coefficient C(n-1, n-1) first
    double p = 0.0;
    for (int k = n - 1; k >= 2; --k) p = p * x + binomial(n - 1, k);
    return zeta * zeta * p / std::pow(1.0 + x, n - 1);
}

ZetaTrajectory integrate_zeta(int n, double s_max, double rel_tol, const ZetaOptions& options) {
    if (n < 2) throw Error(ErrorCode::InvalidDimension, "integrate_zeta needs n >= 2");
    if (!(s_max >= 100.0)) throw Error(ErrorCode::OutOfDomain, "integrate_zeta needs s_max >= 100");
    if (!(rel_tol > 0.0 && rel_tol <= 1e-8)) throw Error(ErrorCode::OutOfDomain, "integrate_zeta needs rel_tol <= 1e-8");

    ZetaTrajectory traj;
    traj.n = n;
    traj.s_max = s_max;
    traj.rel_tol = rel_tol;
    const double s0 = options.s0;
    const std::vector<double> grid = build_grid(s0, s_max, options);
    const OdeRhs rhs = [n](double s, const Eigen::VectorXd& y) {
        Eigen::VectorXd dy(1);
        dy[0] = zeta_rhs(n, s, y[0]);
        return dy;
    };
    Eigen::VectorXd y0(1);
    y0[0] = series_start(n, s0);
    traj.s.push_back(s0);
    traj.zeta.push_back(y0[0]);
    RkOptions ro;
    ro.rel_tol = rel_tol;
    ro.abs_tol = rel_tol * 1e-4;
    const RkStats st = dormand_prince(rhs, s0, y0, grid, [&](double s, const Eigen::VectorXd& y) {
        traj.s.push_back(s);
        traj.zeta.push_back(y[0]);
    }, ro);
    traj.steps = st.accepted;
    traj.rejected = st.rejected;

    for (std::size_t i = 0; i < traj.zeta.size(); ++i) {
        if (!(traj.zeta[i] > 0.0))
            throw Error(ErrorCode::IntegratorFailure, "zeta left the positive half-line at s = " + std::to_string(traj.s[i]));
        if (i && traj.zeta[i] < traj.zeta[i - 1] - 1e-10)
            throw Error(ErrorCode::IntegratorFailure, "zeta decreased at s = " + std::to_string(traj.s[i]));
    }

    std::vector<double> h, z;
    for (int j = 0; j < options.extrapolation_nodes; ++j) {
        const double target = s_max * std::pow(10.0, -static_cast<double>(j) / options.nodes_per_decade);
        const auto it = std::min_element(traj.s.begin(), traj.s.end(), [&](double a, double b) {
            return std::abs(a - target) < std::abs(b - target);
        });
        h.push_back(1.0 / *it);
        z.push_back(traj.zeta[static_cast<std::size_t>(it - traj.s.begin())]);
    }
    traj.lambda = neville_at_zero(h, z);
    if (h.size() > 2) {
        const double shorter = neville_at_zero({h.begin(), h.end() - 1}, {z.begin(), z.end() - 1});
        traj.lambda_error = std::abs(traj.lambda - shorter);
    }
    if (!(traj.lambda > 0.0)) throw Error(ErrorCode::IntegratorFailure, "extrapolated lambda is not positive");
    return traj;
}

Potential reconstruct_potential(const ZetaTrajectory& traj, const std::vector<double>& s_out, double rel_tol) {
    const int n = traj.n;
    const double lambda = traj.lambda;
    std::vector<double> grid = s_out.empty() ? std::vector<double>(traj.s.begin() + 1, traj.s.end()) : s_out;
    const double s0 = traj.s.front();
    Potential out;
    out.lambda = lambda;
    const double c2 = binomial(n - 1, 2);
    Eigen::VectorXd y0(2);
    y0[0] = series_start(n, s0);
    y0[1] = (1.0 - lambda) * s0 + 0.5 * c2 * s0 * s0;

    const auto record = [&](double s, const Eigen::VectorXd& y) {
        out.s.push_back(s);
        out.zeta.push_back(y[0]);
        out.f_minus_linear.push_back(std::log(s) + y[1]);
        out.f.push_back(std::log(s) + lambda * s + y[1]);
    };
    std::vector<double> forward;
    for (double s : grid) {
        if (s < s0) throw Error(ErrorCode::OutOfDomain, "reconstruct_potential output below the series start");
        if (s == s0)
            continue;
        forward.push_back(s);
    }
    if (std::find(grid.begin(), grid.end(), s0) != grid.end()) record(s0, y0);
    const OdeRhs rhs = [n, lambda](double s, const Eigen::VectorXd& y) {
        Eigen::VectorXd dy(2);
        dy[0] = zeta_rhs(n, s, y[0]);
        dy[1] = y[0] - lambda;
        return dy;
    };
    RkOptions ro;
    ro.rel_tol = rel_tol;
    ro.abs_tol = 1e-15;
    dormand_prince(rhs, s0, y0, forward, record, ro);
    return out;
}

double tail_term(int n, double lambda, double s, TailConvention tail) {
    const double base = -std::pow(lambda, 2 - n) * std::pow(s, 2 - n);
    return tail == TailConvention::Derived ? base / (n - 2) : base;
}

PotentialExpansion expansion_fit(const std::vector<double>& s, const std::vector<double>& y, double lambda_hint, int n,
                                 TailConvention tail) {
    if (n < 3) throw Error(ErrorCode::InvalidDimension, "expansion_fit needs n >= 3");
    if (s.size() != y.size() || s.empty()) throw Error(ErrorCode::DimensionMismatch, "sample arrays differ in length");
    const double s_max = *std::max_element(s.begin(), s.end());
    if (s_max < 100.0) throw Error(ErrorCode::WindowTooShort, "samples must reach s >= 100");
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] >= s_max / 10.0 * (1.0 - 1e-12)) idx.push_back(i);
    if (idx.size() < 8) throw Error(ErrorCode::WindowTooShort, "fewer than 8 samples in [s_max/10, s_max]");

    const auto rows = static_cast<Eigen::Index>(idx.size());
    double lambda = lambda_hint;
    double c = 0.0, b = 0.0;
    Eigen::MatrixXd a(rows, 3);
    // column scaling keeps the normal equations well conditioned
    const double s_scale = s_max, p_scale = std::pow(s_max / 10.0, 1 - n);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const double sv = s[idx[static_cast<std::size_t>(r)]];
        a(r, 0) = sv / s_scale;
        a(r, 1) = 1.0;
        a(r, 2) = std::pow(sv, 1 - n) / p_scale;
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    for (int iter = 0; iter < 8; ++iter) {
        Eigen::VectorXd rhs(rows);
        for (Eigen::Index r = 0; r < rows; ++r) {
            const std::size_t i = idx[static_cast<std::size_t>(r)];
            rhs[r] = y[i] - (lambda - lambda_hint) * s[i] - tail_term(n, lambda, s[i], tail);
        }
        const Eigen::VectorXd sol = qr.solve(rhs);
        const double dl = sol[0] / s_scale;
        c = sol[1];
        b = sol[2] / p_scale;
        lambda += dl;
        if (std::abs(dl) < 1e-16 * std::max(1.0, std::abs(lambda))) break;
    }

    // regression of log|remainder| on log s
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (std::size_t i : idx) {
        const double rem = y[i] - (lambda - lambda_hint) * s[i] - c - tail_term(n, lambda, s[i], tail);
        if (rem == 0.0) continue;
        const double lx = std::log(s[i]), ly = std::log(std::abs(rem));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
    }
    PotentialExpansion out;
    out.n = n;
    out.lambda = lambda;
    out.c = c;
    out.next_coefficient = b;
    out.remainder_slope = count >= 2 ? (count * sxy - sx * sy) / (count * sxx - sx * sx) : 0.0;
    out.window_lo = s[idx.front()];
    out.window_hi = s_max;
    out.tail = tail;
    return out;
}

PotentialExpansion expansion_fit(const Potential& p, int n, TailConvention tail) {
    return expansion_fit(p.s, p.f_minus_linear, p.lambda, n, tail);
}

double scale_factor(double a_tilde, int n) {
    if (!(a_tilde > 0.0)) throw Error(ErrorCode::OutOfDomain, "scale_factor needs a > 0");
    if (n < 2) throw Error(ErrorCode::InvalidDimension, "scale_factor needs n >= 2");
    return std::pow(std::pow(2.0, 2 - n) * a_tilde, 1.0 / (n - 1));
}

}  // namespace blowup
