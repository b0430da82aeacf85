#include "blowup/runge_kutta.hpp"

#include <algorithm>
#include <cmath>

#include "blowup/errors.hpp"

namespace blowup {

namespace {

// Dormand-Prince tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat (error weights)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

RkStats dormand_prince(const OdeRhs& f, double t0, Eigen::VectorXd y0, const std::vector<double>& outputs,
                       const OdeObserver& observer, const RkOptions& options) {
    RkStats stats;
    if (outputs.empty()) return stats;
    const double dir = outputs.front() >= t0 ? 1.0 : -1.0;
    double t = t0;
    Eigen::VectorXd y = std::move(y0);
    double h = options.initial_step > 0.0 ? options.initial_step : std::abs(outputs.front() - t0) * 1e-3;
    if (h == 0.0) h = 1e-8;
    Eigen::VectorXd k1 = f(t, y);

    for (double target : outputs) {
        if ((target - t) * dir < 0.0) throw Error(ErrorCode::Precondition, "output abscissae must be monotone");
        while ((target - t) * dir > 0.0) {
            if (stats.accepted + stats.rejected >= options.max_steps)
                throw Error(ErrorCode::IntegratorFailure, "step budget exhausted at t = " + std::to_string(t));
            bool clipped = false;
            double step = h;
            if (step >= std::abs(target - t)) {
                step = std::abs(target - t);
                clipped = true;
            }
            const double hs = dir * step;
            const Eigen::VectorXd k2 = f(t + c2 * hs, y + hs * (a21 * k1));
            const Eigen::VectorXd k3 = f(t + c3 * hs, y + hs * (a31 * k1 + a32 * k2));
            const Eigen::VectorXd k4 = f(t + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
            const Eigen::VectorXd k5 = f(t + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const Eigen::VectorXd k6 = f(t + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const Eigen::VectorXd y5 = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const Eigen::VectorXd k7 = f(t + hs, y5);
            const Eigen::VectorXd err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            double norm = 0.0;
            for (Eigen::Index i = 0; i < y.size(); ++i) {
                const double sc = options.abs_tol + options.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
                norm += (err[i] / sc) * (err[i] / sc);
            }
            norm = std::sqrt(norm / static_cast<double>(y.size()));
            if (!std::isfinite(norm))
                throw Error(ErrorCode::IntegratorFailure, "non-finite derivative at t = " + std::to_string(t));

            if (norm <= 1.0) {
                t = clipped ? target : t + hs;
                y = y5;
                k1 = k7;
                ++stats.accepted;
                const double grow = norm == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(norm, -0.2)));
                // a clipped step says nothing about the natural step size
                if (!clipped || grow < 1.0) h = step * grow;
            } else {
                ++stats.rejected;
                h = step * std::max(0.1, 0.9 * std::pow(norm, -0.2));
            }
            if (h < 1e-15 * std::max(1.0, std::abs(t)))
                throw Error(ErrorCode::IntegratorFailure, "step size underflow at t = " + std::to_string(t));
        }
        observer(t, y);
    }
    return stats;
}

}  // namespace blowup
