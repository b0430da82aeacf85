#pragma once

// Adaptive Dormand-Prince 5(4) integration that lands exactly on a list of
// requested output abscissae.

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace blowup {

using OdeRhs = std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>;
using OdeObserver = std::function<void(double, const Eigen::VectorXd&)>;

struct RkOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    double initial_step = 0.0;  // 0 picks |t_out[0] - t0| * 1e-3
    long max_steps = 10'000'000;
};

struct RkStats {
    long accepted = 0;
    long rejected = 0;
};

/// Integrates y' = f(t, y) from (t0, y0) through every t in `outputs`
/// (strictly monotone, all on the same side of t0), calling `observer` at each.
/// Throws Error(IntegratorFailure) on step-size underflow or step exhaustion.
RkStats dormand_prince(const OdeRhs& f, double t0, Eigen::VectorXd y0, const std::vector<double>& outputs,
                       const OdeObserver& observer, const RkOptions& options = {});

}  // namespace blowup
