#include "blowup/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "blowup/errors.hpp"
#include "blowup/rng.hpp"

namespace blowup::oracle {

namespace {

using quad = __float128;

// Adaptive Cash-Karp RK4(5) for a scalar equation, integrating from t0 to t1
// (either direction).
double cash_karp(const std::function<double(double, double)>& f, double t0, double y, double t1, double rel_tol) {
    static constexpr double a2 = 1.0 / 5, a3 = 3.0 / 10, a4 = 3.0 / 5, a5 = 1.0, a6 = 7.0 / 8;
    static constexpr double b21 = 1.0 / 5;
    static constexpr double b31 = 3.0 / 40, b32 = 9.0 / 40;
    static constexpr double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
    static constexpr double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27, b54 = 35.0 / 27;
    static constexpr double b61 = 1631.0 / 55296, b62 = 175.0 / 512, b63 = 575.0 / 13824, b64 = 44275.0 / 110592,
                            b65 = 253.0 / 4096;
    static constexpr double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594, c6 = 512.0 / 1771;
    static constexpr double d1 = c1 - 2825.0 / 27648, d3 = c3 - 18575.0 / 48384, d4 = c4 - 13525.0 / 55296,
                            d5 = -277.0 / 14336, d6 = c6 - 1.0 / 4;

    const double dir = t1 > t0 ? 1.0 : -1.0;
    double t = t0;
    double h = dir * std::min(1e-3, std::abs(t1 - t0));
    for (long step = 0; step < 10000000; ++step) {
        if (dir * (t - t1) >= 0.0) return y;
        if (dir * (t + h - t1) > 0.0) h = t1 - t;
        const double k1 = f(t, y);
        const double k2 = f(t + a2 * h, y + h * b21 * k1);
        const double k3 = f(t + a3 * h, y + h * (b31 * k1 + b32 * k2));
        const double k4 = f(t + a4 * h, y + h * (b41 * k1 + b42 * k2 + b43 * k3));
        const double k5 = f(t + a5 * h, y + h * (b51 * k1 + b52 * k2 + b53 * k3 + b54 * k4));
        const double k6 = f(t + a6 * h, y + h * (b61 * k1 + b62 * k2 + b63 * k3 + b64 * k4 + b65 * k5));
        const double y5 = y + h * (c1 * k1 + c3 * k3 + c4 * k4 + c6 * k6);
        const double err = std::abs(h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6));
        const double scale = rel_tol * std::max(std::abs(y), std::abs(y5)) + 1e-300;
        const double ratio = err / scale;
        if (!std::isfinite(y5)) throw Error(ErrorCode::IntegratorFailure, "oracle integrator produced a non-finite value");
        if (ratio <= 1.0) {
            t = (dir * (t + h - t1) >= 0.0) ? t1 : t + h;
            y = y5;
            h *= ratio > 1e-8 ? std::min(5.0, 0.9 * std::pow(ratio, -0.2)) : 5.0;
        } else {
            h *= std::max(0.1, 0.9 * std::pow(ratio, -0.25));
        }
        if (std::abs(h) < 1e-15 * std::max(1.0, std::abs(t)))
            throw Error(ErrorCode::IntegratorFailure, "oracle step size underflow");
    }
    throw Error(ErrorCode::IntegratorFailure, "oracle step limit");
}

double binom(int n, int k) {
    double out = 1.0;
    for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

quad int_pow(quad base, int e) {
    const bool neg = e < 0;
    unsigned k = static_cast<unsigned>(neg ? -e : e);
    quad out = 1;
    while (k) {
        if (k & 1u) out *= base;
        base *= base;
        k >>= 1u;
    }
    return neg ? 1 / out : out;
}

// f(x) = sum_i c_i (r^2)^{q_i} P(x) with integer q_i, evaluated at x + a h e_i + b h e_j.
class ShiftedPoly {
public:
    ShiftedPoly(int gamma, std::vector<std::pair<quad, int>> terms, std::vector<quad> x)
        : gamma_(gamma), terms_(std::move(terms)), x_(std::move(x)) {
        for (const quad& v : x_) r2_ += v * v;
    }

    quad at(std::size_t i, int a, std::size_t j, int b, quad h) const {
        quad x0 = x_[0], x1 = x_[1], r2 = r2_;
        shift(i, a * h, x0, x1, r2);
        shift(j, b * h, x0, x1, r2);
        quad radial = 0;
        for (const auto& [c, q] : terms_) radial += c * int_pow(r2, q);
        return radial * harmonic(x0, x1);
    }

    std::size_t dim() const { return x_.size(); }

private:
    void shift(std::size_t k, quad d, quad& x0, quad& x1, quad& r2) const {
        if (d == 0) return;
        r2 += 2 * x_[k] * d + d * d;
        if (k == 0) x0 += d;
        if (k == 1) x1 += d;
    }
    quad harmonic(quad a, quad b) const {
        quad re = 1, im = 0;
        for (int i = 0; i < gamma_; ++i) {
            const quad nr = re * a - im * b;
            im = re * b + im * a;
            re = nr;
        }
        return re;
    }

    int gamma_;
    std::vector<std::pair<quad, int>> terms_;
    std::vector<quad> x_;
    quad r2_ = 0;
};

// Laplacian as the sum of 3-point second differences.
quad fd_laplacian(const ShiftedPoly& f, quad h) {
    const quad centre = f.at(0, 0, 0, 0, h);
    quad sum = 0;
    for (std::size_t i = 0; i < f.dim(); ++i) sum += f.at(i, 1, i, 0, h) - 2 * centre + f.at(i, -1, i, 0, h);
    return sum / (h * h);
}

// The same stencil applied twice: sum_i D_i^2 + 2 sum_{i<j} D_i D_j.
quad fd_bilaplacian(const ShiftedPoly& f, quad h) {
    static constexpr int w[3] = {1, -2, 1};
    quad sum = 0;
    const quad centre = f.at(0, 0, 0, 0, h);
    for (std::size_t i = 0; i < f.dim(); ++i) {
        sum += f.at(i, 2, i, 0, h) - 4 * f.at(i, 1, i, 0, h) + 6 * centre - 4 * f.at(i, -1, i, 0, h) +
               f.at(i, -2, i, 0, h);
        for (std::size_t j = i + 1; j < f.dim(); ++j) {
            quad cross = 0;
            for (int a = -1; a <= 1; ++a)
                for (int b = -1; b <= 1; ++b) cross += w[a + 1] * w[b + 1] * f.at(i, a, j, b, h);
            sum += 2 * cross;
        }
    }
    const quad h2 = h * h;
    return sum / (h2 * h2);
}

// Richardson table over h, h/2, h/4 for an expansion in even powers of h.
template <class Fn>
quad richardson(Fn&& fd, quad h) {
    const quad d0 = fd(h), d1 = fd(h / 2), d2 = fd(h / 4);
    const quad r0 = (4 * d1 - d0) / 3, r1 = (4 * d2 - d1) / 3;
    return (16 * r1 - r0) / 15;
}

int even_half(double e, int gamma) {
    const double q = (e - gamma) / 2.0;
    if (q != std::round(q)) throw Error(ErrorCode::Precondition, "oracle needs exponent - gamma even");
    return static_cast<int>(q);
}

std::vector<quad> to_quad(const std::vector<double>& x) { return std::vector<quad>(x.begin(), x.end()); }

}  // namespace

double lambda_u_variable(int n, double rel_tol) {
    if (n < 2) throw Error(ErrorCode::InvalidDimension, "lambda oracle needs n >= 2");
    if (n == 2) return 1.0;
    const auto f_s = [n](double s, double z) {
        const double x = s * z;
        double p = 0.0;
        for (int k = n - 1; k >= 2; --k) p = p * x + binom(n - 1, k);
        return z * z * p / std::pow(1.0 + x, n - 1);
    };
    const double z1 = cash_karp(f_s, 0.0, 1.0, 1.0, rel_tol);
    const auto f_u = [n](double u, double z) {
        return -1.0 + std::pow(u, n - 2) * (u + (n - 1) * z) / std::pow(u + z, n - 1);
    };
    return cash_karp(f_u, 1.0, z1, 0.0, rel_tol);
}

double fd_laplacian_factor(int n, int gamma, int a, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != 2 * n) throw Error(ErrorCode::DimensionMismatch, "point must lie in R^{2n}");
    const ShiftedPoly f(gamma, {{quad(1), even_half(a, gamma)}}, to_quad(x));
    const quad lap = richardson([&](quad h) { return fd_laplacian(f, h); }, quad(1e-3));
    const ShiftedPoly lower(gamma, {{quad(1), even_half(a - 2, gamma)}}, to_quad(x));
    return static_cast<double>(lap / lower.at(0, 0, 0, 0, 0));
}

double fd_bilaplacian_residual(const RadialSolution& sol, const std::vector<double>& x, double h) {
    if (static_cast<int>(x.size()) != 2 * sol.n) throw Error(ErrorCode::DimensionMismatch, "point must lie in R^{2n}");
    std::vector<std::pair<quad, int>> terms;
    for (int i = 0; i < 2; ++i) terms.emplace_back(quad(sol.coefficient[i]), even_half(sol.exponent[i], sol.gamma));
    const ShiftedPoly f(sol.gamma, std::move(terms), to_quad(x));
    const double bilap = static_cast<double>(richardson([&](quad s) { return fd_bilaplacian(f, s); }, quad(h)));

    // |P(x)| <= r^gamma, so this bounds the size of each term of Lap^2 H
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    const double r = std::sqrt(r2);
    double scale = 0.0;
    for (int i = 0; i < 2; ++i) scale += std::abs(sol.coefficient[i]) * std::pow(r, sol.exponent[i]);
    scale /= std::pow(r, 4);
    if (scale == 0.0) return std::abs(bilap);
    return std::abs(bilap) / scale;
}

double fd_bilaplacian_sample(const RadialSolution& sol, std::uint64_t seed, int count) {
    double worst = 0.0;
    const int dim = 2 * sol.n;
    for (int c = 0; c < count; ++c) {
        CounterRng rng(seed, Stream::Properties, static_cast<std::uint64_t>(c));
        std::vector<double> x(static_cast<std::size_t>(dim));
        double norm = 0.0;
        for (double& v : x) {
            v = rng.normal();
            norm += v * v;
        }
        norm = std::sqrt(norm);
        const double r = sol.side == Side::Inner ? 0.3 + 0.7 * rng.uniform() : 1.0 + 2.0 * rng.uniform();
        for (double& v : x) v *= r / norm;
        worst = std::max(worst, fd_bilaplacian_residual(sol, x));
    }
    return worst;
}

GridVerdict kernel_grid_c2(const Eigen::MatrixXd& m, double rank_tol, int grid) {
    GridVerdict out;
    const Eigen::Index cols = m.cols();
    Eigen::MatrixXd kernel;
    if (m.rows() == 0) {
        kernel = Eigen::MatrixXd::Identity(cols, cols);
    } else {
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        int rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv[i] > rank_tol * sv[0]) ++rank;
        kernel = svd.matrixV().rightCols(cols - rank);
    }
    out.kernel_dim = static_cast<int>(kernel.cols());
    if (out.kernel_dim > 2) throw Error(ErrorCode::Precondition, "grid oracle handles kernel dimension <= 2");
    if (out.kernel_dim == 0) {
        out.margin = -INFINITY;
        return out;
    }
    if (out.kernel_dim == 1) {
        const Eigen::VectorXd v = kernel.col(0);
        out.margin = std::max(v.minCoeff(), (-v).minCoeff());
        out.positive = out.margin > 0.0;
        return out;
    }
    const auto score = [&](double th) { return (std::cos(th) * kernel.col(0) + std::sin(th) * kernel.col(1)).minCoeff(); };
    double best = -INFINITY, best_th = 0.0;
    const double step = 2.0 * std::numbers::pi / grid;
    for (int i = 0; i < grid; ++i) {
        const double s = score(i * step);
        if (s > best) {
            best = s;
            best_th = i * step;
        }
    }
    // golden-section refinement; the score is concave on the arc where it peaks
    double lo = best_th - step, hi = best_th + step;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 80; ++it) {
        const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
        if (score(a) > score(b)) hi = b;
        else lo = a;
    }
    out.margin = std::max(best, score(0.5 * (lo + hi)));
    out.positive = out.margin > 0.0;
    return out;
}

}  // namespace blowup::oracle
