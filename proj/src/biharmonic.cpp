#include "blowup/biharmonic.hpp"

#include <cmath>

#include "blowup/asymptotics.hpp"
#include "blowup/errors.hpp"

namespace blowup {

namespace {

void check_mode(int gamma, int n) {
    if (n < 2) throw Error(ErrorCode::InvalidDimension, "biharmonic modes need n >= 2");
    if (gamma < 0) throw Error(ErrorCode::Precondition, "harmonic degree must be >= 0");
}

}  // namespace

const char* to_string(Side s) { return s == Side::Inner ? "inner" : "outer"; }

double laplacian_factor(int n, int gamma, double a) { return (a - gamma) * (a + gamma + 2.0 * n - 2.0); }

double mu_factor(int gamma, int n) { return 4.0 * (gamma + n); }
double nu_factor(int gamma, int n) { return 4.0 * (2 - n - gamma); }

double RadialSolution::value(double r) const {
    return coefficient[0] * std::pow(r, exponent[0]) + coefficient[1] * std::pow(r, exponent[1]);
}

double RadialSolution::dr(double r) const {
    double out = 0.0;
    for (int i = 0; i < 2; ++i)
        if (coefficient[i] != 0.0) out += coefficient[i] * exponent[i] * std::pow(r, exponent[i] - 1.0);
    return out;
}

double RadialSolution::laplacian(double r) const {
    double out = 0.0;
    for (int i = 0; i < 2; ++i)
        out += coefficient[i] * laplacian_factor(n, gamma, exponent[i]) * std::pow(r, exponent[i] - 2.0);
    return out;
}

double RadialSolution::dlaplacian(double r) const {
    double out = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double f = coefficient[i] * laplacian_factor(n, gamma, exponent[i]);
        if (f != 0.0) out += f * (exponent[i] - 2.0) * std::pow(r, exponent[i] - 3.0);
    }
    return out;
}

bool RadialSolution::valid_at(double r) const { return side == Side::Inner ? (r > 0.0 && r <= 1.0) : r >= 1.0; }

double RadialSolution::decay_exponent() const {
    double best = -INFINITY;
    for (int i = 0; i < 2; ++i)
        if (coefficient[i] != 0.0) best = std::max(best, exponent[i]);
    return best;
}

RadialSolution inner_extension_mode(const ModeData& md) {
    check_mode(md.gamma, md.n);
    RadialSolution s;
    s.side = Side::Inner;
    s.n = md.n;
    s.gamma = md.gamma;
    s.exponent = {double(md.gamma), double(md.gamma + 2)};
    const double c2 = md.k / mu_factor(md.gamma, md.n);
    s.coefficient = {md.h - c2, c2};
    return s;
}

RadialSolution outer_extension_mode(const ModeData& md, bool allow_radial_offset) {
    check_mode(md.gamma, md.n);
    if (md.gamma == 0 && md.k != 0.0) {
        if (md.n == 2)
            throw Error(ErrorCode::MeanZeroViolation,
                        "n = 2 radial mode: the second solution is constant, so k must vanish");
        if (!allow_radial_offset)
            throw Error(ErrorCode::MeanZeroViolation, "outer extension of a radial mode needs k = 0 (mean zero)");
    }
    RadialSolution s;
    s.side = Side::Outer;
    s.n = md.n;
    s.gamma = md.gamma;
    s.exponent = {double(2 - 2 * md.n - md.gamma), double(4 - 2 * md.n - md.gamma)};
    const double nu = nu_factor(md.gamma, md.n);
    const double c2 = nu == 0.0 ? 0.0 : md.k / nu;
    s.coefficient = {md.h - c2, c2};
    return s;
}

PoissonMap poisson_map_mode(int gamma, int n, bool unrestricted_radial) {
    check_mode(gamma, n);
    PoissonMap p;
    p.gamma = gamma;
    p.n = n;
    const double diag = 2.0 - 2.0 * n - 2.0 * gamma;
    if (gamma == 0 && (!unrestricted_radial || n == 2)) {
        p.restricted = true;
        p.matrix = Eigen::MatrixXd::Constant(1, 1, diag);
    } else {
        // columns: images of (1, 0) and (0, 1), assembled from the extensions
        p.matrix.resize(2, 2);
        for (int col = 0; col < 2; ++col) {
            const ModeData md{gamma, n, col == 0 ? 1.0 : 0.0, col == 1 ? 1.0 : 0.0};
            const RadialSolution in = inner_extension_mode(md);
            const RadialSolution out = outer_extension_mode(md, true);
            p.matrix(0, col) = out.dr(1.0) - in.dr(1.0);
            p.matrix(1, col) = out.dlaplacian(1.0) - in.dlaplacian(1.0);
        }
    }
    p.determinant = p.matrix.determinant();
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(p.matrix);
    const auto& sv = svd.singularValues();
    p.condition = sv[sv.size() - 1] > 0.0 ? sv[0] / sv[sv.size() - 1] : INFINITY;
    return p;
}

Jumps jumps_of(const RadialSolution& outer, const RadialSolution& inner) {
    return {outer.value(1.0) - inner.value(1.0), outer.dr(1.0) - inner.dr(1.0),
            outer.laplacian(1.0) - inner.laplacian(1.0), outer.dlaplacian(1.0) - inner.dlaplacian(1.0)};
}

MatchedData match_mode(int gamma, int n, const Jumps& j) {
    check_mode(gamma, n);
    const bool radial_n2 = gamma == 0 && n == 2;
    const PoissonMap p = poisson_map_mode(gamma, n, !radial_n2);
    // inner data = outer data + (value, Laplacian) jumps; the inner extension
    // of the jumps feeds the derivative conditions
    const RadialSolution shift = inner_extension_mode({gamma, n, j.h, j.lap});
    const double r1 = shift.dr(1.0) - j.dh;
    const double r2 = shift.dlaplacian(1.0) - j.dlap;

    MatchedData m;
    m.outer = {gamma, n, 0.0, 0.0};
    if (p.restricted) {
        if (std::abs(r2) > 1e-12 * (1.0 + std::abs(j.lap) + std::abs(j.dlap)))
            throw Error(ErrorCode::SingularMap,
                        "radial n = 2 mode: Laplacian-derivative jump cannot be matched without logarithms");
        m.outer.h = r1 / p.matrix(0, 0);
    } else {
        if (!(std::abs(p.determinant) > 1e-14))
            throw Error(ErrorCode::SingularMap, "Cauchy-data map is singular at gamma = " + std::to_string(gamma) +
                                                    ", n = " + std::to_string(n));
        const Eigen::Vector2d sol = p.matrix.partialPivLu().solve(Eigen::Vector2d(r1, r2));
        m.outer.h = sol[0];
        m.outer.k = sol[1];
    }
    m.inner = {gamma, n, m.outer.h + j.h, m.outer.k + j.lap};
    return m;
}

Reparameterization reparameterize(double a, double a_tilde, double eps, int n) {
    if (n < 2) throw Error(ErrorCode::InvalidDimension, "reparameterize needs n >= 2");
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::OutOfDomain, "reparameterize needs 0 < eps < 1");
    const double diff = a_tilde - a;
    if (n == 2) return {0.0, 4.0 * diff * eps * eps};
    const double r = glue_radii(eps, n).r;
    const double h = diff * std::pow(r, 4 - 2 * n) * std::pow(eps, 2 * n - 2);
    return {h, 2.0 * (4 - 2 * n) * h};
}

}  // namespace blowup
