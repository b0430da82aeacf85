#include <cmath>

#include "helpers.hpp"

#include "blowup/asymptotics.hpp"
#include "blowup/biharmonic.hpp"
#include "blowup/oracles.hpp"

using namespace blowup;

namespace {

// generic point of R^{2n} with |x| = r, away from the nodal sets of Re((x1 + i x2)^gamma)
std::vector<double> point(int n, double r) {
    std::vector<double> x(static_cast<std::size_t>(2 * n));
    double norm = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = (i % 2 == 0 ? 1.0 : -1.0) * (0.37 + 0.11 * static_cast<double>(i));
        norm += x[i] * x[i];
    }
    for (double& v : x) v *= r / std::sqrt(norm);
    return x;
}

}  // namespace

TEST_CASE("Laplacian factors against finite differences") {
    for (int n = 2; n <= 5; ++n)
        for (int gamma = 0; gamma <= 6; ++gamma) {
            const double mu = oracle::fd_laplacian_factor(n, gamma, gamma + 2, point(n, 0.7));
            CHECK(mu == doctest::Approx(mu_factor(gamma, n)).epsilon(1e-9));
            CHECK(mu_factor(gamma, n) == 4.0 * (gamma + n));
            const double nu = oracle::fd_laplacian_factor(n, gamma, 4 - 2 * n - gamma, point(n, 1.3));
            CHECK(nu == doctest::Approx(nu_factor(gamma, n)).epsilon(1e-9));
            CHECK(laplacian_factor(n, gamma, gamma) == 0.0);
            CHECK(laplacian_factor(n, gamma, 2 - 2 * n - gamma) == 0.0);
        }
}

TEST_CASE("inner extensions") {
    const RadialSolution one = inner_extension_mode({0, 3, 1.0, 0.0});
    for (double r : {0.0, 0.3, 1.0}) CHECK(one.value(r) == doctest::Approx(1.0));
    const RadialSolution zero = inner_extension_mode({0, 3, 0.0, 0.0});
    CHECK(zero.value(0.5) == 0.0);

    const RadialSolution s = inner_extension_mode({1, 2, 0.0, 1.0});
    const double mu1 = oracle::fd_laplacian_factor(2, 1, 3, point(2, 0.8));
    CHECK(s.coefficient[0] + s.coefficient[1] == doctest::Approx(0.0).scale(1e-15));
    CHECK(mu1 * s.coefficient[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.valid_at(0.5));
    CHECK_FALSE(s.valid_at(1.5));
}

TEST_CASE("outer extensions") {
    const RadialSolution s = outer_extension_mode({0, 3, 1.0, 0.0});
    for (double r : {1.0, 2.0, 5.0}) CHECK(s.value(r) == doctest::Approx(std::pow(r, -4.0)));
    CHECK(s.laplacian(2.0) == doctest::Approx(0.0).scale(1e-14));
    CHECK_ERROR_CODE(outer_extension_mode({0, 3, 1.0, 0.1}), ErrorCode::MeanZeroViolation);
    CHECK_ERROR_CODE(outer_extension_mode({0, 2, 1.0, 0.1}, true), ErrorCode::MeanZeroViolation);
    CHECK(outer_extension_mode({0, 3, 1.0, 0.1}, true).value(1.0) == doctest::Approx(1.0));

    // k = 0 leaves only the harmonic r^{2-2n-gamma}; k != 0 decays exactly like r^{3-2n}
    CHECK(outer_extension_mode({1, 2, 1.0, 0.0}).decay_exponent() == -3.0);
    CHECK(outer_extension_mode({1, 2, 1.0, 1.0}).decay_exponent() == -1.0);
    for (int n = 2; n <= 5; ++n)
        for (int gamma = 1; gamma <= 5; ++gamma) {
            const RadialSolution o = outer_extension_mode({gamma, n, 0.3, -1.1});
            CHECK(o.decay_exponent() <= 3 - 2 * n);
            double c = 0.0;
            for (double r = 1.0; r < 100.0; r *= 1.5) c = std::max(c, std::abs(o.value(r)) / std::pow(r, 3 - 2 * n));
            CHECK(std::abs(o.value(1e3)) <= c * std::pow(1e3, 3 - 2 * n));
        }
}

TEST_CASE("traces, linearity and biharmonicity") {
    CounterRng rng(13);
    for (int n = 2; n <= 5; ++n)
        for (int gamma = 0; gamma <= 8; ++gamma) {
            const ModeData a{gamma, n, rng.normal(), rng.normal()}, b{gamma, n, rng.normal(), rng.normal()};
            const RadialSolution sa = inner_extension_mode(a), sb = inner_extension_mode(b);
            CHECK(sa.value(1.0) == doctest::Approx(a.h).epsilon(1e-10));
            CHECK(sa.laplacian(1.0) == doctest::Approx(a.k).epsilon(1e-10));
            const double x = 0.7, y = -2.2;
            const RadialSolution sc = inner_extension_mode({gamma, n, x * a.h + y * b.h, x * a.k + y * b.k});
            for (int i = 0; i < 2; ++i)
                CHECK(sc.coefficient[i] ==
                      doctest::Approx(x * sa.coefficient[i] + y * sb.coefficient[i]).epsilon(1e-12).scale(1.0));
            CHECK(oracle::fd_bilaplacian_sample(sa, 100 * n + gamma) < 1e-6);

            const ModeData oa{gamma, n, a.h, gamma == 0 ? 0.0 : a.k};
            const RadialSolution so = outer_extension_mode(oa);
            CHECK(so.value(1.0) == doctest::Approx(oa.h).epsilon(1e-10));
            CHECK(so.laplacian(1.0) == doctest::Approx(oa.k).epsilon(1e-10).scale(1.0));
            CHECK(oracle::fd_bilaplacian_sample(so, 100 * n + gamma + 50) < 1e-6);
        }
}

TEST_CASE("Cauchy-data map") {
    CHECK(std::abs(poisson_map_mode(1, 2).determinant) > 1e-6);
    double min_det = INFINITY;
    for (int n = 2; n <= 5; ++n)
        for (int gamma = 0; gamma <= 20; ++gamma) {
            const PoissonMap p = poisson_map_mode(gamma, n);
            min_det = std::min(min_det, std::abs(p.determinant));
            CHECK(p.restricted == (gamma == 0));
            CHECK(p.matrix.rows() == (gamma == 0 ? 1 : 2));
            CHECK((p.matrix * Eigen::VectorXd::Zero(p.matrix.cols())).norm() == 0.0);
            CHECK(std::isfinite(p.condition));
        }
    CHECK(min_det > 1e-8);
    CHECK(poisson_map_mode(0, 3).matrix(0, 0) == doctest::Approx(-4.0));
    CHECK(poisson_map_mode(0, 3, true).matrix.rows() == 2);
}

TEST_CASE("match_mode") {
    const MatchedData z = match_mode(3, 4, {});
    CHECK(z.inner.h == 0.0);
    CHECK(z.inner.k == 0.0);
    CHECK(z.outer.h == 0.0);
    CHECK(z.outer.k == 0.0);

    CounterRng rng(17);
    for (int n = 2; n <= 5; ++n)
        for (int gamma = 0; gamma <= 10; ++gamma) {
            const ModeData out{gamma, n, rng.normal(), gamma == 0 && n == 2 ? 0.0 : rng.normal()};
            const ModeData in{gamma, n, rng.normal(), rng.normal()};
            Jumps j = jumps_of(outer_extension_mode(out, true), inner_extension_mode(in));
            j = {-j.h, -j.dh, -j.lap, -j.dlap};
            const MatchedData m = match_mode(gamma, n, j);
            CHECK(m.outer.h == doctest::Approx(out.h).epsilon(1e-10).scale(1.0));
            CHECK(m.outer.k == doctest::Approx(out.k).epsilon(1e-10).scale(1.0));
            CHECK(m.inner.h == doctest::Approx(in.h).epsilon(1e-10).scale(1.0));
            CHECK(m.inner.k == doctest::Approx(in.k).epsilon(1e-10).scale(1.0));
        }

    // radial mode in R^4: the matching cannot absorb a jump in d/dr Lap
    CHECK_ERROR_CODE(match_mode(0, 2, {0.0, 0.0, 0.0, 1.0}), ErrorCode::SingularMap);
}

TEST_CASE("reparameterization offsets") {
    const Reparameterization none = reparameterize(0.4, 0.4, 1e-2, 3);
    CHECK(none.h_offset == 0.0);
    CHECK(none.k_offset == 0.0);

    const double eps = 1e-2;
    const Reparameterization r = reparameterize(0.0, 1.0, eps, 3);
    // eps^4 r_eps^{-2} = eps^{18/7}
    CHECK(Rational(4) - 2 * r_exponent(3) == Rational(18, 7));
    CHECK(r.h_offset == doctest::Approx(std::pow(eps, 18.0 / 7.0)).epsilon(1e-12));
    for (int n = 3; n <= 6; ++n) {
        const Reparameterization q = reparameterize(0.2, 1.3, 0.05, n);
        CHECK(q.k_offset / q.h_offset == doctest::Approx(2.0 * (4 - 2 * n)));
    }
    CHECK(reparameterize(0.0, 1.0, eps, 2).k_offset == doctest::Approx(4 * eps * eps));
}

TEST_CASE("radial matching reproduces the reparameterization") {
    const double eps = 1e-2, diff = 0.37;
    for (int n = 3; n <= 5; ++n) {
        const double c = std::pow(eps, 2 * n - 2) * std::pow(glue_radii(eps, n).r, 4 - 2 * n);
        const double e = 4 - 2 * n;
        // (model part) - (base part) of the leading radial terms, scaled to r = 1
        const Jumps j{-diff * c, -diff * c * e, -diff * c * 2 * e, -diff * c * 2 * e * (2 - 2 * n)};
        const MatchedData m = match_mode(0, n, j);
        const Reparameterization rp = reparameterize(0.0, diff, eps, n);
        CHECK(m.outer.h == doctest::Approx(rp.h_offset).epsilon(1e-10));
        CHECK(m.outer.k == doctest::Approx(rp.k_offset).epsilon(1e-10));
        CHECK(std::abs(m.inner.h) < 1e-10 * c);
    }
}
