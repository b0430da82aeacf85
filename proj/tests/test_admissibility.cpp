#include <cmath>
#include <numbers>

#include "helpers.hpp"

#include "blowup/admissibility.hpp"
#include "blowup/catalog.hpp"
#include "blowup/simplex.hpp"

using namespace blowup;

TEST_CASE("rank_c1") {
    CHECK(rank_c1(Eigen::MatrixXd::Zero(3, 4)) == 0);
    for (int n = 2; n <= 6; ++n) CHECK(example_catalog(1, {n, 0, 0}).report.c1 == n);
    CHECK(example_catalog(6).report.c1 == 3);
    Eigen::MatrixXd m(2, 3);
    m << 1, 2, 3, 2, 4, 6 + 1e-12;
    CHECK(rank_c1(m) == 1);
    CHECK(rank_c1(m, 1e-14) == 2);
}

TEST_CASE("positive_kernel_c2 on small matrices") {
    Eigen::MatrixXd a(1, 2);
    a << 1, -1;
    PositiveKernel r = positive_kernel_c2(a);
    CHECK(r.status == C2Status::Positive);
    REQUIRE(r.witness);
    CHECK((*r.witness)[0] == doctest::Approx(0.5));
    CHECK((*r.witness)[1] == doctest::Approx(0.5));
    CHECK(r.margin == doctest::Approx(0.5));

    a << 1, 1;
    r = positive_kernel_c2(a);
    CHECK_FALSE(r.positive);
    CHECK(r.margin <= 0.0);

    // kernel only touches the boundary of the cone
    Eigen::MatrixXd b(1, 2);
    b << 1, 0;
    CHECK(positive_kernel_c2(b).status == C2Status::Marginal);

    // full column rank: only the zero vector, which cannot sum to 1
    const PositiveKernel inf = positive_kernel_c2(Eigen::MatrixXd::Identity(2, 2));
    CHECK(inf.status == C2Status::Infeasible);
    CHECK(std::isinf(inf.margin));
}

TEST_CASE("simplex on a textbook problem") {
    // max x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
    Eigen::MatrixXd A(2, 4);
    A << 1, 2, 1, 0, 3, 1, 0, 1;
    Eigen::VectorXd b(2), c(4);
    b << 4, 6;
    c << 1, 1, 0, 0;
    const LpResult r = solve_standard_form(A, b, c);
    CHECK(r.status == LpStatus::Optimal);
    CHECK(r.objective == doctest::Approx(2.8));
    CHECK(r.x[0] == doctest::Approx(1.6));
    CHECK(r.x[1] == doctest::Approx(1.2));
}

TEST_CASE("c_n and a_0") {
    CHECK(cn_constant(2) == doctest::Approx(4 * std::pow(std::numbers::pi, 2)).epsilon(1e-15));
    CHECK(cn_constant(3) == doctest::Approx(8 * std::pow(std::numbers::pi, 3)).epsilon(1e-15));
    // 4 * 2 * 3 * 2 pi^4 / 3!
    CHECK(cn_constant(4) == doctest::Approx(8 * std::pow(std::numbers::pi, 4)).epsilon(1e-15));
    const Coefficients c = coefficients(Eigen::Vector2d(1.0, 1.0), 2);
    CHECK(c.a0 == doctest::Approx(8 * std::pow(std::numbers::pi, 2)).epsilon(1e-15));
    CHECK_ERROR_CODE(cn_constant(1), ErrorCode::InvalidDimension);
    CHECK_ERROR_CODE(coefficients(Eigen::Vector2d(1.0, -1.0), 3), ErrorCode::Precondition);
}

TEST_CASE("build_matrix") {
    const KernelBasis b = pn_kernel_basis(2);
    const ProjectivePoint p{1.0, 2.0, Complex(0.0, 1.0)};
    const AdmissibilityMatrix m = build_matrix(b, {p, p});
    CHECK(m.d() == 8);
    CHECK(m.m() == 2);
    CHECK((m.entries.col(0) - m.entries.col(1)).norm() == 0.0);
    CHECK_ERROR_CODE(build_matrix(b, {}), ErrorCode::Precondition);
}

TEST_CASE("check: Example 1 and Example 4") {
    for (int n = 2; n <= 6; ++n) {
        const CatalogEntry e = example_catalog(1, {n, 0, 0});
        CHECK(e.report.verdict);
        REQUIRE(e.report.witness);
        for (Eigen::Index i = 0; i < e.report.witness->size(); ++i)
            CHECK((*e.report.witness)[i] == doctest::Approx(1.0 / (n + 1)).epsilon(1e-12));
        CHECK(e.report.residual < 1e-12);
        REQUIRE(e.report.a0);
        CHECK(*e.report.a0 == doctest::Approx(cn_constant(n)));
    }
    for (int n = 2; n <= 5; ++n) {
        CHECK(example_catalog(4, {n, static_cast<double>(n), 0}).report.verdict);
        CHECK_FALSE(example_catalog(4, {n, (n - 1) / 4.0, 0}).report.verdict);
    }
}

TEST_CASE("equivariant check") {
    for (int n = 2; n <= 4; ++n) {
        const ModelManifold m = ModelManifold::projective_space(n);
        const SymmetryGroup perms = SymmetryGroup::coordinate_permutations(m);
        Eigen::VectorXcd p1 = Eigen::VectorXcd::Ones(n + 1), p2 = p1;
        p2[n] = -static_cast<double>(n);
        const EquivariantReport r =
            equivariant_check(pn_kernel_basis(n), perms, {ProjectivePoint(p1), ProjectivePoint(p2)});
        CHECK(r.orbit_sizes == std::vector<std::size_t>{1, static_cast<std::size_t>(n + 1)});
        CHECK(r.reduced.verdict);
        CHECK(r.full.c2_positive);
        CHECK(r.consistent);
        CHECK_ERROR_CODE(equivariant_check(pn_kernel_basis(n), perms, {ProjectivePoint(p2), ProjectivePoint(p2)}),
                         ErrorCode::OverlappingOrbits);
    }
    const CatalogEntry e5 = example_catalog(5);
    REQUIRE(e5.equivariant);
    CHECK(e5.equivariant->reduced.verdict);
    CHECK(e5.report.matrix.rows() == 1);
    CHECK(e5.report.matrix(0, 0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(e5.report.matrix(0, 1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("witness validity under random instances") {
    CounterRng rng(21);
    int positives = 0;
    for (int t = 0; t < 200; ++t) {
        const KernelBasis b = pn_kernel_basis(1 + t % 2);
        std::vector<ConfigPoint> pts;
        const int m = static_cast<int>(b.size()) + 1 + t % 5;
        for (int i = 0; i < m; ++i) pts.push_back(random_config_point(b.manifold(), rng));
        const AdmissibilityReport r = check(b, pts);
        if (!r.c2_positive) continue;
        ++positives;
        REQUIRE(r.witness);
        CHECK(r.witness->sum() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.witness->minCoeff() >= r.margin - 1e-12);
        CHECK((r.matrix * *r.witness).cwiseAbs().maxCoeff() < 1e-9 * (1.0 + r.matrix.norm()));
    }
    CHECK(positives > 10);
}

TEST_CASE("single-row scaling keeps the verdict") {
    const CatalogEntry e = example_catalog(6);
    Eigen::MatrixXd m = e.report.matrix;
    m.row(1) *= -7.5;
    const AdmissibilityReport r = check_matrix(m, 3, 3);
    CHECK(r.verdict == e.report.verdict);
    CHECK(r.c1 == e.report.c1);
    REQUIRE(r.witness);
    CHECK((*r.witness - *e.report.witness).cwiseAbs().maxCoeff() < 1e-12);
}
