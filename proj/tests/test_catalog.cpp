#include <cmath>

#include "helpers.hpp"

#include "blowup/catalog.hpp"

using namespace blowup;

TEST_CASE("Example 1 matrix is bidiagonal") {
    for (int n = 2; n <= 6; ++n) {
        const CatalogEntry e = example_catalog(1, {n, 0, 0});
        CHECK(e.diff.matrix_match == MatrixMatch::Exact);
        CHECK(e.diff.rank_match);
        CHECK(e.diff.verdict_match);
        const Eigen::MatrixXd& m = e.report.matrix;
        REQUIRE(m.rows() == n);
        REQUIRE(m.cols() == n + 1);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c <= n; ++c) CHECK(m(r, c) == (c == r ? 1.0 : c == r + 1 ? -1.0 : 0.0));
    }
}

TEST_CASE("Example 3 points balance every kernel function") {
    for (int n = 2; n <= 3; ++n) {
        const auto pts = example3_points(n, 0.8, 0.6);
        CHECK(pts.size() == static_cast<std::size_t>(2 * n * (n + 1)));
        const KernelBasis b = pn_kernel_basis(n);
        Eigen::VectorXd total = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(b.size()));
        for (const auto& p : pts) total += evaluate(b, p);
        CHECK(total.cwiseAbs().maxCoeff() < 1e-12);
        const CatalogEntry e = example_catalog(3, {n, 0.8, 0.6});
        CHECK(e.report.verdict);
        REQUIRE(e.report.witness);
        CHECK(e.report.witness->minCoeff() > 0.0);
    }
    CHECK_ERROR_CODE(example3_points(2, std::sqrt(0.5), std::sqrt(0.5)), ErrorCode::OutOfDomain);
    CHECK_ERROR_CODE(example3_points(2, 0.5, 0.5), ErrorCode::OutOfDomain);
}

TEST_CASE("Example 4 threshold") {
    for (int n = 2; n <= 5; ++n) {
        CHECK(std::abs(example4_threshold(n) - (n - 1) / 2.0) < 1e-6);
        CHECK(example4_margin(n, (n - 1) / 2.0 + 0.1) > 0.0);
        CHECK(example4_margin(n, (n - 1) / 2.0 - 0.1) < 0.0);
    }
    const Eigen::MatrixXd m = example4_matrix(2, 1.0);
    CHECK(m(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m(0, 1) == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
    CHECK(example_catalog(4).report.verdict);
}

TEST_CASE("Example 5") {
    const CatalogEntry e = example_catalog(5);
    CHECK(e.diff.matrix_match == MatrixMatch::Exact);
    CHECK(e.report.verdict);
    CHECK(e.config.manifold().factor_count() == 2);
}

TEST_CASE("Example 6 differs from the displayed matrix") {
    const CatalogEntry e = example_catalog(6);
    CHECK(e.report.c1 == 3);
    CHECK(e.report.c2_positive);
    REQUIRE(e.diff.witness_error);
    CHECK(*e.diff.witness_error < 1e-8);
    REQUIRE(e.report.witness);
    const Eigen::VectorXd w = *e.report.witness / (*e.report.witness)[0];
    CHECK(w[3] == doctest::Approx(5.0 / 3.0).epsilon(1e-10));
    CHECK(e.diff.matrix_match == MatrixMatch::Mismatch);
    CHECK(e.diff.differing_entries.size() == 2);
    for (const auto& [r, c] : e.diff.differing_entries) CHECK(r == 0);
}

TEST_CASE("Example 2 range is above 1/sqrt(2)") {
    const double edge = 1.0 / std::sqrt(2.0);
    for (int n = 2; n <= 4; ++n) {
        CHECK(std::abs(example2_boundary(n) - edge) < 1e-6);
        CHECK(example2_margin(n, 0.6) <= 0.0);
        CHECK(example2_margin(n, 0.8) > 0.0);
    }
    const CatalogEntry e = example_catalog(2);
    CHECK_FALSE(e.notes.empty());
}

TEST_CASE("compare_matrices") {
    Eigen::MatrixXd a(2, 2), b(2, 2);
    a << 1, -1, 0, 2;
    b << -1, 1, 0, 2;
    std::vector<std::pair<int, int>> diff;
    CHECK(compare_matrices(a, a) == MatrixMatch::Exact);
    CHECK(compare_matrices(a, b, &diff) == MatrixMatch::UpToSigns);
    b(1, 1) = 3;
    CHECK(compare_matrices(a, b, &diff) == MatrixMatch::Mismatch);
}

TEST_CASE("unknown example") {
    CHECK_ERROR_CODE(example_catalog(7), ErrorCode::UnknownExample);
    CHECK_ERROR_CODE(example_catalog(2, {3, 0.5, 0.5}), ErrorCode::OutOfDomain);
}
