#include "helpers.hpp"

#include "blowup/catalog.hpp"
#include "blowup/point_search.hpp"

using namespace blowup;

TEST_CASE("random_rank_search") {
    const KernelBasis p1 = pn_kernel_basis(1);
    int worst = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Configuration c = random_rank_search(p1, 3, seed);
        CHECK(rank_c1(build_matrix(p1, c.points).entries) == 3);
        worst = std::max(worst, c.tries);
    }
    CHECK(worst <= 3);

    const KernelBasis big = product_kernel_basis(ModelManifold({Factor::projective(2), Factor::projective(1)}));
    CHECK(random_rank_search(big, 11, 4).m() == 11);

    CHECK_ERROR_CODE(random_rank_search(p1, 2, 1), ErrorCode::Precondition);

    const Configuration a = random_rank_search(p1, 5, 77), b = random_rank_search(p1, 5, 77);
    for (std::size_t i = 0; i < a.m(); ++i) CHECK(a.points[i].projective(0).coords() == b.points[i].projective(0).coords());
}

TEST_CASE("cover_construct on the reduced P^1 basis") {
    const SymmetryGroup flips = SymmetryGroup::sign_flips(ModelManifold::projective_space(1));
    const KernelBasis reduced = invariant_subbasis(pn_kernel_basis(1), flips);
    REQUIRE(reduced.size() == 1);
    const CoverResult r = cover_construct(reduced);
    CHECK(r.report.verdict);
    CHECK(r.config.m() == 2);
    // near the coordinate points, where the single function is +1 and -1
    CHECK(std::abs(r.report.matrix(0, 0)) > 0.99);
    CHECK(r.report.matrix(0, 0) * r.report.matrix(0, 1) < -0.98);
    CHECK(cover_failures(reduced, r.config.points, r.net).empty());
}

TEST_CASE("cover_construct on the full P^1 basis") {
    const KernelBasis b = pn_kernel_basis(1);
    const CoverResult r = cover_construct(b);
    CHECK(r.report.verdict);
    CHECK(r.config.m() >= 4);
    CHECK(cover_failures(b, r.config.points, r.net).empty());
    CHECK(min_pairwise_distance(r.config.points) > 1e-8);
}

TEST_CASE("cover_construct reports a partial cover") {
    CoverOptions o;
    o.net_angle = 0.3;
    o.probe_size = 2;
    o.max_refinements = 0;
    CHECK_ERROR_CODE(cover_construct(pn_kernel_basis(2), o), ErrorCode::PartialCover);
}

TEST_CASE("adjoin_point") {
    for (int n = 2; n <= 4; ++n) {
        const CatalogEntry e = example_catalog(1, {n, 0, 0});
        CounterRng rng(5, Stream::Adjoin, static_cast<std::uint64_t>(n));
        const AdjoinResult a = adjoin_point(e.config, e.report, random_config_point(e.config.manifold(), rng));
        CHECK(a.report.verdict);
        CHECK(a.config.m() == static_cast<std::size_t>(n + 2));
        CHECK(a.constructed_witness.minCoeff() > 0.0);
        CHECK_ERROR_CODE(adjoin_point(e.config, e.report, e.config.points[0]), ErrorCode::Precondition);
    }
    const CatalogEntry e5 = example_catalog(5);
    const ConfigPoint q({ProjectivePoint{0.3, Complex(0.2, -1.0)}, RigidPoint{"z"}});
    CHECK(adjoin_point(e5.config, e5.report, q).report.verdict);
}

TEST_CASE("m0_estimate") {
    SUBCASE("Example 3 seeding for P^2") {
        M0Options o;
        o.trials = 0;
        o.use_cover = false;
        o.seeds = {example3_points(2, 0.8, 0.6)};
        const M0Result r = m0_estimate(pn_kernel_basis(2), o);
        CHECK(r.m <= 12);
        CHECK(r.m >= 9);
        CHECK(r.report.verdict);
    }
    SUBCASE("random restarts never go below d + 1") {
        for (int n = 1; n <= 2; ++n) {
            M0Options o;
            o.trials = 3;
            o.use_cover = false;
            o.seed = 9;
            const KernelBasis b = pn_kernel_basis(n);
            const M0Result r = m0_estimate(b, o);
            CHECK(r.m >= static_cast<int>(b.size()) + 1);
            CHECK(check(b, r.config.points).verdict);
        }
    }
    SUBCASE("reduced P^1 gives m = 2") {
        const SymmetryGroup flips = SymmetryGroup::sign_flips(ModelManifold::projective_space(1));
        M0Options o;
        o.trials = 1;
        CHECK(m0_estimate(invariant_subbasis(pn_kernel_basis(1), flips), o).m == 2);
    }
    SUBCASE("empty budget") {
        M0Options o;
        o.trials = 0;
        o.use_cover = false;
        CHECK_ERROR_CODE(m0_estimate(pn_kernel_basis(1), o), ErrorCode::Precondition);
    }
}
