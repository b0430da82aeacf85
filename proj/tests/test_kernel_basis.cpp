#include <cmath>
#include <numbers>

#include "helpers.hpp"

#include "blowup/catalog.hpp"
#include "blowup/kernel_basis.hpp"

using namespace blowup;

namespace {

Eigen::VectorXcd random_unit(int n, CounterRng& rng) { return random_projective_point(n, rng).coords(); }

}  // namespace

TEST_CASE("pn_kernel_basis dimension and ordering") {
    for (int n = 1; n <= 6; ++n) CHECK(pn_kernel_basis(n).size() == static_cast<std::size_t>(n * n + 2 * n));
    const KernelBasis b = pn_kernel_basis(1);
    CHECK(b.labels() == std::vector<std::string>{"xi_12", "xihat_12", "xitilde_1"});
    CHECK_ERROR_CODE(pn_kernel_basis(0), ErrorCode::InvalidDimension);
}

TEST_CASE("kernel functions at special points") {
    const KernelBasis b = pn_kernel_basis(3);
    const Eigen::VectorXd v = evaluate(b, ProjectivePoint{1.0, 0.0, 0.0, 0.0});
    for (std::size_t j = 0; j < b.size(); ++j) {
        const double expected = b[j].label == "xitilde_1" ? 1.0 : 0.0;
        CHECK(std::abs(v[static_cast<Eigen::Index>(j)] - expected) < 1e-15);
    }

    const KernelBasis p1 = pn_kernel_basis(1);
    const Complex i(0.0, 1.0);
    CHECK(p1[1](ProjectivePoint{i, 1.0}) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(p1[1](ProjectivePoint{1.0, i}) == doctest::Approx(1.0).epsilon(1e-14));

    const Eigen::VectorXd p2 = evaluate(pn_kernel_basis(2), ProjectivePoint{1.0, 0.0, 0.0});
    CHECK(p2[6] == doctest::Approx(1.0));
    CHECK(p2[7] == doctest::Approx(0.0));
}

TEST_CASE("permutation-invariant function on the Example 4 points") {
    for (int n = 2; n <= 5; ++n) {
        const KernelFunction f = permutation_invariant_function(n);
        Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(n + 1);
        CHECK(f.evaluate(ones.normalized()) == doctest::Approx(n).epsilon(1e-13));
        for (double alpha : {0.3, 1.0, 2.5}) {
            Eigen::VectorXcd z = ones;
            z[n] = -alpha;
            CHECK(f.evaluate(z.normalized()) ==
                  doctest::Approx(n * (n - 1 - 2 * alpha) / (n + alpha * alpha)).epsilon(1e-13));
        }
    }
}

TEST_CASE("phase invariance per factor") {
    const ModelManifold m({Factor::projective(1), Factor::projective(2)});
    const KernelBasis b = product_kernel_basis(m);
    CounterRng rng(7);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const ConfigPoint p = random_config_point(m, rng);
        const Complex u1 = std::polar(1.0, 2 * std::numbers::pi * rng.uniform());
        const Complex u2 = std::polar(1.0, 2 * std::numbers::pi * rng.uniform());
        const ConfigPoint q({ProjectivePoint(Eigen::VectorXcd(u1 * p.projective(0).coords())),
                             ProjectivePoint(Eigen::VectorXcd(u2 * p.projective(1).coords()))});
        worst = std::max(worst, (evaluate(b, p) - evaluate(b, q)).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("product bases") {
    CHECK(product_kernel_basis(ModelManifold({Factor::projective(1), Factor::projective(2)})).size() == 11);
    CHECK(product_kernel_basis(ModelManifold({Factor::projective(1), Factor::projective(1)})).size() == 6);

    const ModelManifold pr({Factor::projective(1), Factor::rigid()});
    const KernelBasis b = product_kernel_basis(pr);
    REQUIRE(b.size() == 3);
    const ConfigPoint a({ProjectivePoint{1.0, 2.0}, RigidPoint{"p"}});
    const ConfigPoint c({ProjectivePoint{1.0, 2.0}, RigidPoint{"q"}});
    CHECK((evaluate(b, a) - evaluate(b, c)).norm() == 0.0);

    CHECK_ERROR_CODE(product_kernel_basis(ModelManifold({Factor::rigid()})), ErrorCode::EmptyKernel);
    CHECK_ERROR_CODE(evaluate(pn_kernel_basis(2), ProjectivePoint{1.0, 0.0}), ErrorCode::DimensionMismatch);
}

TEST_CASE("invariant sub-bases") {
    for (int n = 1; n <= 4; ++n) {
        const ModelManifold m = ModelManifold::projective_space(n);
        const KernelBasis full = pn_kernel_basis(n);
        const SymmetryGroup flips = SymmetryGroup::sign_flips(m);
        const KernelBasis inv = invariant_subbasis(full, flips);
        CHECK(inv.size() == static_cast<std::size_t>(n));
        CHECK(invariant_subbasis(inv, flips).size() == inv.size());

        const SymmetryGroup perms = SymmetryGroup::coordinate_permutations(m);
        CHECK(invariant_subbasis(full, perms).size() == 1);

        const KernelBasis sym = invariant_subbasis(full, perms);
        CounterRng rng(11 + n);
        double worst = 0.0;
        for (int t = 0; t < 50; ++t) {
            const ConfigPoint p = random_config_point(m, rng);
            for (const auto& g : perms.elements()) {
                const ConfigPoint gp = perms.act(g, p);
                for (const auto& f : sym.functions()) worst = std::max(worst, std::abs(f(gp) - f(p)));
            }
        }
        CHECK(worst < 1e-10);
    }

    const SymmetryGroup g = example5_group();
    const KernelBasis reduced = invariant_subbasis(product_kernel_basis(g.manifold()), g);
    REQUIRE(reduced.size() == 1);
    // spanned by xihat_12: xi_12 and xitilde_1 vanish on it
    const ConfigPoint a({ProjectivePoint{1.0, 1.0}, RigidPoint{"p"}});
    const ConfigPoint b({ProjectivePoint{1.0, 0.0}, RigidPoint{"p"}});
    CHECK(std::abs(reduced[0](a)) < 1e-12);
    CHECK(std::abs(reduced[0](b)) < 1e-12);
}

TEST_CASE("group validation") {
    const ModelManifold m = ModelManifold::projective_space(1);
    GroupElement swap{{SignedPermutation{{1, 0}, {1.0, -1.0}}}};
    CHECK_ERROR_CODE(SymmetryGroup::from_elements(m, {swap}), ErrorCode::NotAGroup);
    const SymmetryGroup g = SymmetryGroup::generated_by(m, {swap});
    CHECK(g.size() == 4);
}

TEST_CASE("Monte Carlo means") {
    const auto est = mean_zero_check(pn_kernel_basis(2), 100000, 5);
    for (const auto& e : est) CHECK(std::abs(e.mean) <= 3.0 * e.standard_error);

    const ModelManifold m = ModelManifold::projective_space(1);
    const KernelFunction one{0, Eigen::MatrixXcd::Identity(2, 2), "one"};
    const auto c = mean_zero_check(m, std::span<const KernelFunction>(&one, 1), 2000, 5);
    CHECK(c[0].mean == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(mean_zero_check(pn_kernel_basis(1), 4000, 9)[0].mean == mean_zero_check(pn_kernel_basis(1), 4000, 9)[0].mean);
    CHECK_ERROR_CODE(mean_zero_check(pn_kernel_basis(1), 10, 1), ErrorCode::Precondition);
}

TEST_CASE("sphere Laplacian eigenvalue 4(n+1)") {
    CounterRng rng(3);
    for (int n = 1; n <= 3; ++n) {
        const KernelBasis b = pn_kernel_basis(n);
        for (std::size_t j = 0; j < b.size(); ++j) CHECK(laplace_eigen_check(n, j, random_unit(n, rng), 1e-3) < 1e-4);
    }
    // |z_1|^2 has a constant part, so it is not an eigenfunction for 4(n+1)
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2, 2);
    h(0, 0) = 1.0;
    const KernelFunction probe{0, h, "|z1|^2"};
    CHECK(laplace_eigen_check(probe, random_unit(1, rng), 1e-3) > 1e-2);
    CHECK_ERROR_CODE(laplace_eigen_check(1, 0, random_unit(1, rng), 0.1), ErrorCode::OutOfDomain);
}

TEST_CASE("canonical representatives and distances") {
    const ProjectivePoint p{Complex(0.0, 2.0), 1.0};
    const ProjectivePoint c = p.canonical();
    CHECK(c.coords()[0].imag() == doctest::Approx(0.0));
    CHECK(c.coords()[0].real() > 0.0);
    CHECK(p.chordal_distance(c) < 1e-15);
    CHECK(ProjectivePoint{1.0, 0.0}.chordal_distance(ProjectivePoint{0.0, 1.0}) == doctest::Approx(1.0));
    CHECK_ERROR_CODE(ProjectivePoint(Eigen::VectorXcd::Zero(3)), ErrorCode::Precondition);
}
