#pragma once

// Model manifolds (products of projective spaces and rigid factors), the
// explicit kernel functions of the Lichnerowicz operator on them, and finite
// symmetry groups acting by signed permutations with phases.
//
// Every kernel function on a projective factor is a traceless Hermitian form
// z -> Re(z^* H z) restricted to the unit sphere. This makes phase invariance
// exact and group averaging a finite matrix sum.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "blowup/rng.hpp"

namespace blowup {

using Complex = std::complex<double>;

struct Factor {
    enum class Kind { Projective, Rigid };

    Kind kind = Kind::Projective;
    // Projective: n of P^n. Rigid: complex dimension (only used for c_n).
    int dim = 1;

    static Factor projective(int n);
    static Factor rigid(int complex_dim = 1);

    bool is_projective() const { return kind == Kind::Projective; }
    int kernel_dim() const { return is_projective() ? dim * dim + 2 * dim : 0; }
    bool operator==(const Factor&) const = default;
};

class ModelManifold {
public:
    /// Empty placeholder; not a valid manifold for any computation.
    ModelManifold() = default;
    explicit ModelManifold(std::vector<Factor> factors);
    static ModelManifold projective_space(int n);

    const std::vector<Factor>& factors() const { return factors_; }
    std::size_t factor_count() const { return factors_.size(); }
    int kernel_dim() const;
    int complex_dim() const;
    bool has_projective_factor() const;
    std::string name() const;
    bool operator==(const ModelManifold&) const = default;

private:
    std::vector<Factor> factors_;
};

/// Unit vector in C^{n+1} representing a point of P^n.
class ProjectivePoint {
public:
    ProjectivePoint() = default;
    /// Normalizes `coords`; throws on a zero vector.
    explicit ProjectivePoint(Eigen::VectorXcd coords);
    ProjectivePoint(std::initializer_list<Complex> coords);

    const Eigen::VectorXcd& coords() const { return coords_; }
    int n() const { return static_cast<int>(coords_.size()) - 1; }

    /// First coordinate of modulus > 1e-12 rotated to be real positive.
    ProjectivePoint canonical() const;
    /// sqrt(1 - |<z, w>|^2); zero iff the points agree projectively.
    double chordal_distance(const ProjectivePoint& other) const;

private:
    Eigen::VectorXcd coords_;
};

struct RigidPoint {
    std::string label;
    bool operator==(const RigidPoint&) const = default;
};

using PointComponent = std::variant<ProjectivePoint, RigidPoint>;

class ConfigPoint {
public:
    ConfigPoint() = default;
    explicit ConfigPoint(std::vector<PointComponent> components) : components_(std::move(components)) {}
    ConfigPoint(ProjectivePoint p) : components_{std::move(p)} {}  // NOLINT: single-factor convenience

    const std::vector<PointComponent>& components() const { return components_; }
    std::size_t size() const { return components_.size(); }
    const ProjectivePoint& projective(std::size_t factor) const;

    void check_compatible(const ModelManifold& m) const;
    /// Max chordal distance over projective factors; differing rigid labels count as 1.
    double chordal_distance(const ConfigPoint& other) const;

private:
    std::vector<PointComponent> components_;
};

struct KernelFunction {
    std::size_t factor = 0;
    Eigen::MatrixXcd form;  // Hermitian
    std::string label;

    double evaluate(const Eigen::VectorXcd& z) const;
    double operator()(const ConfigPoint& p) const { return evaluate(p.projective(factor).coords()); }
};

class KernelBasis {
public:
    KernelBasis() = default;
    KernelBasis(ModelManifold manifold, std::vector<KernelFunction> functions);

    const ModelManifold& manifold() const { return manifold_; }
    const std::vector<KernelFunction>& functions() const { return functions_; }
    std::size_t size() const { return functions_.size(); }
    const KernelFunction& operator[](std::size_t i) const { return functions_[i]; }
    std::vector<std::string> labels() const;

private:
    ModelManifold manifold_;
    std::vector<KernelFunction> functions_;
};

/// The n^2+2n functions xi_ab, xihat_ab (1 <= a < b <= n+1, lexicographic) followed
/// by xitilde_a = |z_a|^2 - |z_{a+1}|^2 for a = 1..n.
KernelBasis pn_kernel_basis(int n);
/// Concatenation of the projective factors' bases; rigid factors contribute nothing.
KernelBasis product_kernel_basis(const ModelManifold& m);
Eigen::VectorXd evaluate(const KernelBasis& basis, const ConfigPoint& p);

// ---------------------------------------------------------------------------
// Symmetry groups

/// (g z)_k = phase_k * z_{perm_k}.
struct SignedPermutation {
    std::vector<int> perm;
    std::vector<Complex> phase;

    static SignedPermutation identity(int size);
    int size() const { return static_cast<int>(perm.size()); }
    Eigen::MatrixXcd matrix() const;
    Eigen::VectorXcd apply(const Eigen::VectorXcd& z) const;
    /// (*this) after `inner`: z -> this(inner(z)).
    SignedPermutation compose(const SignedPermutation& inner) const;
    SignedPermutation inverse() const;
    bool approx_equal(const SignedPermutation& other, double tol = 1e-12) const;
};

/// One signed permutation per projective factor, in factor order.
struct GroupElement {
    std::vector<SignedPermutation> parts;

    GroupElement compose(const GroupElement& inner) const;
    GroupElement inverse() const;
    bool approx_equal(const GroupElement& other, double tol = 1e-12) const;
};

class SymmetryGroup {
public:
    /// Verifies identity, closure under composition and inverses.
    static SymmetryGroup from_elements(const ModelManifold& m, std::vector<GroupElement> elements);
    static SymmetryGroup generated_by(const ModelManifold& m, const std::vector<GroupElement>& generators,
                                      std::size_t max_order = 200000);
    static SymmetryGroup trivial(const ModelManifold& m);
    /// z_k -> +/- z_k independently on every projective factor.
    static SymmetryGroup sign_flips(const ModelManifold& m);
    /// All coordinate permutations of every projective factor.
    static SymmetryGroup coordinate_permutations(const ModelManifold& m);

    const ModelManifold& manifold() const { return manifold_; }
    const std::vector<GroupElement>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }

    ConfigPoint act(const GroupElement& g, const ConfigPoint& p) const;
    /// Exact average of f over the group: form -> mean of G^* H G.
    KernelFunction average(const KernelFunction& f) const;
    /// Distinct images of p (projective equality, tolerance 1e-10).
    std::vector<ConfigPoint> orbit(const ConfigPoint& p) const;

private:
    SymmetryGroup(ModelManifold m, std::vector<GroupElement> elements)
        : manifold_(std::move(m)), elements_(std::move(elements)) {}

    ModelManifold manifold_;
    std::vector<GroupElement> elements_;
};

struct InvariantOptions {
    double rel_threshold = 1e-9;
    int oversample = 4;  // sample points per basis function
    std::uint64_t seed = kDefaultSeed;
};

/// Basis of the G-invariant part of span(basis): exact group averages, with a
/// maximal independent subset chosen greedily in basis order by sampled rank.
KernelBasis invariant_subbasis(const KernelBasis& basis, const SymmetryGroup& g,
                               const InvariantOptions& options = {});

// ---------------------------------------------------------------------------
// Sampling and checks

ProjectivePoint random_projective_point(int n, CounterRng& rng);
ConfigPoint random_config_point(const ModelManifold& m, CounterRng& rng);

struct MeanEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
};

/// Monte Carlo means against the uniform measure on each factor's unit sphere.
/// Sample i uses its own counter-derived generator, so results do not depend on
/// evaluation order.
std::vector<MeanEstimate> mean_zero_check(const ModelManifold& m, std::span<const KernelFunction> functions,
                                          int samples, std::uint64_t seed);
std::vector<MeanEstimate> mean_zero_check(const KernelBasis& basis, int samples, std::uint64_t seed);

/// |Delta_S f + 4(n+1) f| at p on S^{2n+1} (Delta negative semidefinite), by
/// central differences along geodesics obtained by re-projecting p + h t.
double laplace_eigen_check(const KernelFunction& f, const Eigen::VectorXcd& p, double h);
/// Same for function `index` of pn_kernel_basis(n).
double laplace_eigen_check(int n, std::size_t index, const Eigen::VectorXcd& p, double h);

}  // namespace blowup
