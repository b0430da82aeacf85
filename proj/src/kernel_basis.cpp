#include "blowup/kernel_basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "blowup/errors.hpp"

namespace blowup {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kSamePointTol = 1e-10;

// Hashable key for a signed permutation; phases rounded to 1e-9.
using ElementKey = std::vector<long long>;

ElementKey key_of(const GroupElement& g) {
    ElementKey key;
    for (const auto& part : g.parts) {
        key.push_back(-1);
        for (int k = 0; k < part.size(); ++k) {
            key.push_back(part.perm[k]);
            key.push_back(std::llround(part.phase[k].real() * 1e9));
            key.push_back(std::llround(part.phase[k].imag() * 1e9));
        }
    }
    return key;
}

std::vector<int> projective_dims(const ModelManifold& m) {
    std::vector<int> dims;
    for (const auto& f : m.factors())
        if (f.is_projective()) dims.push_back(f.dim);
    return dims;
}

GroupElement identity_element(const ModelManifold& m) {
    GroupElement e;
    for (int n : projective_dims(m)) e.parts.push_back(SignedPermutation::identity(n + 1));
    return e;
}

void validate_element(const ModelManifold& m, const GroupElement& g) {
    const auto dims = projective_dims(m);
    if (g.parts.size() != dims.size())
        throw Error(ErrorCode::DimensionMismatch, "group element has " + std::to_string(g.parts.size()) +
                                                      " parts, manifold has " + std::to_string(dims.size()) +
                                                      " projective factors");
    for (std::size_t f = 0; f < dims.size(); ++f) {
        const auto& part = g.parts[f];
        if (part.size() != dims[f] + 1 || part.phase.size() != part.perm.size())
            throw Error(ErrorCode::DimensionMismatch, "group element acts on the wrong number of coordinates");
        std::vector<int> sorted = part.perm;
        std::sort(sorted.begin(), sorted.end());
        for (int k = 0; k <= dims[f]; ++k)
            if (sorted[k] != k) throw Error(ErrorCode::NotAGroup, "group element perm is not a permutation");
        for (const auto& ph : part.phase)
            if (std::abs(std::abs(ph) - 1.0) > 1e-12)
                throw Error(ErrorCode::NotAGroup, "group element phase is not unimodular");
    }
}

std::string format_label(const std::string& base, std::size_t projective_index, std::size_t projective_count) {
    if (projective_count <= 1) return base;
    return "f" + std::to_string(projective_index + 1) + ":" + base;
}

}  // namespace

// ---------------------------------------------------------------------------
// Manifolds and points

Factor Factor::projective(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidDimension, "projective factor needs n >= 1, got " + std::to_string(n));
    return Factor{Kind::Projective, n};
}

Factor Factor::rigid(int complex_dim) {
    if (complex_dim < 1)
        throw Error(ErrorCode::InvalidDimension, "rigid factor needs dimension >= 1, got " + std::to_string(complex_dim));
    return Factor{Kind::Rigid, complex_dim};
}

ModelManifold::ModelManifold(std::vector<Factor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw Error(ErrorCode::InvalidDimension, "manifold needs at least one factor");
    for (const auto& f : factors_)
        if (f.dim < 1) throw Error(ErrorCode::InvalidDimension, "factor dimension must be >= 1");
}

ModelManifold ModelManifold::projective_space(int n) { return ModelManifold({Factor::projective(n)}); }

int ModelManifold::kernel_dim() const {
    int d = 0;
    for (const auto& f : factors_) d += f.kernel_dim();
    return d;
}

int ModelManifold::complex_dim() const {
    int n = 0;
    for (const auto& f : factors_) n += f.dim;
    return n;
}

bool ModelManifold::has_projective_factor() const {
    return std::any_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.is_projective(); });
}

std::string ModelManifold::name() const {
    std::string out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) out += " x ";
        if (factors_[i].is_projective())
            out += "P" + std::to_string(factors_[i].dim);
        else
            out += "Rigid" + (factors_[i].dim == 1 ? std::string() : "(" + std::to_string(factors_[i].dim) + ")");
    }
    return out;
}

ProjectivePoint::ProjectivePoint(Eigen::VectorXcd coords) : coords_(std::move(coords)) {
    if (coords_.size() < 2) throw Error(ErrorCode::InvalidDimension, "projective point needs at least 2 coordinates");
    const double norm = coords_.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw Error(ErrorCode::Precondition, "homogeneous coordinates must be finite and nonzero");
    coords_ /= norm;
}

ProjectivePoint::ProjectivePoint(std::initializer_list<Complex> coords)
    : ProjectivePoint(Eigen::Map<const Eigen::VectorXcd>(coords.begin(), static_cast<Eigen::Index>(coords.size()))) {}

ProjectivePoint ProjectivePoint::canonical() const {
    for (Eigen::Index k = 0; k < coords_.size(); ++k) {
        const double mod = std::abs(coords_[k]);
        if (mod > kUnitTol) return ProjectivePoint(Eigen::VectorXcd(coords_ * (std::conj(coords_[k]) / mod)));
    }
    return *this;
}

double ProjectivePoint::chordal_distance(const ProjectivePoint& other) const {
    if (other.coords_.size() != coords_.size())
        throw Error(ErrorCode::DimensionMismatch, "points live in different projective spaces");
    // |z - w <w, z>| equals sqrt(1 - |<w, z>|^2) without the cancellation near 0
    return (coords_ - other.coords_ * other.coords_.dot(coords_)).norm();
}

const ProjectivePoint& ConfigPoint::projective(std::size_t factor) const {
    if (factor >= components_.size())
        throw Error(ErrorCode::DimensionMismatch, "point has no component " + std::to_string(factor));
    const auto* p = std::get_if<ProjectivePoint>(&components_[factor]);
    if (!p) throw Error(ErrorCode::DimensionMismatch, "component " + std::to_string(factor) + " is rigid");
    return *p;
}

void ConfigPoint::check_compatible(const ModelManifold& m) const {
    if (components_.size() != m.factor_count())
        throw Error(ErrorCode::DimensionMismatch, "point has " + std::to_string(components_.size()) +
                                                      " components, manifold " + m.name() + " has " +
                                                      std::to_string(m.factor_count()) + " factors");
    for (std::size_t i = 0; i < components_.size(); ++i) {
        const auto& f = m.factors()[i];
        const auto* p = std::get_if<ProjectivePoint>(&components_[i]);
        if (f.is_projective() != (p != nullptr))
            throw Error(ErrorCode::DimensionMismatch, "component " + std::to_string(i) + " kind does not match factor");
        if (p && p->n() != f.dim)
            throw Error(ErrorCode::DimensionMismatch, "component " + std::to_string(i) + " has " +
                                                          std::to_string(p->n() + 1) + " coordinates, expected " +
                                                          std::to_string(f.dim + 1));
    }
}

double ConfigPoint::chordal_distance(const ConfigPoint& other) const {
    if (other.size() != size()) throw Error(ErrorCode::DimensionMismatch, "points have different factor counts");
    double dist = 0.0;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        const auto* a = std::get_if<ProjectivePoint>(&components_[i]);
        const auto* b = std::get_if<ProjectivePoint>(&other.components_[i]);
        if (a && b)
            dist = std::max(dist, a->chordal_distance(*b));
        else if (!a && !b)
            dist = std::max(dist, std::get<RigidPoint>(components_[i]) == std::get<RigidPoint>(other.components_[i]) ? 0.0
                                                                                                                     : 1.0);
        else
            throw Error(ErrorCode::DimensionMismatch, "component kinds differ");
    }
    return dist;
}

// ---------------------------------------------------------------------------
// Kernel functions

double KernelFunction::evaluate(const Eigen::VectorXcd& z) const {
    if (z.size() != form.rows())
        throw Error(ErrorCode::DimensionMismatch, "kernel function " + label + " expects " +
                                                      std::to_string(form.rows()) + " coordinates, got " +
                                                      std::to_string(z.size()));
    return z.dot(form * z).real();
}

KernelBasis::KernelBasis(ModelManifold manifold, std::vector<KernelFunction> functions)
    : manifold_(std::move(manifold)), functions_(std::move(functions)) {
    for (const auto& f : functions_) {
        if (f.factor >= manifold_.factor_count() || !manifold_.factors()[f.factor].is_projective())
            throw Error(ErrorCode::DimensionMismatch, "kernel function " + f.label + " refers to a non-projective factor");
        if (f.form.rows() != manifold_.factors()[f.factor].dim + 1 || f.form.cols() != f.form.rows())
            throw Error(ErrorCode::DimensionMismatch, "kernel function " + f.label + " has the wrong form size");
    }
}

std::vector<std::string> KernelBasis::labels() const {
    std::vector<std::string> out;
    out.reserve(functions_.size());
    for (const auto& f : functions_) out.push_back(f.label);
    return out;
}

namespace {

std::vector<KernelFunction> projective_functions(int n, std::size_t factor, const std::string& prefix) {
    const int size = n + 1;
    std::vector<KernelFunction> out;
    out.reserve(static_cast<std::size_t>(n * n + 2 * n));
    const auto suffix = [](int a, int b) { return std::to_string(a + 1) + std::to_string(b + 1); };
    const auto sep = [&](int a, int b) {
        // two-digit labels become ambiguous past 9 coordinates
        return size > 9 ? std::to_string(a + 1) + "," + std::to_string(b + 1) : suffix(a, b);
    };
    for (int a = 0; a < size; ++a)
        for (int b = a + 1; b < size; ++b) {
            Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(size, size);
            h(a, b) = 1.0;
            h(b, a) = 1.0;
            out.push_back({factor, h, prefix + "xi_" + sep(a, b)});
        }
    for (int a = 0; a < size; ++a)
        for (int b = a + 1; b < size; ++b) {
            // i(z_a conj(z_b) - z_b conj(z_a)) = z^* H z with H_ba = i, H_ab = -i
            Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(size, size);
            h(b, a) = Complex(0.0, 1.0);
            h(a, b) = Complex(0.0, -1.0);
            out.push_back({factor, h, prefix + "xihat_" + sep(a, b)});
        }
    for (int a = 0; a < n; ++a) {
        Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(size, size);
        h(a, a) = 1.0;
        h(a + 1, a + 1) = -1.0;
        out.push_back({factor, h, prefix + "xitilde_" + std::to_string(a + 1)});
    }
    return out;
}

}  // namespace

KernelBasis pn_kernel_basis(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidDimension, "pn_kernel_basis needs n >= 1, got " + std::to_string(n));
    return KernelBasis(ModelManifold::projective_space(n), projective_functions(n, 0, ""));
}

KernelBasis product_kernel_basis(const ModelManifold& m) {
    if (!m.has_projective_factor())
        throw Error(ErrorCode::EmptyKernel, "manifold " + m.name() + " has no projective factor (d = 0)");
    std::size_t projective_count = 0;
    for (const auto& f : m.factors()) projective_count += f.is_projective();
    std::vector<KernelFunction> all;
    std::size_t seen = 0;
    for (std::size_t i = 0; i < m.factor_count(); ++i) {
        const auto& f = m.factors()[i];
        if (!f.is_projective()) continue;
        auto part = projective_functions(f.dim, i, format_label("", seen, projective_count));
        all.insert(all.end(), part.begin(), part.end());
        ++seen;
    }
    return KernelBasis(m, std::move(all));
}

Eigen::VectorXd evaluate(const KernelBasis& basis, const ConfigPoint& p) {
    p.check_compatible(basis.manifold());
    Eigen::VectorXd values(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) values[static_cast<Eigen::Index>(j)] = basis[j](p);
    return values;
}

// ---------------------------------------------------------------------------
// Groups

SignedPermutation SignedPermutation::identity(int size) {
    SignedPermutation s;
    s.perm.resize(static_cast<std::size_t>(size));
    std::iota(s.perm.begin(), s.perm.end(), 0);
    s.phase.assign(static_cast<std::size_t>(size), Complex(1.0, 0.0));
    return s;
}

Eigen::MatrixXcd SignedPermutation::matrix() const {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(size(), size());
    for (int k = 0; k < size(); ++k) g(k, perm[k]) = phase[k];
    return g;
}

Eigen::VectorXcd SignedPermutation::apply(const Eigen::VectorXcd& z) const {
    if (z.size() != size()) throw Error(ErrorCode::DimensionMismatch, "group element and point sizes differ");
    Eigen::VectorXcd out(z.size());
    for (int k = 0; k < size(); ++k) out[k] = phase[k] * z[perm[k]];
    return out;
}

SignedPermutation SignedPermutation::compose(const SignedPermutation& inner) const {
    // this(inner(z))_k = phase_k * inner(z)_{perm_k} = phase_k * inner.phase_{perm_k} * z_{inner.perm_{perm_k}}
    SignedPermutation out;
    out.perm.resize(perm.size());
    out.phase.resize(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) {
        const auto j = static_cast<std::size_t>(perm[k]);
        out.perm[k] = inner.perm[j];
        out.phase[k] = phase[k] * inner.phase[j];
    }
    return out;
}

SignedPermutation SignedPermutation::inverse() const {
    // y_k = phase_k z_{perm_k}  =>  z_{perm_k} = conj(phase_k) y_k
    SignedPermutation out;
    out.perm.resize(perm.size());
    out.phase.resize(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) {
        const auto j = static_cast<std::size_t>(perm[k]);
        out.perm[j] = static_cast<int>(k);
        out.phase[j] = std::conj(phase[k]);
    }
    return out;
}

bool SignedPermutation::approx_equal(const SignedPermutation& other, double tol) const {
    if (perm != other.perm) return false;
    for (std::size_t k = 0; k < phase.size(); ++k)
        if (std::abs(phase[k] - other.phase[k]) > tol) return false;
    return true;
}

GroupElement GroupElement::compose(const GroupElement& inner) const {
    GroupElement out;
    for (std::size_t f = 0; f < parts.size(); ++f) out.parts.push_back(parts[f].compose(inner.parts[f]));
    return out;
}

GroupElement GroupElement::inverse() const {
    GroupElement out;
    for (const auto& p : parts) out.parts.push_back(p.inverse());
    return out;
}

bool GroupElement::approx_equal(const GroupElement& other, double tol) const {
    if (parts.size() != other.parts.size()) return false;
    for (std::size_t f = 0; f < parts.size(); ++f)
        if (!parts[f].approx_equal(other.parts[f], tol)) return false;
    return true;
}

SymmetryGroup SymmetryGroup::from_elements(const ModelManifold& m, std::vector<GroupElement> elements) {
    std::map<ElementKey, std::size_t> index;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        validate_element(m, elements[i]);
        if (!index.emplace(key_of(elements[i]), i).second)
            throw Error(ErrorCode::NotAGroup, "group element " + std::to_string(i) + " is listed twice");
    }
    const auto contains = [&](const GroupElement& g) {
        auto it = index.find(key_of(g));
        return it != index.end() && elements[it->second].approx_equal(g);
    };
    if (!contains(identity_element(m))) throw Error(ErrorCode::NotAGroup, "group does not contain the identity");
    for (const auto& g : elements) {
        if (!contains(g.inverse())) throw Error(ErrorCode::NotAGroup, "group is not closed under inverses");
        for (const auto& h : elements)
            if (!contains(g.compose(h))) throw Error(ErrorCode::NotAGroup, "group is not closed under composition");
    }
    return SymmetryGroup(m, std::move(elements));
}

SymmetryGroup SymmetryGroup::generated_by(const ModelManifold& m, const std::vector<GroupElement>& generators,
                                          std::size_t max_order) {
    for (const auto& g : generators) validate_element(m, g);
    std::vector<GroupElement> elements{identity_element(m)};
    std::map<ElementKey, std::size_t> index{{key_of(elements[0]), 0}};
    for (std::size_t head = 0; head < elements.size(); ++head) {
        for (const auto& gen : generators) {
            GroupElement next = gen.compose(elements[head]);
            // snap phases so that repeated products of roots of unity stay on the grid
            for (auto& part : next.parts)
                for (auto& ph : part.phase) ph /= std::abs(ph);
            if (index.emplace(key_of(next), elements.size()).second) {
                elements.push_back(std::move(next));
                if (elements.size() > max_order)
                    throw Error(ErrorCode::NotAGroup, "generated group exceeds " + std::to_string(max_order) +
                                                          " elements (phases not roots of unity?)");
            }
        }
    }
    return SymmetryGroup(m, std::move(elements));
}

SymmetryGroup SymmetryGroup::trivial(const ModelManifold& m) { return SymmetryGroup(m, {identity_element(m)}); }

namespace {

// Cartesian product of per-factor element lists.
std::vector<GroupElement> product_of(const std::vector<std::vector<SignedPermutation>>& per_factor) {
    std::vector<GroupElement> out{GroupElement{}};
    for (const auto& options : per_factor) {
        std::vector<GroupElement> next;
        next.reserve(out.size() * options.size());
        for (const auto& partial : out)
            for (const auto& opt : options) {
                GroupElement g = partial;
                g.parts.push_back(opt);
                next.push_back(std::move(g));
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace

SymmetryGroup SymmetryGroup::sign_flips(const ModelManifold& m) {
    std::vector<std::vector<SignedPermutation>> per_factor;
    for (int n : projective_dims(m)) {
        std::vector<SignedPermutation> options;
        for (unsigned mask = 0; mask < (1u << (n + 1)); ++mask) {
            auto s = SignedPermutation::identity(n + 1);
            for (int k = 0; k <= n; ++k)
                if (mask & (1u << k)) s.phase[static_cast<std::size_t>(k)] = -1.0;
            options.push_back(std::move(s));
        }
        per_factor.push_back(std::move(options));
    }
    return SymmetryGroup(m, product_of(per_factor));
}

SymmetryGroup SymmetryGroup::coordinate_permutations(const ModelManifold& m) {
    std::vector<std::vector<SignedPermutation>> per_factor;
    for (int n : projective_dims(m)) {
        std::vector<SignedPermutation> options;
        auto s = SignedPermutation::identity(n + 1);
        do {
            options.push_back(s);
        } while (std::next_permutation(s.perm.begin(), s.perm.end()));
        per_factor.push_back(std::move(options));
    }
    return SymmetryGroup(m, product_of(per_factor));
}

ConfigPoint SymmetryGroup::act(const GroupElement& g, const ConfigPoint& p) const {
    p.check_compatible(manifold_);
    std::vector<PointComponent> out;
    std::size_t part = 0;
    for (const auto& c : p.components()) {
        if (const auto* pp = std::get_if<ProjectivePoint>(&c))
            out.emplace_back(ProjectivePoint(g.parts[part++].apply(pp->coords())));
        else
            out.push_back(c);
    }
    return ConfigPoint(std::move(out));
}

KernelFunction SymmetryGroup::average(const KernelFunction& f) const {
    // projective index of f's factor
    std::size_t part = 0;
    for (std::size_t i = 0; i < f.factor; ++i) part += manifold_.factors()[i].is_projective();
    // f(g z) = z^* G^* H G z
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(f.form.rows(), f.form.cols());
    for (const auto& g : elements_) {
        const Eigen::MatrixXcd gm = g.parts[part].matrix();
        sum += gm.adjoint() * f.form * gm;
    }
    KernelFunction out{f.factor, sum / static_cast<double>(elements_.size()), f.label};
    for (Eigen::Index i = 0; i < out.form.size(); ++i) {
        auto& v = out.form.data()[i];
        if (std::abs(v.real()) < 1e-14) v.real(0.0);
        if (std::abs(v.imag()) < 1e-14) v.imag(0.0);
    }
    return out;
}

std::vector<ConfigPoint> SymmetryGroup::orbit(const ConfigPoint& p) const {
    std::vector<ConfigPoint> out;
    for (const auto& g : elements_) {
        ConfigPoint q = act(g, p);
        const bool seen = std::any_of(out.begin(), out.end(),
                                      [&](const ConfigPoint& r) { return r.chordal_distance(q) < kSamePointTol; });
        if (!seen) out.push_back(std::move(q));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Invariant subspace

KernelBasis invariant_subbasis(const KernelBasis& basis, const SymmetryGroup& g, const InvariantOptions& options) {
    if (!(g.manifold() == basis.manifold()))
        throw Error(ErrorCode::DimensionMismatch, "group and basis live on different manifolds");
    const auto d = static_cast<Eigen::Index>(basis.size());
    if (d == 0) return basis;
    const Eigen::Index samples = std::max<Eigen::Index>(options.oversample * d, d + 4);

    std::vector<KernelFunction> averaged;
    for (const auto& f : basis.functions()) averaged.push_back(g.average(f));

    std::vector<ConfigPoint> pts;
    for (Eigen::Index s = 0; s < samples; ++s) {
        CounterRng rng(options.seed, Stream::InvariantSampling, static_cast<std::uint64_t>(s));
        pts.push_back(random_config_point(basis.manifold(), rng));
    }
    Eigen::MatrixXd original(samples, d), reduced(samples, d);
    for (Eigen::Index s = 0; s < samples; ++s)
        for (Eigen::Index j = 0; j < d; ++j) {
            original(s, j) = basis[static_cast<std::size_t>(j)](pts[static_cast<std::size_t>(s)]);
            reduced(s, j) = averaged[static_cast<std::size_t>(j)](pts[static_cast<std::size_t>(s)]);
        }
    // Rank decisions are made against the scale of the unreduced basis, so that
    // a function whose average collapses to rounding noise is dropped.
    const double scale = Eigen::JacobiSVD<Eigen::MatrixXd>(original).singularValues()(0);
    const double threshold = options.rel_threshold * scale;

    std::vector<KernelFunction> kept;
    std::vector<Eigen::Index> kept_cols;
    int rank = 0;
    for (Eigen::Index j = 0; j < d; ++j) {
        Eigen::MatrixXd trial(samples, static_cast<Eigen::Index>(kept_cols.size()) + 1);
        for (std::size_t c = 0; c < kept_cols.size(); ++c) trial.col(static_cast<Eigen::Index>(c)) = reduced.col(kept_cols[c]);
        trial.col(trial.cols() - 1) = reduced.col(j);
        const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(trial).singularValues();
        const int trial_rank = static_cast<int>((sv.array() > threshold).count());
        if (trial_rank > rank) {
            rank = trial_rank;
            kept_cols.push_back(j);
            KernelFunction f = averaged[static_cast<std::size_t>(j)];
            if (!f.form.isApprox(basis[static_cast<std::size_t>(j)].form, 1e-14)) f.label = "avg(" + f.label + ")";
            kept.push_back(std::move(f));
        }
    }
    return KernelBasis(basis.manifold(), std::move(kept));
}

// ---------------------------------------------------------------------------
// Sampling and checks

ProjectivePoint random_projective_point(int n, CounterRng& rng) {
    Eigen::VectorXcd z(n + 1);
    do {
        for (int k = 0; k <= n; ++k) {
            const double re = rng.normal();
            const double im = rng.normal();
            z[k] = Complex(re, im);
        }
    } while (z.norm() < 1e-300);
    return ProjectivePoint(z);
}

ConfigPoint random_config_point(const ModelManifold& m, CounterRng& rng) {
    std::vector<PointComponent> comps;
    for (std::size_t i = 0; i < m.factor_count(); ++i) {
        const auto& f = m.factors()[i];
        if (f.is_projective())
            comps.emplace_back(random_projective_point(f.dim, rng));
        else
            comps.emplace_back(RigidPoint{"q"});
    }
    return ConfigPoint(std::move(comps));
}

std::vector<MeanEstimate> mean_zero_check(const ModelManifold& m, std::span<const KernelFunction> functions,
                                          int samples, std::uint64_t seed) {
    if (samples < 1000) throw Error(ErrorCode::Precondition, "mean_zero_check needs at least 1000 samples");
    const std::size_t k = functions.size();
    std::vector<double> mean(k, 0.0), m2(k, 0.0);
    for (int s = 0; s < samples; ++s) {
        CounterRng rng(seed, Stream::MeanCheck, static_cast<std::uint64_t>(s));
        const ConfigPoint p = random_config_point(m, rng);
        for (std::size_t j = 0; j < k; ++j) {
            const double x = functions[j](p);
            const double delta = x - mean[j];
            mean[j] += delta / (s + 1);
            m2[j] += delta * (x - mean[j]);
        }
    }
    std::vector<MeanEstimate> out(k);
    for (std::size_t j = 0; j < k; ++j) {
        const double var = m2[j] / (samples - 1);
        out[j] = {mean[j], std::sqrt(var / samples)};
    }
    return out;
}

std::vector<MeanEstimate> mean_zero_check(const KernelBasis& basis, int samples, std::uint64_t seed) {
    return mean_zero_check(basis.manifold(), basis.functions(), samples, seed);
}

double laplace_eigen_check(const KernelFunction& f, const Eigen::VectorXcd& p, double h) {
    if (!(h >= 1e-5 && h <= 1e-2)) throw Error(ErrorCode::OutOfDomain, "laplace_eigen_check step must lie in [1e-5, 1e-2]");
    if (p.size() != f.form.rows()) throw Error(ErrorCode::DimensionMismatch, "point size does not match function");
    if (std::abs(p.norm() - 1.0) > 1e-10) throw Error(ErrorCode::Precondition, "point must lie on the unit sphere");
    const Eigen::Index nc = p.size();
    const Eigen::Index dim = 2 * nc;  // real ambient dimension
    Eigen::VectorXd x(dim);
    for (Eigen::Index k = 0; k < nc; ++k) {
        x[2 * k] = p[k].real();
        x[2 * k + 1] = p[k].imag();
    }
    // Orthonormal frame whose first vector is +/- x; the rest span the tangent space.
    Eigen::MatrixXd frame(dim, dim);
    frame.col(0) = x;
    frame.rightCols(dim - 1) = Eigen::MatrixXd::Identity(dim, dim - 1);
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(frame).householderQ();

    const auto value_at = [&](const Eigen::VectorXd& y) {
        const Eigen::VectorXd u = y / y.norm();
        Eigen::VectorXcd z(nc);
        for (Eigen::Index k = 0; k < nc; ++k) z[k] = Complex(u[2 * k], u[2 * k + 1]);
        return f.evaluate(z);
    };
    // Re-projecting x + h t onto the sphere moves a geodesic angle atan(h).
    const double theta = std::atan(h);
    const double f0 = f.evaluate(p);
    double lap = 0.0;
    for (Eigen::Index i = 1; i < dim; ++i) {
        const Eigen::VectorXd t = q.col(i);
        lap += (value_at(x + h * t) - 2.0 * f0 + value_at(x - h * t)) / (theta * theta);
    }
    const int n = static_cast<int>(nc) - 1;
    return std::abs(lap + 4.0 * (n + 1) * f0);
}

double laplace_eigen_check(int n, std::size_t index, const Eigen::VectorXcd& p, double h) {
    const KernelBasis basis = pn_kernel_basis(n);
    if (index >= basis.size())
        throw Error(ErrorCode::OutOfDomain, "function index " + std::to_string(index) + " out of range");
    return laplace_eigen_check(basis[index], p, h);
}

}  // namespace blowup
