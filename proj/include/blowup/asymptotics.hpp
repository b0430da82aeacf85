#pragma once

// Exact exponent bookkeeping for the gluing estimates. Every quantity is a
// finite sum of terms coefficient * eps^q where q is affine in the weight
// delta with rational coefficients; the radii r_eps = eps^{(2n-1)/(2n+1)} and
// R_eps = eps^{-2/(2n+1)} are substituted on construction.

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace blowup {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& q);
/// Parses "p/q", "p" or a decimal such as "0.5" (exactly) into a Rational.
Rational parse_rational(const std::string& text);

/// a + b * delta
struct AffineExponent {
    Rational constant{0};
    Rational delta{0};

    Rational at(const Rational& d) const { return constant + delta * d; }
    bool operator==(const AffineExponent&) const = default;
    bool operator<(const AffineExponent& o) const {
        return constant != o.constant ? constant < o.constant : delta < o.delta;
    }
};

struct EpsTerm {
    Rational coefficient{1};
    AffineExponent exponent;
};

class EpsPower {
public:
    EpsPower() = default;
    static EpsPower one();
    /// eps^(a + b delta)
    static EpsPower eps(Rational a, Rational b = 0);
    /// r_eps^(a + b delta)
    static EpsPower r_eps(int n, Rational a, Rational b = 0);
    /// R_eps^(a + b delta)
    static EpsPower big_r_eps(int n, Rational a, Rational b = 0);

    EpsPower operator+(const EpsPower& o) const;
    EpsPower operator*(const EpsPower& o) const;
    EpsPower scaled(const Rational& c) const;

    const std::vector<EpsTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Smallest exponent at the given delta (the dominant term as eps -> 0).
    Rational leading_exponent(const Rational& delta) const;
    std::string str() const;

private:
    void normalize();
    std::vector<EpsTerm> terms_;
};

/// r_eps exponent (2n-1)/(2n+1) and R_eps exponent -2/(2n+1).
Rational r_exponent(int n);
Rational big_r_exponent(int n);

/// min exponent(lhs) - min exponent(rhs) at delta; > 0 means lhs << rhs.
Rational exponent_gap(const EpsPower& lhs, const EpsPower& rhs, const Rational& delta = 0);

struct GlueRadii {
    double r = 0.0;
    double big_r = 0.0;
    Rational r_exponent;
    Rational big_r_exponent;
};

GlueRadii glue_radii(double eps, int n);

enum class Relation {
    MuchSmaller,  // lhs / rhs -> 0: gap > 0
    BoundedBy,    // lhs <= C rhs: gap >= 0
    TendsToZero,  // rhs is 1
};

const char* to_string(Relation r);

/// Which weight an inequality is stated for: the one used on the base manifold
/// side or the one on the rescaled model side.
enum class WeightSide { Base, Model };

struct Inequality {
    std::string name;
    std::string claim;
    EpsPower lhs;
    EpsPower rhs;
    Relation relation = Relation::MuchSmaller;
    WeightSide side = WeightSide::Base;
    int n_min = 2;
};

/// Optional bounds; an interval with no bounds is the whole line.
struct DeltaInterval {
    std::optional<Rational> lo;
    std::optional<Rational> hi;
    bool lo_closed = false;
    bool hi_closed = false;
    bool empty = false;

    bool contains(const Rational& d) const;
    DeltaInterval intersect(const DeltaInterval& o) const;
    std::string str() const;
};

/// Stated weight windows: base side (4-2n, 5-2n) for n >= 3 and (0, 2/3) for
/// n = 2; model side (0, 1).
DeltaInterval stated_window(int n, WeightSide side);
Rational window_midpoint(int n, WeightSide side);

std::vector<Inequality> inequality_catalog(int n);

struct LedgerEntry {
    Inequality inequality;
    Rational delta;
    Rational lhs_exponent;
    Rational rhs_exponent;
    Rational gap;
    bool pass = false;
    bool in_window = true;
};

struct EstimateLedger {
    int n = 0;
    Rational delta;
    Rational delta_model;
    std::vector<LedgerEntry> entries;
    bool all_pass() const;
};

/// Evaluates the full catalog; base-side entries at `delta`, model-side at
/// `delta_model` (default: midpoint of the model window).
EstimateLedger verify_ledger(int n, const Rational& delta, std::optional<Rational> delta_model = std::nullopt);

/// Exact set of delta on which all named inequalities hold (empty names: all
/// base-side inequalities). Each right-hand side must be a single term.
DeltaInterval delta_window(int n, const std::vector<std::string>& names = {});

}  // namespace blowup
