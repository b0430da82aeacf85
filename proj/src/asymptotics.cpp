#include "blowup/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "blowup/errors.hpp"

namespace blowup {

std::string to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Rational parse_rational(const std::string& text) {
    const auto bad = [&] { return Error(ErrorCode::Parse, "cannot parse rational '" + text + "'"); };
    const auto parse_int = [&](const std::string& s) -> std::int64_t {
        if (s.empty()) throw bad();
        std::size_t pos = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            throw bad();
        }
        if (pos != s.size()) throw bad();
        return v;
    };
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const std::int64_t den = parse_int(text.substr(slash + 1));
        if (den == 0) throw bad();
        return Rational(parse_int(text.substr(0, slash)), den);
    }
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        const std::string frac = text.substr(dot + 1);
        if (frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string::npos) throw bad();
        std::string whole = text.substr(0, dot);
        const bool negative = !whole.empty() && whole[0] == '-';
        if (whole.empty() || whole == "-" || whole == "+") whole += "0";
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const std::int64_t w = parse_int(whole);
        const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
        return Rational(w * den + (negative ? -f : f), den);
    }
    return Rational(parse_int(text));
}

Rational r_exponent(int n) { return Rational(2 * n - 1, 2 * n + 1); }
Rational big_r_exponent(int n) { return Rational(-2, 2 * n + 1); }

EpsPower EpsPower::one() { return eps(0); }

EpsPower EpsPower::eps(Rational a, Rational b) {
    EpsPower p;
    p.terms_.push_back({Rational(1), {a, b}});
    return p;
}

EpsPower EpsPower::r_eps(int n, Rational a, Rational b) {
    const Rational rho = r_exponent(n);
    return eps(rho * a, rho * b);
}

EpsPower EpsPower::big_r_eps(int n, Rational a, Rational b) {
    const Rational sigma = big_r_exponent(n);
    return eps(sigma * a, sigma * b);
}

EpsPower EpsPower::operator+(const EpsPower& o) const {
    EpsPower out = *this;
    out.terms_.insert(out.terms_.end(), o.terms_.begin(), o.terms_.end());
    out.normalize();
    return out;
}

EpsPower EpsPower::operator*(const EpsPower& o) const {
    EpsPower out;
    for (const auto& a : terms_)
        for (const auto& b : o.terms_)
            out.terms_.push_back({a.coefficient * b.coefficient,
                                  {a.exponent.constant + b.exponent.constant, a.exponent.delta + b.exponent.delta}});
    out.normalize();
    return out;
}

EpsPower EpsPower::scaled(const Rational& c) const {
    EpsPower out = *this;
    for (auto& t : out.terms_) t.coefficient *= c;
    out.normalize();
    return out;
}

void EpsPower::normalize() {
    std::map<AffineExponent, Rational> merged;
    for (const auto& t : terms_) merged[t.exponent] += t.coefficient;
    terms_.clear();
    for (const auto& [e, c] : merged)
        if (c != Rational(0)) terms_.push_back({c, e});
}

Rational EpsPower::leading_exponent(const Rational& delta) const {
    if (terms_.empty()) throw Error(ErrorCode::Precondition, "zero expression has no leading exponent");
    Rational best = terms_.front().exponent.at(delta);
    for (const auto& t : terms_) best = std::min(best, t.exponent.at(delta));
    return best;
}

std::string EpsPower::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto& t = terms_[i];
        if (i) out += " + ";
        if (t.coefficient != Rational(1)) out += to_string(t.coefficient) + "*";
        out += "eps^(" + to_string(t.exponent.constant);
        if (t.exponent.delta != Rational(0)) out += (t.exponent.delta > Rational(0) ? " + " : " - ") + to_string(abs(t.exponent.delta)) + "*delta";
        out += ")";
    }
    return out;
}

Rational exponent_gap(const EpsPower& lhs, const EpsPower& rhs, const Rational& delta) {
    if (lhs.is_zero() || rhs.is_zero()) throw Error(ErrorCode::Precondition, "exponent_gap of a zero expression");
    return lhs.leading_exponent(delta) - rhs.leading_exponent(delta);
}

GlueRadii glue_radii(double eps, int n) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::OutOfDomain, "glue_radii needs 0 < eps < 1");
    if (n < 2) throw Error(ErrorCode::InvalidDimension, "glue_radii needs n >= 2");
    GlueRadii g;
    g.r_exponent = r_exponent(n);
    g.big_r_exponent = big_r_exponent(n);
    g.r = std::pow(eps, boost::rational_cast<double>(g.r_exponent));
    g.big_r = std::pow(eps, boost::rational_cast<double>(g.big_r_exponent));
    return g;
}

const char* to_string(Relation r) {
    switch (r) {
        case Relation::MuchSmaller: return "much_smaller";
        case Relation::BoundedBy: return "bounded_by";
        case Relation::TendsToZero: return "tends_to_zero";
    }
    return "unknown";
}

bool DeltaInterval::contains(const Rational& d) const {
    if (empty) return false;
    if (lo && (d < *lo || (d == *lo && !lo_closed))) return false;
    if (hi && (d > *hi || (d == *hi && !hi_closed))) return false;
    return true;
}

DeltaInterval DeltaInterval::intersect(const DeltaInterval& o) const {
    if (empty || o.empty) return DeltaInterval{std::nullopt, std::nullopt, false, false, true};
    DeltaInterval out = *this;
    if (o.lo && (!out.lo || *o.lo > *out.lo || (*o.lo == *out.lo && !o.lo_closed))) {
        out.lo = o.lo;
        out.lo_closed = o.lo_closed;
    }
    if (o.hi && (!out.hi || *o.hi < *out.hi || (*o.hi == *out.hi && !o.hi_closed))) {
        out.hi = o.hi;
        out.hi_closed = o.hi_closed;
    }
    if (out.lo && out.hi && (*out.lo > *out.hi || (*out.lo == *out.hi && !(out.lo_closed && out.hi_closed))))
        out.empty = true;
    return out;
}

std::string DeltaInterval::str() const {
    if (empty) return "empty";
    std::string out = lo ? (lo_closed ? "[" : "(") + to_string(*lo) : "(-inf";
    out += ", ";
    out += hi ? to_string(*hi) + (hi_closed ? "]" : ")") : "+inf)";
    return out;
}

DeltaInterval stated_window(int n, WeightSide side) {
    if (side == WeightSide::Model) return {Rational(0), Rational(1), false, false, false};
    if (n == 2) return {Rational(0), Rational(2, 3), false, false, false};
    return {Rational(4 - 2 * n), Rational(5 - 2 * n), false, false, false};
}

Rational window_midpoint(int n, WeightSide side) {
    const DeltaInterval w = stated_window(n, side);
    return (*w.lo + *w.hi) / 2;
}

std::vector<Inequality> inequality_catalog(int n) {
    if (n < 2) throw Error(ErrorCode::InvalidDimension, "inequality_catalog needs n >= 2");
    using E = EpsPower;
    const Rational N(n);
    std::vector<Inequality> out;
    out.push_back({"i-a", "eps^{2n-2} r^{6-4n-delta} tends to zero",
                   E::eps(2 * N - 2) * E::r_eps(n, 6 - 4 * N, -1), E::one(), Relation::TendsToZero, WeightSide::Base, 2});
    out.push_back({"i-b", "eps^{2n-2} r^{2-2n} tends to zero", E::eps(2 * N - 2) * E::r_eps(n, 2 - 2 * N), E::one(),
                   Relation::TendsToZero, WeightSide::Base, 2});
    out.push_back({"ii", "r^5 + eps^{4n-4} r^{10-6n-delta} much smaller than r^4",
                   E::r_eps(n, 5) + E::eps(4 * N - 4) * E::r_eps(n, 10 - 6 * N, -1), E::r_eps(n, 4),
                   Relation::MuchSmaller, WeightSide::Base, 2});
    out.push_back({"iii", "r^{6-delta} much smaller than r^{2n+1}", E::r_eps(n, 6, -1), E::r_eps(n, 2 * N + 1),
                   Relation::MuchSmaller, WeightSide::Base, 2});
    out.push_back({"iv-a", "R^{2-2n} much smaller than R^{3-2n-delta}", E::big_r_eps(n, 2 - 2 * N),
                   E::big_r_eps(n, 3 - 2 * N, -1), Relation::MuchSmaller, WeightSide::Model, 2});
    out.push_back({"iv-b", "R^{4-4n} much smaller than R^{3-2n-delta}", E::big_r_eps(n, 4 - 4 * N),
                   E::big_r_eps(n, 3 - 2 * N, -1), Relation::MuchSmaller, WeightSide::Model, 2});
    out.push_back({"iv-c", "R^{3-2n-delta} tends to zero", E::big_r_eps(n, 3 - 2 * N, -1), E::one(),
                   Relation::TendsToZero, WeightSide::Model, 2});
    out.push_back({"v", "eps^2 R^{4-delta} bounded by R^{3-2n-delta}", E::eps(2) * E::big_r_eps(n, 4, -1),
                   E::big_r_eps(n, 3 - 2 * N, -1), Relation::BoundedBy, WeightSide::Model, 2});
    return out;
}

bool EstimateLedger::all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const LedgerEntry& e) { return e.pass; });
}

EstimateLedger verify_ledger(int n, const Rational& delta, std::optional<Rational> delta_model) {
    EstimateLedger ledger;
    ledger.n = n;
    ledger.delta = delta;
    ledger.delta_model = delta_model.value_or(window_midpoint(n, WeightSide::Model));
    for (auto& ineq : inequality_catalog(n)) {
        LedgerEntry e;
        e.delta = ineq.side == WeightSide::Base ? ledger.delta : ledger.delta_model;
        e.lhs_exponent = ineq.lhs.leading_exponent(e.delta);
        e.rhs_exponent = ineq.rhs.leading_exponent(e.delta);
        e.gap = e.lhs_exponent - e.rhs_exponent;
        e.pass = ineq.relation == Relation::BoundedBy ? e.gap >= Rational(0) : e.gap > Rational(0);
        e.in_window = stated_window(n, ineq.side).contains(e.delta);
        e.inequality = std::move(ineq);
        ledger.entries.push_back(std::move(e));
    }
    return ledger;
}

DeltaInterval delta_window(int n, const std::vector<std::string>& names) {
    const auto catalog = inequality_catalog(n);
    std::vector<const Inequality*> chosen;
    for (const auto& ineq : catalog) {
        const bool wanted = names.empty() ? ineq.side == WeightSide::Base
                                          : std::find(names.begin(), names.end(), ineq.name) != names.end();
        if (wanted) chosen.push_back(&ineq);
    }
    if (!names.empty() && chosen.size() != names.size())
        throw Error(ErrorCode::Precondition, "unknown inequality name in delta_window request");
    for (const auto* c : chosen)
        if (c->side != chosen.front()->side)
            throw Error(ErrorCode::Precondition, "delta_window cannot mix base-side and model-side weights");

    DeltaInterval window;  // whole line
    for (const auto* ineq : chosen) {
        if (ineq->rhs.terms().size() != 1)
            throw Error(ErrorCode::Precondition, "delta_window needs a single-term right-hand side");
        const AffineExponent rhs = ineq->rhs.terms().front().exponent;
        const bool closed = ineq->relation == Relation::BoundedBy;
        for (const auto& t : ineq->lhs.terms()) {
            // (a + b delta) > 0, or >= 0 for a bounded-by relation
            const Rational a = t.exponent.constant - rhs.constant;
            const Rational b = t.exponent.delta - rhs.delta;
            DeltaInterval piece;
            if (b == Rational(0)) {
                if (!(a > Rational(0) || (closed && a == Rational(0)))) piece.empty = true;
            } else if (b > Rational(0)) {
                piece.lo = -a / b;
                piece.lo_closed = closed;
            } else {
                piece.hi = -a / b;
                piece.hi_closed = closed;
            }
            window = window.intersect(piece);
        }
    }
    return window;
}

}  // namespace blowup
