#include <cmath>

#include "helpers.hpp"

#include "blowup/asymptotics.hpp"

using namespace blowup;

namespace {

const LedgerEntry& entry(const EstimateLedger& l, const std::string& name) {
    for (const auto& e : l.entries)
        if (e.inequality.name == name) return e;
    FAIL("no ledger entry " << name);
    return l.entries.front();
}

}  // namespace

TEST_CASE("parse_rational") {
    CHECK(parse_rational("-3/2") == Rational(-3, 2));
    CHECK(parse_rational("4/6") == Rational(2, 3));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("0.5") == Rational(1, 2));
    CHECK(parse_rational("-1.25") == Rational(-5, 4));
    CHECK(parse_rational("-0.1") == Rational(-1, 10));
    CHECK(to_string(Rational(-7, 50)) == "-7/50");
    CHECK_ERROR_CODE(parse_rational("1/0"), ErrorCode::Parse);
    CHECK_ERROR_CODE(parse_rational("x"), ErrorCode::Parse);
    CHECK_ERROR_CODE(parse_rational("1.2.3"), ErrorCode::Parse);
}

TEST_CASE("glue radii") {
    const GlueRadii g = glue_radii(1e-3, 2);
    CHECK(g.r == doctest::Approx(std::pow(10.0, -1.8)).epsilon(1e-14));
    CHECK(g.r == doctest::Approx(1.5849e-2).epsilon(1e-4));
    for (int n = 2; n <= 6; ++n) {
        const GlueRadii h = glue_radii(0.03, n);
        CHECK(h.big_r * 0.03 == doctest::Approx(h.r).epsilon(1e-14));
        CHECK(h.big_r_exponent == Rational(-2, 2 * n + 1));
        CHECK(h.r_exponent == Rational(2 * n - 1, 2 * n + 1));
        CHECK(h.r_exponent - h.big_r_exponent == Rational(1));
    }
    CHECK_ERROR_CODE(glue_radii(1.0, 3), ErrorCode::OutOfDomain);
    CHECK_ERROR_CODE(glue_radii(0.0, 3), ErrorCode::OutOfDomain);
}

TEST_CASE("EpsPower arithmetic") {
    const EpsPower a = EpsPower::eps(1) + EpsPower::eps(1);
    REQUIRE(a.terms().size() == 1);
    CHECK(a.terms()[0].coefficient == Rational(2));
    const EpsPower b = EpsPower::eps(2) + EpsPower::eps(Rational(1, 2), 1);
    CHECK(b.leading_exponent(0) == Rational(1, 2));
    CHECK(b.leading_exponent(3) == Rational(2));
    CHECK((b * EpsPower::eps(-1)).leading_exponent(0) == Rational(-1, 2));
    CHECK((EpsPower::eps(1) + EpsPower::eps(1).scaled(-1)).is_zero());
    CHECK(EpsPower::r_eps(3, 7).leading_exponent(0) == Rational(5));
}

TEST_CASE("exponent_gap") {
    for (int n = 2; n <= 6; ++n) {
        CHECK(exponent_gap(EpsPower::r_eps(n, 5), EpsPower::r_eps(n, 4)) == r_exponent(n));
        const Rational N(n);
        CHECK(exponent_gap(EpsPower::eps(2 * N - 2) * EpsPower::r_eps(n, 2 - 2 * N), EpsPower::one()) ==
              (2 * N - 2) * Rational(2, 2 * n + 1));
    }
    const EpsPower x = EpsPower::big_r_eps(3, 2, -1);
    CHECK(exponent_gap(x, x, Rational(1, 3)) == Rational(0));
    CHECK_ERROR_CODE(exponent_gap(EpsPower(), EpsPower::one()), ErrorCode::Precondition);
}

TEST_CASE("verify_ledger values") {
    CHECK(entry(verify_ledger(3, Rational(-3, 2)), "i-a").gap == Rational(11, 14));
    CHECK(entry(verify_ledger(2, Rational(1, 2)), "ii").pass);
    const LedgerEntry& fail = entry(verify_ledger(2, Rational(9, 10)), "ii");
    CHECK_FALSE(fail.pass);
    CHECK(fail.gap == Rational(-7, 50));
    CHECK_FALSE(fail.in_window);
}

TEST_CASE("ledger at the window midpoints") {
    for (int n = 2; n <= 6; ++n) {
        const EstimateLedger l = verify_ledger(n, window_midpoint(n, WeightSide::Base));
        for (const auto& e : l.entries) {
            const std::string& name = e.inequality.name;
            if (name == "iii") continue;  // strict only for n = 2; evaluated, not asserted
            CHECK_MESSAGE(e.pass, "n = ", n, " ", name, " gap ", to_string(e.gap));
            CHECK(e.in_window);
        }
        CHECK(entry(l, "v").gap == Rational(0));
    }
    CHECK(entry(verify_ledger(2, Rational(1, 3)), "iii").pass);
}

TEST_CASE("delta windows") {
    const DeltaInterval ii = delta_window(2, {"ii"});
    REQUIRE(ii.hi);
    CHECK(*ii.hi == Rational(2, 3));
    CHECK_FALSE(ii.hi_closed);
    CHECK(ii.str() == "(-inf, 2/3)");

    for (int n = 3; n <= 6; ++n) {
        const DeltaInterval stated = stated_window(n, WeightSide::Base);
        const DeltaInterval w = delta_window(n, {"i-a", "i-b"});
        CHECK(w.intersect(stated).str() == stated.str());
    }
    CHECK(delta_window(3).str() == "(-inf, -1)");
    CHECK(stated_window(4, WeightSide::Model).str() == "(0, 1)");

    DeltaInterval above, below;
    above.lo = Rational(1);
    below.hi = Rational(0);
    CHECK(above.intersect(below).empty);
    CHECK(above.intersect(below).str() == "empty");

    CHECK_ERROR_CODE(delta_window(3, {"nope"}), ErrorCode::Precondition);
    CHECK_ERROR_CODE(delta_window(3, {"i-a", "iv-a"}), ErrorCode::Precondition);
}

TEST_CASE("interval membership") {
    const DeltaInterval w = stated_window(3, WeightSide::Base);
    CHECK(w.contains(Rational(-3, 2)));
    CHECK_FALSE(w.contains(Rational(-2)));
    CHECK_FALSE(w.contains(Rational(-1)));
    CHECK(window_midpoint(3, WeightSide::Base) == Rational(-3, 2));
    CHECK(window_midpoint(2, WeightSide::Base) == Rational(1, 3));
}
