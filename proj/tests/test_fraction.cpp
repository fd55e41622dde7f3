#include <catch_amalgamated.hpp>

#include "qmono/fraction.hpp"
#include "support/oracle.hpp"

using namespace qmono;
using qmono::testing::evaluate;

namespace {

UniversePtr abqt()
{
    static const UniversePtr u = make_universe({"a", "b", "q", "t"});
    return u;
}

Polynomial P(const char* text) { return parse_polynomial(text, abqt()); }

FactoredFraction F(const char* num, std::vector<const char*> den = {})
{
    std::vector<Factor> fs;
    for (auto d : den)
        fs.push_back({P(d), 1});
    return FactoredFraction(P(num), std::move(fs));
}

FactoredFraction V(const char* text) { return FactoredFraction(P(text)); }

} // namespace

TEST_CASE("frac_eq examples", "[fraction]")
{
    CHECK(frac_eq(F("a^2 - b^2", {"1 - q^2"}), F("(a-b)*(a+b)", {"1 - q", "1 + q"})));
    CHECK_FALSE(frac_eq(F("a - b", {"1 - q"}), F("a + b", {"1 - q"})));
    CHECK(frac_eq(F("1 - q^3", {"1 - q"}), V("1 + q + q^2")));
}

TEST_CASE("zero denominator factor is rejected", "[fraction]")
{
    CHECK_THROWS_AS(F("a", {"0"}), InvalidValueError);
    CHECK_THROWS_AS(V("a") / V("0"), InvalidValueError);
}

TEST_CASE("factor normalization", "[fraction]")
{
    // (q - 1) and (1 - q) become the same factor, sign moves to the numerator
    auto f = F("1", {"q - 1"});
    auto g = F("-1", {"1 - q"});
    REQUIRE(f.denominator_factors().size() == 1);
    CHECK(f.denominator_factors()[0].poly == g.denominator_factors()[0].poly);
    CHECK(f.numerator() == g.numerator());
    // constants are folded into the numerator
    auto h = F("a", {"2"});
    CHECK(h.is_polynomial());
    CHECK(h.numerator() == P("1/2*a"));
    // repeated factors merge
    auto m = F("1", {"1 - q", "1 - q"});
    REQUIRE(m.denominator_factors().size() == 1);
    CHECK(m.denominator_factors()[0].multiplicity == 2);
}

TEST_CASE("substitute examples", "[fraction]")
{
    // h_2 on (a-b)/(1-q) at a=1, b=q^2 is h_2(1,q) = 1 + q + q^2
    auto h2 = F("(a - b*q)*(a - b)", {"1 - q", "1 - q^2"});
    auto at = substitute(h2, {{"a", V("1")}, {"b", V("q^2")}});
    CHECK(frac_eq(at, V("1 + q + q^2")));

    for (unsigned n = 1; n <= 4; ++n) {
        auto pn = FactoredFraction(P("a").pow(n) - P("b").pow(n), {{P("1") - P("q").pow(n), 1}});
        CHECK(substitute(pn, {{"b", V("a")}}).is_zero());
    }

    CHECK(frac_eq(substitute(F("1 - t", {"1 - q"}), {{"t", V("q")}}), V("1")));
}

TEST_CASE("substitution onto a pole is reported", "[fraction]")
{
    CHECK_THROWS_AS(substitute(F("a", {"1 - t"}), {{"t", V("1")}}), PoleError);
    CHECK_THROWS_AS(substitute(F("a", {"q - t"}), {{"t", V("q")}}), PoleError);
}

TEST_CASE("fractional bindings", "[fraction]")
{
    std::mt19937 rng(5);
    auto inv_t = FactoredFraction(P("1"), {{P("t"), 1}});
    auto half = FactoredFraction(P("a + b"), {{P("1 - q"), 1}});
    for (int trial = 0; trial < 40; ++trial) {
        Polynomial n = testing::random_polynomial(rng, abqt(), 4, 3);
        Polynomial d = testing::random_nonzero_polynomial(rng, abqt(), 3, 2);
        if (d.is_constant())
            continue;
        FactoredFraction f(n, {{d, 1}});
        FactoredFraction s;
        try {
            s = substitute(f, {{"t", inv_t}, {"a", half}});
        } catch (const PoleError&) {
            continue;
        }
        auto x = testing::random_point(rng, 4);
        if (x[3] == 0 || x[2] == 1)
            continue;
        auto y = x;
        y[3] = 1 / x[3];
        y[0] = (x[0] + x[1]) / (1 - x[2]);
        auto lhs = evaluate(s, x);
        auto rhs = evaluate(f, y);
        if (lhs && rhs)
            CHECK(*lhs == *rhs);
    }
    // t^2 + q t at t -> 1/t is (1 + q t) / t^2
    auto e = substitute(V("t^2 + q*t"), {{"t", inv_t}});
    CHECK(frac_eq(e, FactoredFraction(P("1 + q*t"), {{P("t"), 2}})));
    REQUIRE(e.denominator_factors().size() == 1);
    CHECK(e.denominator_factors()[0].multiplicity == 2);
}

TEST_CASE("frac_eq is an equivalence relation", "[fraction][property]")
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        Polynomial n = testing::random_polynomial(rng, abqt());
        Polynomial d1 = testing::random_nonzero_polynomial(rng, abqt());
        Polynomial d2 = testing::random_nonzero_polynomial(rng, abqt());
        Polynomial k1 = testing::random_nonzero_polynomial(rng, abqt());
        Polynomial k2 = testing::random_nonzero_polynomial(rng, abqt());
        // three representations of the same value
        FactoredFraction f(n, {{d1, 1}, {d2, 1}});
        FactoredFraction g(n * k1, {{d1 * k1, 1}, {d2, 1}});
        FactoredFraction h(n * k1 * k2, {{d1, 1}, {k1, 1}, {d2 * k2, 1}});
        CHECK(frac_eq(f, f));
        CHECK(frac_eq(f, g));
        CHECK(frac_eq(g, f));
        CHECK(frac_eq(g, h));
        CHECK(frac_eq(f, h));
        FactoredFraction other(n + P("1"), {{d1, 1}, {d2, 1}});
        CHECK_FALSE(frac_eq(f, other));
    }
}

TEST_CASE("field operations agree with pointwise evaluation", "[fraction][property]")
{
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<FactoredFraction> fs;
        for (int i = 0; i < 4; ++i)
            fs.emplace_back(testing::random_polynomial(rng, abqt()),
                            std::vector<Factor>{{testing::random_nonzero_polynomial(rng, abqt()), 1}});
        auto total = sum(fs);
        auto pairwise = fs[0] + fs[1] + fs[2] + fs[3];
        CHECK(frac_eq(total, pairwise));
        auto prod = fs[0] * fs[1] - fs[2];
        auto x = testing::random_point(rng, 4);
        std::vector<std::optional<Rational>> vals;
        for (auto& f : fs)
            vals.push_back(evaluate(f, x));
        auto vt = evaluate(total, x);
        auto vp = evaluate(prod, x);
        if (vals[0] && vals[1] && vals[2] && vals[3] && vt && vp) {
            CHECK(*vt == *vals[0] + *vals[1] + *vals[2] + *vals[3]);
            CHECK(*vp == *vals[0] * *vals[1] - *vals[2]);
        }
        if (!fs[3].is_zero()) {
            auto quo = fs[0] / fs[3];
            auto vq = evaluate(quo, x);
            if (vq && vals[0] && vals[3] && *vals[3] != 0)
                CHECK(*vq == *vals[0] / *vals[3]);
        }
    }
}

TEST_CASE("simplified cancels exact divisors only", "[fraction]")
{
    auto f = F("1 - q^3", {"1 - q", "1 - q^2"}).simplified();
    CHECK(f.numerator() == P("1 + q + q^2"));
    REQUIRE(f.denominator_factors().size() == 1);
    CHECK(frac_eq(f, F("1 - q^3", {"1 - q", "1 - q^2"})));
}

TEST_CASE("text form of a fraction", "[fraction]")
{
    CHECK(F("a - b", {"1 - q"}).to_string() == "(a - b) / (-q + 1)");
    CHECK(F("1", {"1 - q", "1 - q", "1 + q"}).to_string() == "(1) / ((-q + 1)^2 * (q + 1))");
    CHECK(V("a").to_string() == "a");
}
