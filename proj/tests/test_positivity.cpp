#include <catch_amalgamated.hpp>

#include "qmono/positivity.hpp"
#include "support/oracle.hpp"

using namespace qmono;

namespace {

Partition mu(std::vector<int> parts) { return Partition(std::move(parts)); }

Polynomial P(const char* text) { return parse_polynomial(text, qt_universe()); }

/// H_μ(q,t) at a rational point, from its definition as P_μ(q)(1-q)^l / Π(q^{l-i} - t)
/// times the derangement sum, all in plain rationals.
Rational H_at(const Partition& m, const Rational& q, const Rational& t)
{
    int l = m.length();
    Rational p = 1;
    for (unsigned s = 1; s < (1u << l); ++s) {
        int total = 0;
        for (int i = 0; i < l; ++i)
            if (s & (1u << i))
                total += m[static_cast<std::size_t>(i)];
        p *= (1 - rational_pow(q, static_cast<unsigned>(total))) / (1 - q);
    }
    Rational sum = 0;
    std::vector<int> c(m.parts().rbegin(), m.parts().rend());
    do {
        Rational term = 1;
        int prefix = 0;
        for (int i = 1; i <= l; ++i) {
            int ci = c[static_cast<std::size_t>(i - 1)];
            prefix += ci;
            term *= (rational_pow(q, static_cast<unsigned>((l - i) * ci)) - rational_pow(t, static_cast<unsigned>(ci)))
                    / (1 - rational_pow(q, static_cast<unsigned>(prefix)));
        }
        sum += term;
    } while (std::next_permutation(c.begin(), c.end()));
    Rational scale = p;
    for (int i = 1; i <= l; ++i)
        scale *= (1 - q) / (rational_pow(q, static_cast<unsigned>(l - i)) - t);
    return scale * sum;
}

} // namespace

TEST_CASE("P_poly examples", "[positivity]")
{
    CHECK(P_poly(mu({2, 1})) == P("(1 + q)*(1 + q + q^2)"));
    CHECK(P_poly(mu({4})) == P("1 + q + q^2 + q^3"));
    CHECK(P_poly(mu({1, 1})) == P("1 + q"));
}

TEST_CASE("H_poly examples", "[positivity]")
{
    CHECK(H_poly(mu({2, 1})) == P("1 + 2*q + 2*t + q*t"));
    CHECK(H_poly(mu({3})) == P("1 + t + t^2"));
    CHECK(H_poly(mu({1, 1})) == P("1"));
    CHECK(H_nk_closed(2, 1) == P("1 + 2*q + 2*t + q*t"));
}

TEST_CASE("H agrees with its defining quotient pointwise", "[positivity][property]")
{
    std::mt19937 rng(271828);
    for (const auto& p : partitions_up_to(6)) {
        Polynomial h = H_poly(p);
        for (int trial = 0; trial < 2; ++trial) {
            auto x = testing::random_point(rng, 2);
            Rational q = x[0], t = x[1];
            bool pole = q == 0 || q == 1 || q == -1;
            for (int s = 1; s <= p.weight() && !pole; ++s)
                pole = rational_pow(q, static_cast<unsigned>(s)) == 1;
            for (int i = 0; i < p.length() && !pole; ++i)
                pole = rational_pow(q, static_cast<unsigned>(i)) == t;
            if (pole)
                continue;
            INFO(p.to_string());
            CHECK(testing::evaluate(h, x) == H_at(p, q, t));
        }
    }
}

TEST_CASE("positivity, Hbar and factorization up to weight 6", "[positivity]")
{
    for (const auto& p : partitions_up_to(6)) {
        INFO(p.to_string());
        auto r = thm8_check(p);
        CHECK(r.nonnegative_integers);
        CHECK(r.hbar_is_polynomial);
        CHECK(r.identity_holds);
        CHECK(r.prop5_consequence);
    }
    auto r = thm8_check(mu({2, 2}));
    CHECK(r.ok());
}

TEST_CASE("cancellation choice does not change H", "[positivity]")
{
    for (const auto& p : partitions_up_to(7)) {
        if (p.empty() || p.length() > 5)
            continue;
        INFO(p.to_string());
        CHECK(H_poly(p, {}, SubsetChoice::last) == H_poly(p));
    }
}

TEST_CASE("closed form for two distinct parts", "[positivity]")
{
    for (int n = 2; n <= 5; ++n)
        for (int k = 1; k < n; ++k)
            CHECK(H_nk_closed(n, k) == H_poly(mu({n, k})));
    CHECK_THROWS_AS(H_nk_closed(2, 2), NotApplicableError);
    CHECK_THROWS_AS(H_nk_closed(1, 2), UsageError);
}

TEST_CASE("Hbar shifts exponents and rejects negative ones", "[positivity]")
{
    auto h = H_poly(mu({2, 1}));
    auto hb = H_bar(h, mu({2, 1}));
    REQUIRE(hb);
    // q(1 + 2q + 2/q + 1) = 2 + 2q + 2q^2
    CHECK(*hb == P("2 + 2*q + 2*q^2"));
    CHECK_FALSE(H_bar(P("t^3"), mu({2, 1})));
    CHECK_FALSE(has_nonnegative_integer_coefficients(P("1 - q")));
    CHECK_FALSE(has_nonnegative_integer_coefficients(P("1/2*q")));
}

TEST_CASE("subset cap", "[positivity]")
{
    Caps caps;
    caps.max_subset_length = 2;
    CHECK_THROWS_AS(P_poly(mu({1, 1, 1}), caps), ResourceLimitError);
    CHECK_THROWS_AS(H_poly(mu({1, 1, 1}), caps), ResourceLimitError);
}
