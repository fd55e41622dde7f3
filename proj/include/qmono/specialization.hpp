#pragma once

#include "qmono/config.hpp"
#include "qmono/fraction.hpp"
#include "qmono/partitions.hpp"

#include <map>
#include <string>

namespace qmono {

/// {a, b, q}: the universe of every specialization on (a - b)/(1 - q).
inline const UniversePtr& spec_universe()
{
    static const UniversePtr u = make_universe({"a", "b", "q"});
    return u;
}

/// {q, t}: coefficient universe for the a=1, b=t style specializations.
inline const UniversePtr& qt_universe()
{
    static const UniversePtr u = make_universe({"q", "t"});
    return u;
}

enum class SpecFormula { theorem1, theorem3, oracle_powersum, oracle_direct };

inline std::string to_string(SpecFormula f)
{
    switch (f) {
    case SpecFormula::theorem1: return "theorem1";
    case SpecFormula::theorem3: return "theorem3";
    case SpecFormula::oracle_powersum: return "oracle-powersum";
    case SpecFormula::oracle_direct: return "oracle-direct";
    }
    return "?";
}

struct SpecResult {
    Partition partition;
    FactoredFraction value;
    SpecFormula formula = SpecFormula::theorem1;
};

namespace detail {

inline Polynomial spec_var(const char* name, unsigned e = 1)
{
    return Polynomial::variable(spec_universe(), name, e);
}

/// a^i q^j - b^k
inline Polynomial binomial_ab(unsigned ea, unsigned eq, unsigned eb)
{
    return spec_var("a", ea) * spec_var("q", eq) - spec_var("b", eb);
}

/// 1 - q^e
inline Polynomial one_minus_q(unsigned e)
{
    return Polynomial::constant(spec_universe(), 1) - spec_var("q", e);
}

/// Shared shape of both closed forms: Σ_c Π_i (a^{c_i} q^{shift(c,i)} - b^{c_i}) / (1 - q^{[c_i]}).
template <class Shift>
FactoredFraction derangement_sum(const Partition& mu, const Caps& caps, Shift shift)
{
    std::vector<FactoredFraction> terms;
    for (const auto& c : derangements(mu, caps)) {
        Polynomial num = Polynomial::constant(spec_universe(), 1);
        std::vector<Factor> den;
        for (std::size_t i = 1; i <= c.entries.size(); ++i) {
            auto ci = static_cast<unsigned>(c.entries[i - 1]);
            num *= binomial_ab(ci, shift(c, i), ci);
            den.push_back({one_minus_q(static_cast<unsigned>(c.prefix(i))), 1});
        }
        terms.emplace_back(std::move(num), std::move(den));
    }
    return sum(terms);
}

} // namespace detail

/// Z_μ: the prefix-sum closed form of m_μ[(a - b)/(1 - q)].
inline SpecResult spec_Z(const Partition& mu, const Caps& caps = {})
{
    auto value = detail::derangement_sum(mu, caps, [](const Derangement& c, std::size_t i) {
        return static_cast<unsigned>(c.prefix(i - 1));
    });
    return {mu, std::move(value), SpecFormula::theorem1};
}

/// W_μ: the same sum with q^{(l-i) c_i} in place of q^{[c_{i-1}]}.
inline SpecResult spec_W(const Partition& mu, const Caps& caps = {})
{
    auto l = static_cast<std::size_t>(mu.length());
    auto value = detail::derangement_sum(mu, caps, [l](const Derangement& c, std::size_t i) {
        return static_cast<unsigned>((l - i) * static_cast<std::size_t>(c.entries[i - 1]));
    });
    return {mu, std::move(value), SpecFormula::theorem3};
}

enum class GeneratorKind { elementary, complete, power };

/// e_n, h_n or p_n on (a - b)/(1 - q) as products.
inline SpecResult spec_generator(GeneratorKind kind, int n)
{
    if (n < 1)
        throw UsageError("generator degree must be at least 1");
    auto un = static_cast<unsigned>(n);
    Polynomial num = Polynomial::constant(spec_universe(), 1);
    std::vector<Factor> den;
    switch (kind) {
    case GeneratorKind::elementary:
        for (unsigned i = 1; i <= un; ++i) {
            num *= detail::binomial_ab(1, i - 1, 1);
            den.push_back({detail::one_minus_q(i), 1});
        }
        break;
    case GeneratorKind::complete:
        for (unsigned i = 1; i <= un; ++i) {
            num *= detail::spec_var("a") - detail::spec_var("b") * detail::spec_var("q", i - 1);
            den.push_back({detail::one_minus_q(i), 1});
        }
        break;
    case GeneratorKind::power:
        num = detail::binomial_ab(un, 0, un);
        den.push_back({detail::one_minus_q(un), 1});
        break;
    }
    std::vector<int> parts;
    if (kind == GeneratorKind::power)
        parts = {n};
    else
        parts.assign(un, 1);
    Partition shape(std::move(parts));
    return {shape, FactoredFraction(std::move(num), std::move(den)), SpecFormula::theorem1};
}

/// m_μ through the cycle expansion in power sums. Permutations with the same
/// multiset of cycle part-sums contribute identical products, so they are
/// counted first and each product is built once.
inline SpecResult spec_oracle_powersum(const Partition& mu, const Caps& caps = {})
{
    int l = static_cast<int>(mu.length());
    std::map<std::vector<int>, long> counts;
    for (const auto& perm : permutations_with_cycles(l, caps)) {
        std::vector<int> sums;
        for (const auto& cyc : perm.cycles) {
            int s = 0;
            for (int j : cyc)
                s += mu.parts()[static_cast<std::size_t>(j - 1)];
            sums.push_back(s);
        }
        std::sort(sums.begin(), sums.end());
        long sign = (l - perm.cycle_count()) % 2 ? -1 : 1;
        counts[sums] += sign;
    }
    std::vector<FactoredFraction> terms;
    for (const auto& [sums, count] : counts) {
        if (count == 0)
            continue;
        Polynomial num = Polynomial::constant(spec_universe(), Rational(count));
        std::vector<Factor> den;
        for (int s : sums) {
            auto us = static_cast<unsigned>(s);
            num *= detail::binomial_ab(us, 0, us);
            den.push_back({detail::one_minus_q(us), 1});
        }
        terms.emplace_back(std::move(num), std::move(den));
    }
    FactoredFraction total = sum(terms);
    total = total * Rational(Rational(1) / Rational(mu.multiplicity_factorial_product()));
    return {mu, std::move(total), SpecFormula::oracle_powersum};
}

/// m_μ(1, q, ..., q^{N-1}) by summing q^{Σ e_i (i-1)} over the distinct
/// exponent vectors that rearrange μ padded with zeros.
inline SpecResult spec_oracle_direct(const Partition& mu, int N)
{
    if (N < static_cast<int>(mu.length()))
        throw UsageError("direct evaluation needs at least as many letters as parts");
    std::vector<int> e(mu.parts().begin(), mu.parts().end());
    e.resize(static_cast<std::size_t>(N), 0);
    std::sort(e.begin(), e.end());
    std::vector<Polynomial::Term> terms;
    do {
        unsigned d = 0;
        for (std::size_t i = 0; i < e.size(); ++i)
            d += static_cast<unsigned>(e[i]) * static_cast<unsigned>(i);
        Monomial m;
        m.set(2, d);
        terms.push_back({m, 1});
    } while (std::next_permutation(e.begin(), e.end()));
    return {mu, FactoredFraction(Polynomial(spec_universe(), std::move(terms))), SpecFormula::oracle_direct};
}

/// Every numerator term has degree |μ| in a and b jointly and no denominator
/// factor involves a or b.
inline bool is_homogeneous(const SpecResult& r)
{
    const auto& v = r.value;
    if (v.is_zero())
        return true;
    auto u = v.universe();
    auto ia = u->index_of("a"), ib = u->index_of("b");
    if (!ia || !ib)
        return false;
    for (const auto& f : v.denominator_factors())
        if (f.poly.degree_in(*ia) || f.poly.degree_in(*ib))
            return false;
    for (const auto& t : v.numerator().terms())
        if (static_cast<int>(t.monomial.exp[*ia] + t.monomial.exp[*ib]) != r.partition.weight())
            return false;
    return true;
}

/// Substitutes values for a and b (q stays q) into a result over {a,b,q};
/// the values must live in `target`, which must contain q.
inline FactoredFraction specialize_ab(const FactoredFraction& f, const FactoredFraction& a, const FactoredFraction& b,
                                      const UniversePtr& target)
{
    return substitute(f, {{"a", a}, {"b", b}}, target);
}

/// Z_μ(a, b, q) for values of a and b in `target`.
inline FactoredFraction Z_at(const Partition& mu, const FactoredFraction& a, const FactoredFraction& b,
                             const UniversePtr& target, const Caps& caps = {})
{
    return specialize_ab(spec_Z(mu, caps).value, a, b, target);
}

namespace detail {

inline void require_nonempty(const Partition& mu)
{
    if (mu.weight() == 0)
        throw UsageError("recurrence checks need a nonempty partition");
}

inline FactoredFraction qt_var(const char* name, unsigned e = 1)
{
    return FactoredFraction(Polynomial::variable(qt_universe(), name, e));
}

inline FactoredFraction qt_const(const Rational& c) { return FactoredFraction::constant(qt_universe(), c); }

inline Polynomial qt_one_minus(const char* name, unsigned e)
{
    return Polynomial::constant(qt_universe(), 1) - Polynomial::variable(qt_universe(), name, e);
}

} // namespace detail

/// (1 - q^{|μ|}) Z_μ = Σ_i (a^i q^{|μ|-i} - b^i) Z_{μ∖i}
inline bool check_prop3(const Partition& mu, const Caps& caps = {})
{
    detail::require_nonempty(mu);
    auto w = static_cast<unsigned>(mu.weight());
    FactoredFraction lhs = spec_Z(mu, caps).value * FactoredFraction(detail::one_minus_q(w));
    std::vector<FactoredFraction> rhs;
    for (int i : mu.distinct_parts()) {
        auto ui = static_cast<unsigned>(i);
        rhs.push_back(spec_Z(mu.without(i), caps).value * FactoredFraction(detail::binomial_ab(ui, w - ui, ui)));
    }
    return frac_eq(lhs, sum(rhs));
}

/// (1 - q^{|μ|}) W_μ(a,b,q) = Σ_i (a^i - b^i) W_{μ∖i}(qa,b,q)
inline bool check_prop4(const Partition& mu, const Caps& caps = {})
{
    detail::require_nonempty(mu);
    auto w = static_cast<unsigned>(mu.weight());
    FactoredFraction lhs = spec_W(mu, caps).value * FactoredFraction(detail::one_minus_q(w));
    Bindings shift{{"a", FactoredFraction(detail::spec_var("q") * detail::spec_var("a"))}};
    std::vector<FactoredFraction> rhs;
    for (int i : mu.distinct_parts()) {
        auto ui = static_cast<unsigned>(i);
        auto sub = substitute(spec_W(mu.without(i), caps).value, shift);
        rhs.push_back(sub * FactoredFraction(detail::binomial_ab(ui, 0, ui)));
    }
    return frac_eq(lhs, sum(rhs));
}

/// With a=1, b=t: (1 - q^{|μ|}) m_μ = Σ_i (q^{|μ|-i} - t^i) m_{μ∖i}
inline bool check_theorem2(const Partition& mu, const Caps& caps = {})
{
    detail::require_nonempty(mu);
    auto w = static_cast<unsigned>(mu.weight());
    auto one = detail::qt_const(1), t = detail::qt_var("t");
    FactoredFraction lhs = Z_at(mu, one, t, qt_universe(), caps) * FactoredFraction(detail::qt_one_minus("q", w));
    std::vector<FactoredFraction> rhs;
    for (int i : mu.distinct_parts()) {
        auto ui = static_cast<unsigned>(i);
        Polynomial coeff = Polynomial::variable(qt_universe(), "q", w - ui) - Polynomial::variable(qt_universe(), "t", ui);
        rhs.push_back(Z_at(mu.without(i), one, t, qt_universe(), caps) * FactoredFraction(coeff));
    }
    return frac_eq(lhs, sum(rhs));
}

/// (1 - q^{|μ|}) Z_μ(1,t,q) = Σ_i (1 - t^i) Z_{μ∖i}(q,t,q)
inline bool check_theorem4(const Partition& mu, const Caps& caps = {})
{
    detail::require_nonempty(mu);
    auto w = static_cast<unsigned>(mu.weight());
    auto one = detail::qt_const(1), t = detail::qt_var("t"), q = detail::qt_var("q");
    FactoredFraction lhs = Z_at(mu, one, t, qt_universe(), caps) * FactoredFraction(detail::qt_one_minus("q", w));
    std::vector<FactoredFraction> rhs;
    for (int i : mu.distinct_parts()) {
        auto ui = static_cast<unsigned>(i);
        rhs.push_back(Z_at(mu.without(i), q, t, qt_universe(), caps) * FactoredFraction(detail::qt_one_minus("t", ui)));
    }
    return frac_eq(lhs, sum(rhs));
}

/// q^{k(k-1)/2} Π_{i=1..k} (1 - q^{N-i+1})/(1 - q^i), over {a,b,q}.
inline FactoredFraction gauss_binomial_scaled(int k, int N)
{
    Polynomial num = detail::spec_var("q", static_cast<unsigned>(k * (k - 1) / 2));
    std::vector<Factor> den;
    for (int i = 1; i <= k; ++i) {
        num *= detail::one_minus_q(static_cast<unsigned>(N - i + 1));
        den.push_back({detail::one_minus_q(static_cast<unsigned>(i)), 1});
    }
    return FactoredFraction(std::move(num), std::move(den));
}

/// a=1, b=q^N over {a,b,q}.
inline FactoredFraction evaluate_at_geometric(const FactoredFraction& f, int N)
{
    return substitute(f, {{"a", FactoredFraction::constant(spec_universe(), 1)},
                          {"b", FactoredFraction(detail::spec_var("q", static_cast<unsigned>(N)))}});
}

} // namespace qmono
