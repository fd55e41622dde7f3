#pragma once

#include "qmono/config.hpp"
#include "qmono/fraction.hpp"
#include "qmono/partitions.hpp"
#include "qmono/specialization.hpp"

#include <array>
#include <bit>
#include <string>

namespace qmono {

/// {x1..xn, y1..yn}, shared per n.
inline const UniversePtr& xy_universe(int n)
{
    static const auto table = [] {
        std::array<UniversePtr, 9> t;
        for (int k = 1; k <= 8; ++k) {
            std::vector<std::string> names;
            for (int i = 1; i <= k; ++i)
                names.push_back("x" + std::to_string(i));
            for (int i = 1; i <= k; ++i)
                names.push_back("y" + std::to_string(i));
            t[static_cast<std::size_t>(k)] = make_universe(names);
        }
        return t;
    }();
    if (n < 1 || n > 8)
        throw UsageError("alphabet size must be between 1 and 8");
    return table[static_cast<std::size_t>(n)];
}

enum class Side { thm6_left, thm6_right, thm7_right };

inline std::string to_string(Side s)
{
    switch (s) {
    case Side::thm6_left: return "thm6-left";
    case Side::thm6_right: return "thm6-right";
    case Side::thm7_right: return "thm7-right";
    }
    return "?";
}

struct SymmetrizedSum {
    int n = 0;
    Side side = Side::thm6_left;
    FactoredFraction value;
};

namespace detail {

using Mask = unsigned;

inline Polynomial xvar(const UniversePtr& u, int i, unsigned e = 1)
{
    return Polynomial::variable(u, "x" + std::to_string(i), e);
}

inline Polynomial yvar(const UniversePtr& u, int i) { return Polynomial::variable(u, "y" + std::to_string(i)); }

/// Π_{i∈S} x_i (bit i-1 of S stands for letter i).
inline Polynomial x_product(const UniversePtr& u, Mask s)
{
    Polynomial r = Polynomial::constant(u, 1);
    for (int i = 1; s; ++i, s >>= 1)
        if (s & 1)
            r *= xvar(u, i);
    return r;
}

inline Polynomial y_product(const UniversePtr& u, Mask s)
{
    Polynomial r = Polynomial::constant(u, 1);
    for (int i = 1; s; ++i, s >>= 1)
        if (s & 1)
            r *= yvar(u, i);
    return r;
}

inline Polynomial one_minus(const Polynomial& p) { return Polynomial::constant(p.universe(), 1) - p; }

/// Σ_{σ ∈ S_k} Π_{i=1..k} step(σ(i), {σ(1),...,σ(i)}), accumulated over
/// subsets: F(S) = Σ_{j∈S} F(S∖j)·step(j, S). `simplify` cancels exact
/// divisors after every subset, which keeps the sums whose partial values
/// are polynomials small.
template <class Step>
FactoredFraction chain_sum(int k, const UniversePtr& u, Step step, bool simplify)
{
    std::vector<FactoredFraction> f(std::size_t{1} << k);
    f[0] = FactoredFraction::constant(u, 1);
    std::vector<Mask> order;
    for (Mask s = 1; s < (Mask{1} << k); ++s)
        order.push_back(s);
    std::stable_sort(order.begin(), order.end(), [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b); });
    for (Mask s : order) {
        std::vector<FactoredFraction> terms;
        for (int j = 1; j <= k; ++j)
            if (s & (Mask{1} << (j - 1)))
                terms.push_back(f[s & ~(Mask{1} << (j - 1))] * step(j, s));
        f[s] = sum(terms);
        if (simplify)
            f[s] = f[s].simplified();
    }
    return f.back();
}

/// Σ_{σ ∈ S_k} Π_{γ cycle of σ} block(γ). The product only depends on the
/// cycle supports, and a set partition with blocks B arises from Π(|B|-1)!
/// permutations, so the sum runs over set partitions: G(S) = Σ_{B∋min S}
/// (|B|-1)!·block(B)·G(S∖B).
template <class Block>
FactoredFraction cycle_sum(int k, const UniversePtr& u, Block block)
{
    std::vector<FactoredFraction> g(std::size_t{1} << k);
    g[0] = FactoredFraction::constant(u, 1);
    for (Mask s = 1; s < (Mask{1} << k); ++s) {
        Mask low = s & (~s + 1);
        Mask rest = s & ~low;
        std::vector<FactoredFraction> terms;
        // every B = low ∪ T with T ⊆ rest
        for (Mask t = rest;; t = (t - 1) & rest) {
            Mask b = low | t;
            auto size = static_cast<unsigned>(std::popcount(b));
            terms.push_back(block(b) * g[s & ~b] * Rational(factorial(size - 1)));
            if (t == 0)
                break;
        }
        g[s] = sum(terms);
    }
    return g.back();
}

} // namespace detail

/// One side of the symmetrized identity on letters 1..k of `u` (k ≤ size of u's alphabet).
inline FactoredFraction symmetrized_value(int k, Side side, const UniversePtr& u)
{
    using detail::Mask;
    switch (side) {
    case Side::thm6_left:
        return detail::chain_sum(k, u, [&](int j, Mask s) {
            Polynomial xs = detail::x_product(u, s);
            return FactoredFraction(detail::yvar(u, j) - xs, {{detail::one_minus(xs), 1}});
        }, false);
    case Side::thm6_right:
        return detail::chain_sum(k, u, [&](int j, Mask s) {
            auto e = static_cast<unsigned>(k - std::popcount(s) + 1);
            return FactoredFraction(detail::yvar(u, j) - detail::xvar(u, j, e),
                                    {{detail::one_minus(detail::x_product(u, s)), 1}});
        }, false);
    case Side::thm7_right:
        return detail::cycle_sum(k, u, [&](Mask b) {
            Polynomial xs = detail::x_product(u, b);
            return FactoredFraction(detail::y_product(u, b) - xs, {{detail::one_minus(xs), 1}});
        });
    }
    throw InternalConsistencyError("unknown side");
}

/// Coefficient of Π_{j∈T} y_j in one side. Both sides are multilinear in the
/// y's, so a side is determined by these 2^k fractions in the x's alone.
inline FactoredFraction symmetrized_coefficient(int k, Side side, const UniversePtr& u, unsigned T)
{
    using detail::Mask;
    auto in_t = [T](int j) { return (T & (Mask{1} << (j - 1))) != 0; };
    auto one = Polynomial::constant(u, 1);
    switch (side) {
    case Side::thm6_left:
        return detail::chain_sum(k, u, [&](int j, Mask s) {
            Polynomial xs = detail::x_product(u, s);
            return FactoredFraction(in_t(j) ? one : Polynomial(u) - xs, {{detail::one_minus(xs), 1}});
        }, false);
    case Side::thm6_right:
        return detail::chain_sum(k, u, [&](int j, Mask s) {
            auto e = static_cast<unsigned>(k - std::popcount(s) + 1);
            return FactoredFraction(in_t(j) ? one : Polynomial(u) - detail::xvar(u, j, e),
                                    {{detail::one_minus(detail::x_product(u, s)), 1}});
        }, false);
    case Side::thm7_right:
        return detail::cycle_sum(k, u, [&](Mask b) {
            Polynomial xs = detail::x_product(u, b);
            if ((b & T) == b)
                return FactoredFraction(one, {{detail::one_minus(xs), 1}});
            if ((b & T) == 0)
                return FactoredFraction(Polynomial(u) - xs, {{detail::one_minus(xs), 1}});
            return FactoredFraction(Polynomial(u));
        });
    }
    throw InternalConsistencyError("unknown side");
}

inline SymmetrizedSum symmetrized_side(int n, Side side, const Caps& caps = {})
{
    if (n < 1)
        throw UsageError("symmetrized sums need n >= 1");
    if (n > caps.max_symmetrized_n)
        throw ResourceLimitError("n=" + std::to_string(n) + " exceeds the symmetrization cap "
                                 + std::to_string(caps.max_symmetrized_n));
    return {n, side, symmetrized_value(n, side, xy_universe(n))};
}

/// Equality of two symmetrized sides. Up to four letters the full values
/// are compared. Beyond that the numerators outgrow memory, so the
/// y-coefficients are compared instead, one T = {1..k} per size k: every side
/// is invariant under relabeling, which carries {1..k} to any k-subset.
inline bool sides_agree(int n, Side a, Side b, const Caps& caps = {})
{
    if (n <= 4)
        return frac_eq(symmetrized_side(n, a, caps).value, symmetrized_side(n, b, caps).value);
    if (n > caps.max_symmetrized_n)
        throw ResourceLimitError("n=" + std::to_string(n) + " exceeds the symmetrization cap "
                                 + std::to_string(caps.max_symmetrized_n));
    const auto& u = xy_universe(n);
    for (int k = 0; k <= n; ++k) {
        unsigned t = (1u << k) - 1;
        if (!frac_eq(symmetrized_coefficient(n, a, u, t), symmetrized_coefficient(n, b, u, t)))
            return false;
    }
    return true;
}

/// Three-way equality of the symmetrized sides.
inline bool symmetrized_identity_holds(int n, const Caps& caps = {})
{
    return sides_agree(n, Side::thm6_left, Side::thm6_right, caps)
           && sides_agree(n, Side::thm6_left, Side::thm7_right, caps);
}

/// Swaps (x_i, y_i) with (x_j, y_j).
inline FactoredFraction relabel(const FactoredFraction& f, int n, int i, int j)
{
    const auto& u = xy_universe(n);
    auto x = [&](int k) { return variable_fraction(u, "x" + std::to_string(k)); };
    auto y = [&](int k) { return variable_fraction(u, "y" + std::to_string(k)); };
    Bindings b{{"x" + std::to_string(i), x(j)}, {"x" + std::to_string(j), x(i)},
               {"y" + std::to_string(i), y(j)}, {"y" + std::to_string(j), y(i)}};
    return substitute(f, b, u);
}

enum class ConstantKind { prop5, littlewood };

/// Σ_{c∈C_μ} Π_i (1 - q^{(l-i+1)c_i})/(1 - q^{[c_i]}) over {q,t}; equals l!/Π m_i!.
inline FactoredFraction prop5_sum(const Partition& mu, const Caps& caps = {})
{
    const auto& u = qt_universe();
    auto l = static_cast<unsigned>(mu.length());
    std::vector<FactoredFraction> terms;
    for (const auto& c : derangements(mu, caps)) {
        Polynomial num = Polynomial::constant(u, 1);
        std::vector<Factor> den;
        for (unsigned i = 1; i <= l; ++i) {
            auto ci = static_cast<unsigned>(c.entries[i - 1]);
            num *= detail::one_minus(Polynomial::variable(u, "q", (l - i + 1) * ci));
            den.push_back({detail::one_minus(Polynomial::variable(u, "q", static_cast<unsigned>(c.prefix(i)))), 1});
        }
        terms.emplace_back(std::move(num), std::move(den));
    }
    return sum(terms);
}

/// Σ_{c∈C_μ} Π_i 1/[c_i]; equals 1/z_μ.
inline Rational littlewood_sum(const Partition& mu, const Caps& caps = {})
{
    Rational total = 0;
    for (const auto& c : derangements(mu, caps)) {
        Integer den = 1;
        for (int s : c.prefix_sums)
            den *= s;
        total += Rational(1) / Rational(den);
    }
    total.canonicalize();
    return total;
}

inline FactoredFraction constant_identity(const Partition& mu, ConstantKind kind, const Caps& caps = {})
{
    if (kind == ConstantKind::prop5)
        return prop5_sum(mu, caps);
    return FactoredFraction::constant(qt_universe(), littlewood_sum(mu, caps));
}

enum class ProductKind { prop7, prop8 };

/// prop7: Σ_σ Π_i (1 - x_{σ(i)}^{n-i+1})/(1 - x_{σ(1)}⋯x_{σ(i)});
/// prop8: Σ_σ Π_i 1/(x_{σ(1)} + ... + x_{σ(i)}). Over {x1..xn, y1..yn}.
inline FactoredFraction prop7_prop8(int n, ProductKind kind, const Caps& caps = {})
{
    if (n < 1)
        throw UsageError("n must be at least 1");
    if (n > caps.max_symmetrized_n)
        throw ResourceLimitError("n=" + std::to_string(n) + " exceeds the symmetrization cap "
                                 + std::to_string(caps.max_symmetrized_n));
    const auto& u = xy_universe(n);
    using detail::Mask;
    if (kind == ProductKind::prop7)
        return detail::chain_sum(n, u, [&](int j, Mask s) {
            auto e = static_cast<unsigned>(n - std::popcount(s) + 1);
            return FactoredFraction(detail::one_minus(detail::xvar(u, j, e)),
                                    {{detail::one_minus(detail::x_product(u, s)), 1}});
        }, true);
    return detail::chain_sum(n, u, [&](int, Mask s) {
        Polynomial total(u);
        for (int i = 1; i <= n; ++i)
            if (s & (Mask{1} << (i - 1)))
                total += detail::xvar(u, i);
        return FactoredFraction(Polynomial::constant(u, 1), {{total, 1}});
    }, true);
}

/// Expected value of prop7_prop8.
inline FactoredFraction prop7_prop8_expected(int n, ProductKind kind)
{
    const auto& u = xy_universe(n);
    if (kind == ProductKind::prop7)
        return FactoredFraction::constant(u, Rational(factorial(static_cast<unsigned>(n))));
    std::vector<Factor> den;
    for (int i = 1; i <= n; ++i)
        den.push_back({detail::xvar(u, i), 1});
    return FactoredFraction(Polynomial::constant(u, 1), std::move(den));
}

enum class AppendixSide { L, R };

/// The substitution recurrences relating f_n to f_{n-1}, where f is the
/// chain side (L) or the cycle side (R).
/// relation 13: f_n(y_n = x_n) = Σ_{i<n} f_{n-1}(x_i → x_i x_n, y_i → y_i x_n)
/// relation 14: f_n(y_n = 1)   = f_{n-1} + Σ_{i<n} f_{n-1}(x_i → x_i x_n)
inline bool appendix_step(int n, int relation, AppendixSide side, const Caps& caps = {})
{
    if (relation != 13 && relation != 14)
        throw UsageError("relation must be 13 or 14");
    if (n < 2)
        throw UsageError("the recurrences need n >= 2");
    if (n > caps.max_symmetrized_n)
        throw ResourceLimitError("n=" + std::to_string(n) + " exceeds the symmetrization cap "
                                 + std::to_string(caps.max_symmetrized_n));
    const auto& u = xy_universe(n);
    Side s = side == AppendixSide::L ? Side::thm6_left : Side::thm7_right;
    FactoredFraction fn = symmetrized_value(n, s, u);
    FactoredFraction prev = symmetrized_value(n - 1, s, u);
    auto xn = detail::xvar(u, n);
    std::string yn = "y" + std::to_string(n);

    FactoredFraction lhs = substitute(fn, {{yn, relation == 13 ? FactoredFraction(xn) : FactoredFraction::constant(u, 1)}});
    std::vector<FactoredFraction> rhs;
    if (relation == 14)
        rhs.push_back(prev);
    for (int i = 1; i < n; ++i) {
        Bindings b{{"x" + std::to_string(i), FactoredFraction(detail::xvar(u, i) * xn)}};
        if (relation == 13)
            b.emplace("y" + std::to_string(i), FactoredFraction(detail::yvar(u, i) * xn));
        rhs.push_back(substitute(prev, b));
    }
    return frac_eq(lhs, sum(rhs));
}

/// Substituting x_i = q^{μ_i}, y_i = (bq/a)^{μ_i} into the chain side and
/// scaling by (-1)^l a^{|μ|} gives Π m_i! q^{|μ|} Z_μ; the same holds for the
/// power side and W_μ.
inline bool specialization_chain(const Partition& mu, const Caps& caps = {})
{
    int l = mu.length();
    if (l < 1)
        throw UsageError("the chain check needs a nonempty partition");
    if (l > caps.max_symmetrized_n)
        throw ResourceLimitError("length " + std::to_string(l) + " exceeds the symmetrization cap");
    const auto& u = xy_universe(l);
    const auto& target = spec_universe();
    auto w = static_cast<unsigned>(mu.weight());
    Bindings b;
    for (int i = 1; i <= l; ++i) {
        auto m = static_cast<unsigned>(mu[static_cast<std::size_t>(i - 1)]);
        b.emplace("x" + std::to_string(i), FactoredFraction(Polynomial::variable(target, "q", m)));
        b.emplace("y" + std::to_string(i),
                  FactoredFraction(Polynomial::variable(target, "b", m) * Polynomial::variable(target, "q", m),
                                   {{Polynomial::variable(target, "a", m), 1}}));
    }
    FactoredFraction scale(Polynomial::variable(target, "a", w) * Rational(l % 2 ? -1 : 1));
    FactoredFraction expected_scale(Polynomial::variable(target, "q", w) * Rational(mu.multiplicity_factorial_product()));
    auto left = substitute(symmetrized_value(l, Side::thm6_left, u), b, target) * scale;
    auto right = substitute(symmetrized_value(l, Side::thm6_right, u), b, target) * scale;
    return frac_eq(left, spec_Z(mu, caps).value * expected_scale)
           && frac_eq(right, spec_W(mu, caps).value * expected_scale);
}

} // namespace qmono
