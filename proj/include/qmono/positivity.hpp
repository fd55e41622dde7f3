#pragma once

#include "qmono/config.hpp"
#include "qmono/fraction.hpp"
#include "qmono/partitions.hpp"
#include "qmono/specialization.hpp"

#include <bit>
#include <optional>

namespace qmono {

namespace detail {

/// 1 + z + ... + z^{m-1} for a monomial polynomial z.
inline Polynomial geometric_sum(const Polynomial& z, unsigned m)
{
    Polynomial r(z.universe());
    Polynomial power = Polynomial::constant(z.universe(), 1);
    for (unsigned j = 0; j < m; ++j) {
        r += power;
        power *= z;
    }
    return r;
}

/// (x^c - y^c)/(x - y) written out as Σ_j x^j y^{c-1-j}.
inline Polynomial homogeneous_quotient(const Polynomial& x, const Polynomial& y, unsigned c)
{
    Polynomial r(x.universe());
    for (unsigned j = 0; j < c; ++j)
        r += x.pow(j) * y.pow(c - 1 - j);
    return r;
}

inline Polynomial q_of(unsigned e = 1) { return Polynomial::variable(qt_universe(), "q", e); }
inline Polynomial t_of(unsigned e = 1) { return Polynomial::variable(qt_universe(), "t", e); }

/// [m]_q = (1 - q^m)/(1 - q)
inline Polynomial q_integer(unsigned m) { return geometric_sum(q_of(), m); }

inline void check_subset_cap(const Partition& mu, const Caps& caps)
{
    if (mu.length() > caps.max_subset_length)
        throw ResourceLimitError("partition " + mu.to_string() + " has length " + std::to_string(mu.length())
                                 + ", subset-product cap is " + std::to_string(caps.max_subset_length));
}

/// Subsets of positions {1..l} as bitmasks, each with its part-sum.
struct SubsetFactor {
    unsigned mask;
    int size;
    int sum;
};

inline std::vector<SubsetFactor> subset_factors(const Partition& mu)
{
    std::vector<SubsetFactor> out;
    auto l = static_cast<unsigned>(mu.length());
    for (unsigned s = 1; s < (1u << l); ++s) {
        int total = 0;
        for (unsigned i = 0; i < l; ++i)
            if (s & (1u << i))
                total += mu.parts()[i];
        out.push_back({s, std::popcount(s), total});
    }
    // lexicographic order on the sorted index lists
    std::sort(out.begin(), out.end(), [](const SubsetFactor& a, const SubsetFactor& b) {
        unsigned x = a.mask, y = b.mask;
        while (x && y) {
            int ix = std::countr_zero(x), iy = std::countr_zero(y);
            if (ix != iy)
                return ix < iy;
            x &= x - 1;
            y &= y - 1;
        }
        return !x && y;
    });
    return out;
}

} // namespace detail

/// P_μ(q) = Π over nonempty position subsets S of [Σ_{i∈S} μ_i]_q, over {q,t}.
inline Polynomial P_poly(const Partition& mu, const Caps& caps = {})
{
    detail::check_subset_cap(mu, caps);
    Polynomial r = Polynomial::constant(qt_universe(), 1);
    for (const auto& s : detail::subset_factors(mu))
        r *= detail::q_integer(static_cast<unsigned>(s.sum));
    return r;
}

/// Which of the matching subset factors a prefix cancels against.
enum class SubsetChoice { first, last };

/// H_μ(q,t): P_μ(q) times the derangement sum, with every quotient written
/// out as a polynomial and each (1 - q^{[c_i]})/(1 - q) cancelled against an
/// unused subset factor of P_μ of size i and part-sum [c_i] (by default the
/// first such subset in lexicographic order).
inline Polynomial H_poly(const Partition& mu, const Caps& caps = {}, SubsetChoice choice = SubsetChoice::first)
{
    detail::check_subset_cap(mu, caps);
    auto subsets = detail::subset_factors(mu);
    auto l = static_cast<unsigned>(mu.length());
    Polynomial total(qt_universe());
    for (const auto& c : derangements(mu, caps)) {
        std::vector<bool> used(subsets.size(), false);
        Polynomial term = Polynomial::constant(qt_universe(), 1);
        for (unsigned i = 1; i <= l; ++i) {
            auto ci = static_cast<unsigned>(c.entries[i - 1]);
            term *= detail::homogeneous_quotient(detail::q_of(l - i), detail::t_of(), ci);
            int prefix = c.prefix(i);
            bool found = false;
            for (std::size_t j = 0; j < subsets.size() && !found; ++j) {
                std::size_t k = choice == SubsetChoice::first ? j : subsets.size() - 1 - j;
                if (!used[k] && subsets[k].size == static_cast<int>(i) && subsets[k].sum == prefix)
                    used[k] = found = true;
            }
            if (!found)
                throw InternalConsistencyError("no subset factor of " + mu.to_string() + " with part-sum "
                                               + std::to_string(prefix));
        }
        for (std::size_t k = 0; k < subsets.size(); ++k)
            if (!used[k])
                term *= detail::q_integer(static_cast<unsigned>(subsets[k].sum));
        total += term;
    }
    return total;
}

/// q^{|μ|-l} H(q, 1/q), or nothing if a negative power of q survives.
inline std::optional<Polynomial> H_bar(const Polynomial& h, const Partition& mu)
{
    long shift = mu.weight() - mu.length();
    std::vector<Polynomial::Term> out;
    for (const auto& t : h.terms()) {
        long e = long(t.monomial.exp[0]) - long(t.monomial.exp[1]) + shift;
        if (e < 0)
            return std::nullopt;
        Monomial m;
        m.set(0, static_cast<unsigned>(e));
        out.push_back({m, t.coeff});
    }
    return Polynomial(qt_universe(), std::move(out));
}

inline bool has_nonnegative_integer_coefficients(const Polynomial& p)
{
    for (const auto& t : p.terms())
        if (t.coeff < 0 || t.coeff.get_den() != 1)
            return false;
    return true;
}

struct PositivityReport {
    Partition partition;
    Polynomial P;
    Polynomial H;
    Polynomial Hbar;
    bool nonnegative_integers = false;
    bool hbar_is_polynomial = false;
    bool identity_holds = false;
    bool prop5_consequence = false;

    bool ok() const { return nonnegative_integers && hbar_is_polynomial && identity_holds && prop5_consequence; }
};

/// Checks m_μ[(1-t)/(1-q)] = (l!/Π m_i!) Π_i (q^{i-1} - t)/(1 - q^i) · H(q,t)/Hbar(q),
/// positivity of H, that Hbar is a polynomial, and
/// (l!/Π m_i!) P_μ(q) = Π_i [i]_q · Hbar(q).
inline PositivityReport thm8_check(const Partition& mu, const Caps& caps = {})
{
    if (mu.empty())
        throw UsageError("positivity check needs a nonempty partition");
    PositivityReport r;
    r.partition = mu;
    r.P = P_poly(mu, caps);
    r.H = H_poly(mu, caps);
    r.nonnegative_integers = has_nonnegative_integer_coefficients(r.H);
    auto hbar = H_bar(r.H, mu);
    r.hbar_is_polynomial = hbar.has_value();
    if (!hbar)
        return r;
    r.Hbar = *hbar;

    auto l = static_cast<unsigned>(mu.length());
    Rational count(mu.arrangement_count());
    Polynomial num = r.H * count;
    std::vector<Factor> den{{r.Hbar, 1}};
    Polynomial one = Polynomial::constant(qt_universe(), 1);
    for (unsigned i = 1; i <= l; ++i) {
        num *= detail::q_of(i - 1) - detail::t_of();
        den.push_back({one - detail::q_of(i), 1});
    }
    auto lhs = Z_at(mu, FactoredFraction::constant(qt_universe(), 1), FactoredFraction(detail::t_of()), qt_universe(),
                    caps);
    r.identity_holds = frac_eq(lhs, FactoredFraction(std::move(num), std::move(den)));

    Polynomial brackets = one;
    for (unsigned i = 1; i <= l; ++i)
        brackets *= detail::q_integer(i);
    r.prop5_consequence = r.P * count == brackets * r.Hbar;
    return r;
}

/// The two-part closed form for μ = (n, k), n > k.
inline Polynomial H_nk_closed(int n, int k)
{
    if (n == k)
        throw NotApplicableError("the closed form needs two distinct parts");
    if (k < 1 || n < k)
        throw UsageError("the closed form needs n > k >= 1");
    auto un = static_cast<unsigned>(n), uk = static_cast<unsigned>(k);
    using detail::geometric_sum;
    using detail::homogeneous_quotient;
    using detail::q_of;
    using detail::t_of;
    return homogeneous_quotient(q_of(), t_of(), un) * geometric_sum(t_of(), uk) * geometric_sum(q_of(), uk)
           + homogeneous_quotient(q_of(), t_of(), uk) * geometric_sum(t_of(), un) * geometric_sum(q_of(), un);
}

} // namespace qmono
