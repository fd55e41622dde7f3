#pragma once

#include "qmono/polynomial.hpp"

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qmono {

/// A polynomial numerator over a multiset of polynomial denominator factors.
///
/// There is no gcd: the only reduction performed on construction is
/// normalizing each factor (trailing coefficient 1, constants folded into
/// the numerator) and merging identical factors. Equality is decided by
/// cross-multiplication, see frac_eq.
class FactoredFraction {
public:
    struct Factor {
        Polynomial poly;
        unsigned multiplicity = 1;
    };

    FactoredFraction() = default;

    FactoredFraction(Polynomial numerator) // NOLINT(google-explicit-constructor)
        : num_(std::move(numerator))
    {
        universe_ = num_.universe();
    }

    FactoredFraction(Polynomial numerator, std::vector<Factor> denominator)
        : num_(std::move(numerator))
        , den_(std::move(denominator))
    {
        normalize();
    }

    static FactoredFraction constant(UniversePtr u, const Rational& c)
    {
        return FactoredFraction(Polynomial::constant(std::move(u), c));
    }

    const UniversePtr& universe() const noexcept { return universe_; }
    const Polynomial& numerator() const noexcept { return num_; }
    std::span<const Factor> denominator_factors() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const noexcept { return den_.empty(); }

    /// Expanded product of the denominator factors.
    Polynomial denominator() const
    {
        Polynomial d = Polynomial::constant(universe_, 1);
        for (const auto& f : den_)
            d *= f.poly.pow(f.multiplicity);
        return d;
    }

    FactoredFraction operator-() const
    {
        FactoredFraction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend FactoredFraction operator+(const FactoredFraction& a, const FactoredFraction& b)
    {
        if (a.is_zero())
            return b.with_universe(Polynomial::common_universe(a.num_, b.num_));
        if (b.is_zero())
            return a.with_universe(Polynomial::common_universe(a.num_, b.num_));
        std::vector<Factor> lcm = lcm_factors(a.den_, b.den_);
        Polynomial na = a.num_ * cofactor(lcm, a.den_);
        Polynomial nb = b.num_ * cofactor(lcm, b.den_);
        return FactoredFraction(na + nb, std::move(lcm));
    }

    friend FactoredFraction operator-(const FactoredFraction& a, const FactoredFraction& b) { return a + (-b); }

    friend FactoredFraction operator*(const FactoredFraction& a, const FactoredFraction& b)
    {
        if (a.is_zero() || b.is_zero())
            return FactoredFraction(Polynomial(Polynomial::common_universe(a.num_, b.num_)));
        std::vector<Factor> den = a.den_;
        den.insert(den.end(), b.den_.begin(), b.den_.end());
        return FactoredFraction(a.num_ * b.num_, std::move(den));
    }

    friend FactoredFraction operator*(const FactoredFraction& a, const Rational& c)
    {
        FactoredFraction r = a;
        r.num_ = r.num_ * c;
        if (r.num_.is_zero())
            r.den_.clear();
        return r;
    }
    friend FactoredFraction operator*(const Rational& c, const FactoredFraction& a) { return a * c; }

    /// a / b; the numerator of b becomes a denominator factor.
    friend FactoredFraction operator/(const FactoredFraction& a, const FactoredFraction& b)
    {
        if (b.is_zero())
            throw InvalidValueError("division by a zero fraction");
        Polynomial num = a.num_;
        for (const auto& f : b.den_)
            num *= f.poly.pow(f.multiplicity);
        std::vector<Factor> den = a.den_;
        den.push_back({b.num_, 1});
        return FactoredFraction(std::move(num), std::move(den));
    }

    FactoredFraction& operator+=(const FactoredFraction& o) { return *this = *this + o; }
    FactoredFraction& operator-=(const FactoredFraction& o) { return *this = *this - o; }
    FactoredFraction& operator*=(const FactoredFraction& o) { return *this = *this * o; }

    FactoredFraction pow(unsigned e) const
    {
        std::vector<Factor> den = den_;
        for (auto& f : den)
            f.multiplicity *= e;
        return FactoredFraction(num_.pow(e), std::move(den));
    }

    /// Cancels every denominator factor that divides the numerator exactly.
    FactoredFraction simplified() const
    {
        Polynomial num = num_;
        std::vector<Factor> den;
        for (const auto& f : den_) {
            unsigned m = f.multiplicity;
            while (m > 0) {
                auto q = try_divide(num, f.poly);
                if (!q)
                    break;
                num = std::move(*q);
                --m;
            }
            if (m > 0)
                den.push_back({f.poly, m});
        }
        return FactoredFraction(std::move(num), std::move(den));
    }

    std::string to_string() const
    {
        if (den_.empty())
            return num_.to_string();
        std::string out = "(" + num_.to_string() + ") / ";
        bool single = den_.size() == 1 && den_[0].multiplicity == 1;
        if (!single)
            out += "(";
        for (std::size_t i = 0; i < den_.size(); ++i) {
            if (i)
                out += " * ";
            out += "(" + den_[i].poly.to_string() + ")";
            if (den_[i].multiplicity != 1)
                out += "^" + std::to_string(den_[i].multiplicity);
        }
        if (!single)
            out += ")";
        return out;
    }

    /// Multiset union with maximal multiplicities; inputs sorted by compare().
    static std::vector<Factor> lcm_factors(std::span<const Factor> a, std::span<const Factor> b)
    {
        std::vector<Factor> out;
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            int c = i == a.size() ? 1 : j == b.size() ? -1 : compare(a[i].poly, b[j].poly);
            if (c < 0)
                out.push_back(a[i++]);
            else if (c > 0)
                out.push_back(b[j++]);
            else {
                out.push_back({a[i].poly, std::max(a[i].multiplicity, b[j].multiplicity)});
                ++i;
                ++j;
            }
        }
        return out;
    }

    /// Product of the factors of `whole` not covered by `part` (part ⊆ whole).
    static Polynomial cofactor(std::span<const Factor> whole, std::span<const Factor> part)
    {
        Polynomial r = Polynomial::constant(whole.empty() ? UniversePtr{} : whole[0].poly.universe(), 1);
        std::size_t j = 0;
        for (const auto& f : whole) {
            unsigned have = 0;
            while (j < part.size() && compare(part[j].poly, f.poly) < 0)
                ++j;
            if (j < part.size() && compare(part[j].poly, f.poly) == 0)
                have = part[j].multiplicity;
            if (have > f.multiplicity)
                throw InternalConsistencyError("cofactor of a non-divisor");
            if (f.multiplicity > have)
                r *= f.poly.pow(f.multiplicity - have);
        }
        return r;
    }

private:
    FactoredFraction with_universe(const UniversePtr& u) const
    {
        FactoredFraction r = *this;
        if (!r.universe_) {
            r.universe_ = u;
            r.num_ = r.num_.is_zero() ? Polynomial(u) : Polynomial::constant(u, r.num_.constant_value());
        }
        return r;
    }

    void normalize()
    {
        universe_ = num_.universe();
        std::vector<Factor> kept;
        kept.reserve(den_.size());
        for (auto& f : den_) {
            if (f.multiplicity == 0)
                continue;
            if (f.poly.is_zero())
                throw InvalidValueError("zero denominator factor");
            universe_ = Polynomial::common_universe(Polynomial(universe_), f.poly);
            Rational lc = f.poly.is_constant() ? f.poly.constant_value() : f.poly.trailing_term().coeff;
            if (lc != 1)
                num_ = num_ * Rational(1 / rational_pow(lc, f.multiplicity));
            if (f.poly.is_constant())
                continue;
            if (lc != 1)
                f.poly = f.poly * Rational(1 / lc);
            kept.push_back(std::move(f));
        }
        if (!num_.universe() && universe_)
            num_ = num_.is_zero() ? Polynomial(universe_) : Polynomial::constant(universe_, num_.constant_value());
        std::sort(kept.begin(), kept.end(), [](const Factor& x, const Factor& y) { return compare(x.poly, y.poly) < 0; });
        den_.clear();
        for (auto& f : kept) {
            if (!den_.empty() && compare(den_.back().poly, f.poly) == 0)
                den_.back().multiplicity += f.multiplicity;
            else
                den_.push_back(std::move(f));
        }
        if (num_.is_zero())
            den_.clear();
    }

    UniversePtr universe_;
    Polynomial num_;
    std::vector<Factor> den_;
};

using Factor = FactoredFraction::Factor;

/// f == g as rational functions: cross-multiply by the denominator factors
/// the two sides do not share.
inline bool frac_eq(const FactoredFraction& f, const FactoredFraction& g)
{
    Polynomial::common_universe(f.numerator(), g.numerator());
    auto lcm = FactoredFraction::lcm_factors(f.denominator_factors(), g.denominator_factors());
    Polynomial lhs = f.numerator() * FactoredFraction::cofactor(lcm, f.denominator_factors());
    Polynomial rhs = g.numerator() * FactoredFraction::cofactor(lcm, g.denominator_factors());
    return lhs == rhs;
}

/// Sum over the least common multiset of all denominators.
inline FactoredFraction sum(std::span<const FactoredFraction> terms)
{
    std::vector<Factor> lcm;
    UniversePtr u;
    for (const auto& t : terms) {
        if (t.is_zero())
            continue;
        lcm = FactoredFraction::lcm_factors(lcm, t.denominator_factors());
        u = t.universe();
    }
    Polynomial num(u);
    for (const auto& t : terms)
        if (!t.is_zero())
            num += t.numerator() * FactoredFraction::cofactor(lcm, t.denominator_factors());
    return FactoredFraction(std::move(num), std::move(lcm));
}

using Bindings = std::map<std::string, FactoredFraction>;

namespace detail {

struct SubstitutionPlan {
    const Universe* src = nullptr;
    UniversePtr target;
    // per source variable: numerator value and expanded denominator product
    std::vector<std::optional<Polynomial>> num;
    std::vector<std::optional<Polynomial>> den;
    std::vector<std::vector<Factor>> den_factors;
    std::vector<std::vector<Polynomial>> num_pow, den_pow;

    const Polynomial& pow_of(std::vector<std::vector<Polynomial>>& cache, std::size_t v, const Polynomial& base,
                             unsigned e)
    {
        auto& c = cache[v];
        if (c.empty())
            c.push_back(Polynomial::constant(target, 1));
        while (c.size() <= e)
            c.push_back(c.back() * base);
        return c[e];
    }

    /// Substitutes into p and multiplies the result by Π_v den_v^{deg_v(p)},
    /// which is returned in `degrees`.
    Polynomial apply(const Polynomial& p, std::vector<unsigned>& degrees)
    {
        degrees.assign(src->size(), 0);
        for (std::size_t v = 0; v < src->size(); ++v)
            if (den[v])
                degrees[v] = p.degree_in(v);
        std::vector<Polynomial::Term> out;
        for (const auto& t : p.terms()) {
            Polynomial term = Polynomial::constant(target, t.coeff);
            for (std::size_t v = 0; v < src->size() && !term.is_zero(); ++v) {
                unsigned e = t.monomial.exp[v];
                if (e)
                    term = term * pow_of(num_pow, v, *num[v], e);
                if (den[v] && degrees[v] > e)
                    term = term * pow_of(den_pow, v, *den[v], degrees[v] - e);
            }
            for (const auto& tt : term.terms())
                out.push_back(tt);
        }
        return Polynomial(target, std::move(out));
    }
};

} // namespace detail

/// Exact substitution of source variables by fractions over `target`.
/// Unbound variables map to the same-named target variable. A denominator
/// factor that becomes identically zero raises PoleError.
inline FactoredFraction substitute(const FactoredFraction& f, const Bindings& bindings, const UniversePtr& target)
{
    if (!f.universe())
        return FactoredFraction::constant(target, f.is_zero() ? Rational(0) : f.numerator().constant_value());
    const Universe& src = *f.universe();
    for (const auto& [name, value] : bindings) {
        src.require(name);
        if (value.universe() && !same_universe(value.universe(), target))
            throw UsageError("binding for '" + name + "' is not over the target universe");
    }

    bool fractional = false;
    for (const auto& [_, value] : bindings)
        fractional = fractional || !value.is_polynomial();

    if (!fractional) {
        std::map<std::string, Polynomial> poly;
        for (const auto& [name, value] : bindings)
            poly.emplace(name, value.is_zero() ? Polynomial(target) : value.numerator());
        Polynomial num = substitute(f.numerator(), poly, target);
        std::vector<Factor> den;
        for (const auto& fac : f.denominator_factors()) {
            Polynomial d = substitute(fac.poly, poly, target);
            if (d.is_zero())
                throw PoleError("substitution sends denominator factor (" + fac.poly.to_string() + ") to zero");
            den.push_back({std::move(d), fac.multiplicity});
        }
        return FactoredFraction(std::move(num), std::move(den));
    }

    detail::SubstitutionPlan plan;
    plan.src = &src;
    plan.target = target;
    plan.num.resize(src.size());
    plan.den.resize(src.size());
    plan.den_factors.resize(src.size());
    plan.num_pow.resize(src.size());
    plan.den_pow.resize(src.size());
    for (std::size_t v = 0; v < src.size(); ++v) {
        auto it = bindings.find(src.name(v));
        if (it == bindings.end()) {
            if (target->index_of(src.name(v)))
                plan.num[v] = Polynomial::variable(target, src.name(v));
            else
                plan.num[v] = std::nullopt;
            continue;
        }
        const auto& value = it->second;
        plan.num[v] = value.is_zero() ? Polynomial(target) : value.numerator();
        if (!value.is_polynomial()) {
            plan.den[v] = value.denominator();
            plan.den_factors[v].assign(value.denominator_factors().begin(), value.denominator_factors().end());
        }
    }
    auto check_vars = [&](const Polynomial& p) {
        for (std::size_t v = 0; v < src.size(); ++v)
            if (!plan.num[v] && p.degree_in(v) > 0)
                throw UsageError("variable '" + src.name(v) + "' has no image in the target universe");
    };

    std::vector<unsigned> deg;
    check_vars(f.numerator());
    Polynomial num = plan.apply(f.numerator(), deg);
    std::vector<long> net(src.size(), 0);
    for (std::size_t v = 0; v < src.size(); ++v)
        net[v] += deg[v];

    std::vector<Factor> den;
    for (const auto& fac : f.denominator_factors()) {
        check_vars(fac.poly);
        Polynomial d = plan.apply(fac.poly, deg);
        if (d.is_zero())
            throw PoleError("substitution sends denominator factor (" + fac.poly.to_string() + ") to zero");
        den.push_back({std::move(d), fac.multiplicity});
        for (std::size_t v = 0; v < src.size(); ++v)
            net[v] -= long(deg[v]) * fac.multiplicity;
    }
    for (std::size_t v = 0; v < src.size(); ++v) {
        if (net[v] > 0) {
            for (const auto& df : plan.den_factors[v])
                den.push_back({df.poly, df.multiplicity * static_cast<unsigned>(net[v])});
        } else if (net[v] < 0) {
            num *= plan.den[v]->pow(static_cast<unsigned>(-net[v]));
        }
    }
    return FactoredFraction(std::move(num), std::move(den));
}

inline FactoredFraction substitute(const FactoredFraction& f, const Bindings& bindings)
{
    return substitute(f, bindings, f.universe());
}

/// Moves a fraction into another universe that contains all its variables.
inline FactoredFraction rebind(const FactoredFraction& f, const UniversePtr& target)
{
    return substitute(f, {}, target);
}

inline FactoredFraction variable_fraction(const UniversePtr& u, std::string_view name, unsigned e = 1)
{
    return FactoredFraction(Polynomial::variable(u, name, e));
}

} // namespace qmono
