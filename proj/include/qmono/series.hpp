#pragma once

#include "qmono/fraction.hpp"

#include <span>
#include <string>
#include <vector>

namespace qmono {

/// Power series in one distinguished variable, truncated at a fixed order.
/// Coefficients are exact fractions over the same universe, free of the
/// expansion variable.
class TruncatedSeries {
public:
    TruncatedSeries(UniversePtr u, std::string var, std::vector<FactoredFraction> coeffs)
        : universe_(std::move(u))
        , var_(std::move(var))
        , coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty())
            throw UsageError("a truncated series needs at least one coefficient");
    }

    static TruncatedSeries one(UniversePtr u, std::string var, unsigned order)
    {
        std::vector<FactoredFraction> c(order + 1, FactoredFraction(Polynomial(u)));
        c[0] = FactoredFraction::constant(u, 1);
        return TruncatedSeries(std::move(u), std::move(var), std::move(c));
    }

    const UniversePtr& universe() const noexcept { return universe_; }
    const std::string& variable() const noexcept { return var_; }
    unsigned order() const noexcept { return static_cast<unsigned>(coeffs_.size() - 1); }
    const FactoredFraction& operator[](std::size_t k) const { return coeffs_.at(k); }
    std::span<const FactoredFraction> coefficients() const noexcept { return coeffs_; }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        check_compatible(a, b);
        unsigned order = std::min(a.order(), b.order());
        std::vector<FactoredFraction> out;
        out.reserve(order + 1);
        for (unsigned k = 0; k <= order; ++k) {
            std::vector<FactoredFraction> parts;
            for (unsigned i = 0; i <= k; ++i)
                if (!a.coeffs_[i].is_zero() && !b.coeffs_[k - i].is_zero())
                    parts.push_back(a.coeffs_[i] * b.coeffs_[k - i]);
            out.push_back(parts.empty() ? FactoredFraction(Polynomial(a.universe_)) : sum(parts));
        }
        return TruncatedSeries(a.universe_, a.var_, std::move(out));
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        check_compatible(a, b);
        unsigned order = std::min(a.order(), b.order());
        std::vector<FactoredFraction> out;
        for (unsigned k = 0; k <= order; ++k)
            out.push_back(a.coeffs_[k] + b.coeffs_[k]);
        return TruncatedSeries(a.universe_, a.var_, std::move(out));
    }

    /// Coefficientwise frac_eq up to the smaller order.
    friend bool series_eq(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        check_compatible(a, b);
        unsigned order = std::min(a.order(), b.order());
        for (unsigned k = 0; k <= order; ++k)
            if (!frac_eq(a.coeffs_[k], b.coeffs_[k]))
                return false;
        return true;
    }

private:
    static void check_compatible(const TruncatedSeries& a, const TruncatedSeries& b)
    {
        if (a.var_ != b.var_ || !same_universe(a.universe_, b.universe_))
            throw UsageError("series over different variables or universes");
    }

    UniversePtr universe_;
    std::string var_;
    std::vector<FactoredFraction> coeffs_;
};

/// One factor of a product to expand. A `q_infinite` factor stands for the
/// formal product Π_{j≥0} poly(q^j·var) and must have constant term 1 in var.
struct SeriesFactor {
    enum class Side { numerator, denominator };

    Polynomial poly;
    Side side = Side::numerator;
    bool q_infinite = false;
    std::string q_var = "q";

    static SeriesFactor numerator(Polynomial p) { return {std::move(p), Side::numerator, false, "q"}; }
    static SeriesFactor denominator(Polynomial p) { return {std::move(p), Side::denominator, false, "q"}; }
    static SeriesFactor q_numerator(Polynomial p, std::string q = "q")
    {
        return {std::move(p), Side::numerator, true, std::move(q)};
    }
    static SeriesFactor q_denominator(Polynomial p, std::string q = "q")
    {
        return {std::move(p), Side::denominator, true, std::move(q)};
    }
};

namespace detail {

inline std::vector<FactoredFraction> poly_coefficients(const Polynomial& p, std::size_t var, unsigned order)
{
    auto parts = p.coefficients_in(var);
    std::vector<FactoredFraction> out(order + 1, FactoredFraction(Polynomial(p.universe())));
    for (unsigned k = 0; k <= order && k < parts.size(); ++k)
        out[k] = FactoredFraction(parts[k]);
    return out;
}

/// 1 / p as a series; p must have an invertible constant term.
inline std::vector<FactoredFraction> inverse_coefficients(const Polynomial& p, std::size_t var, unsigned order)
{
    auto parts = p.coefficients_in(var);
    if (parts[0].is_zero())
        throw NotInvertibleError("denominator factor (" + p.to_string() + ") has zero constant term in "
                                 + p.universe()->name(var));
    FactoredFraction inv0 = FactoredFraction(Polynomial::constant(p.universe(), 1), {{parts[0], 1}});
    std::vector<FactoredFraction> out;
    out.push_back(inv0);
    for (unsigned k = 1; k <= order; ++k) {
        std::vector<FactoredFraction> acc;
        for (unsigned i = 1; i <= k && i < parts.size(); ++i)
            if (!parts[i].is_zero() && !out[k - i].is_zero())
                acc.push_back(FactoredFraction(parts[i]) * out[k - i]);
        out.push_back(acc.empty() ? FactoredFraction(Polynomial(p.universe())) : -(inv0 * sum(acc)));
    }
    return out;
}

} // namespace detail

/// Expands a product of polynomial factors (finite or q-infinite, in the
/// numerator or denominator) as a power series in `var` up to `order`.
///
/// A q-infinite factor G(u) = Π_{j≥0} R(q^j u) satisfies G(u) = R(u)·G(qu),
/// so its coefficients obey g_k (1 − q^k) = Σ_{i≥1} r_i q^{k−i} g_{k−i},
/// which gives them exactly.
inline TruncatedSeries series_expand(std::span<const SeriesFactor> factors, const UniversePtr& u,
                                     const std::string& var, unsigned order)
{
    std::size_t v = u->require(var);
    TruncatedSeries acc = TruncatedSeries::one(u, var, order);
    for (const auto& f : factors) {
        if (!same_universe(f.poly.universe(), u) && !f.poly.is_constant())
            throw UsageError("series factor is not over the expansion universe");
        Polynomial poly = f.poly.universe() ? f.poly : Polynomial::constant(u, f.poly.constant_value());
        if (poly.is_zero())
            throw InvalidValueError("zero factor in series product");
        std::vector<FactoredFraction> r = f.side == SeriesFactor::Side::numerator
            ? detail::poly_coefficients(poly, v, order)
            : detail::inverse_coefficients(poly, v, order);
        if (f.q_infinite) {
            std::size_t qv = u->require(f.q_var);
            if (qv == v)
                throw UsageError("the q-shift variable must differ from the expansion variable");
            if (poly.coefficients_in(v)[0] != Polynomial::constant(u, 1))
                throw UsageError("a q-infinite factor must have constant term 1 in " + var);
            std::vector<FactoredFraction> g;
            g.push_back(FactoredFraction::constant(u, 1));
            for (unsigned k = 1; k <= order; ++k) {
                std::vector<FactoredFraction> acc_k;
                for (unsigned i = 1; i <= k; ++i)
                    if (!r[i].is_zero() && !g[k - i].is_zero())
                        acc_k.push_back(r[i] * g[k - i] * FactoredFraction(Polynomial::variable(u, f.q_var, k - i)));
                Polynomial one_minus = Polynomial::constant(u, 1) - Polynomial::variable(u, f.q_var, k);
                g.push_back(acc_k.empty() ? FactoredFraction(Polynomial(u))
                                          : sum(acc_k) / FactoredFraction(one_minus));
            }
            r = std::move(g);
        }
        acc = acc * TruncatedSeries(u, var, std::move(r));
    }
    return acc;
}

} // namespace qmono
