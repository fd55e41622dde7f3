#pragma once

#include "qmono/errors.hpp"
#include "qmono/rational.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qmono {

inline constexpr std::size_t kMaxVariables = 16;

/// An ordered, named set of indeterminates. Exponent vectors are dense over
/// it and the declared order drives the canonical term order.
class Universe {
public:
    explicit Universe(std::vector<std::string> names)
        : names_(std::move(names))
    {
        if (names_.size() > kMaxVariables)
            throw UsageError("universe has " + std::to_string(names_.size())
                             + " variables, at most " + std::to_string(kMaxVariables)
                             + " are supported");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            const auto& n = names_[i];
            if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_'))
                throw UsageError("invalid variable name '" + n + "'");
            for (char c : n)
                if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                    throw UsageError("invalid variable name '" + n + "'");
            for (std::size_t j = 0; j < i; ++j)
                if (names_[j] == n)
                    throw UsageError("duplicate variable name '" + n + "'");
        }
    }

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::optional<std::size_t> index_of(std::string_view n) const noexcept
    {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == n)
                return i;
        return std::nullopt;
    }

    std::size_t require(std::string_view n) const
    {
        if (auto i = index_of(n))
            return *i;
        throw UsageError("variable '" + std::string(n) + "' is not in the universe");
    }

    friend bool operator==(const Universe& a, const Universe& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
};

using UniversePtr = std::shared_ptr<const Universe>;

inline UniversePtr make_universe(std::vector<std::string> names)
{
    return std::make_shared<const Universe>(std::move(names));
}

inline bool same_universe(const UniversePtr& a, const UniversePtr& b)
{
    return a == b || (a && b && *a == *b);
}

/// Exponent vector with its total degree cached.
struct Monomial {
    std::array<std::uint16_t, kMaxVariables> exp{};
    std::uint32_t degree = 0;

    static Monomial variable(std::size_t index, unsigned e = 1)
    {
        Monomial m;
        m.set(index, e);
        return m;
    }

    unsigned operator[](std::size_t i) const { return exp[i]; }

    void set(std::size_t i, unsigned e)
    {
        if (e > std::numeric_limits<std::uint16_t>::max())
            throw ResourceLimitError("exponent overflow");
        degree = degree - exp[i] + e;
        exp[i] = static_cast<std::uint16_t>(e);
    }

    bool is_one() const noexcept { return degree == 0; }

    friend Monomial operator*(const Monomial& a, const Monomial& b)
    {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVariables; ++i) {
            unsigned e = unsigned(a.exp[i]) + b.exp[i];
            if (e > std::numeric_limits<std::uint16_t>::max())
                throw ResourceLimitError("exponent overflow");
            r.exp[i] = static_cast<std::uint16_t>(e);
        }
        r.degree = a.degree + b.degree;
        return r;
    }

    bool divides(const Monomial& other) const noexcept
    {
        if (degree > other.degree)
            return false;
        for (std::size_t i = 0; i < kMaxVariables; ++i)
            if (exp[i] > other.exp[i])
                return false;
        return true;
    }

    /// other / *this; caller guarantees divides(other).
    Monomial quotient_of(const Monomial& other) const noexcept
    {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVariables; ++i)
            r.exp[i] = static_cast<std::uint16_t>(other.exp[i] - exp[i]);
        r.degree = other.degree - degree;
        return r;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) noexcept
    {
        return a.degree == b.degree && a.exp == b.exp;
    }
};

/// Graded lexicographic order: higher total degree first, ties broken by the
/// exponent of the first declared variable, then the second, and so on.
inline bool grlex_greater(const Monomial& a, const Monomial& b) noexcept
{
    if (a.degree != b.degree)
        return a.degree > b.degree;
    return a.exp > b.exp;
}

/// Sparse multivariate polynomial with rational coefficients. Terms are kept
/// in strictly decreasing graded-lex order with no zero coefficients, so
/// structural equality is mathematical equality.
class Polynomial {
public:
    struct Term {
        Monomial monomial;
        Rational coeff;
    };

    Polynomial() = default;

    explicit Polynomial(UniversePtr u)
        : universe_(std::move(u))
    {
    }

    Polynomial(UniversePtr u, std::vector<Term> terms)
        : universe_(std::move(u))
        , terms_(std::move(terms))
    {
        canonicalize(terms_);
    }

    static Polynomial constant(UniversePtr u, const Rational& c)
    {
        Polynomial p(std::move(u));
        if (c != 0)
            p.terms_.push_back({Monomial{}, c});
        return p;
    }

    static Polynomial variable(UniversePtr u, std::string_view name, unsigned e = 1)
    {
        auto idx = u->require(name);
        return monomial(std::move(u), Monomial::variable(idx, e), 1);
    }

    static Polynomial monomial(UniversePtr u, const Monomial& m, const Rational& c)
    {
        Polynomial p(std::move(u));
        if (c != 0)
            p.terms_.push_back({m, c});
        return p;
    }

    const UniversePtr& universe() const noexcept { return universe_; }
    std::span<const Term> terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    bool is_constant() const noexcept
    {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
    }

    Rational constant_value() const
    {
        if (!is_constant())
            throw UsageError("polynomial is not a constant");
        return terms_.empty() ? Rational(0) : terms_[0].coeff;
    }

    /// Coefficient of the degree-zero monomial.
    Rational constant_term() const
    {
        if (!terms_.empty() && terms_.back().monomial.is_one())
            return terms_.back().coeff;
        return 0;
    }

    const Term& leading_term() const { return terms_.front(); }
    const Term& trailing_term() const { return terms_.back(); }

    unsigned total_degree() const noexcept { return terms_.empty() ? 0 : terms_.front().monomial.degree; }

    unsigned degree_in(std::size_t var) const noexcept
    {
        unsigned d = 0;
        for (const auto& t : terms_)
            d = std::max<unsigned>(d, t.monomial.exp[var]);
        return d;
    }

    unsigned degree_in(std::string_view name) const
    {
        if (!universe_)
            return 0;
        return degree_in(universe_->require(name));
    }

    Rational coefficient(const Monomial& m) const
    {
        for (const auto& t : terms_)
            if (t.monomial == m)
                return t.coeff;
        return 0;
    }

    /// Splits into coefficients of var^0, var^1, ...; each coefficient lives
    /// in the same universe with var-exponent zero.
    std::vector<Polynomial> coefficients_in(std::size_t var) const
    {
        std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
        for (const auto& t : terms_) {
            Monomial m = t.monomial;
            unsigned e = m.exp[var];
            m.set(var, 0);
            buckets[e].push_back({m, t.coeff});
        }
        std::vector<Polynomial> out;
        out.reserve(buckets.size());
        for (auto& b : buckets)
            out.emplace_back(universe_, std::move(b));
        if (terms_.empty())
            out.assign(1, Polynomial(universe_));
        return out;
    }

    Polynomial operator-() const
    {
        Polynomial r = *this;
        for (auto& t : r.terms_)
            t.coeff = -t.coeff;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        Polynomial r(common_universe(a, b));
        if (a.is_zero() || b.is_zero())
            return r;
        const Polynomial& big = a.size() >= b.size() ? a : b;
        const Polynomial& small = a.size() >= b.size() ? b : a;
        if (small.size() == 1) {
            // multiplying by a monomial preserves the term order
            const auto& [m, c] = small.terms_[0];
            r.terms_.reserve(big.size());
            for (const auto& t : big.terms_)
                r.terms_.push_back({t.monomial * m, t.coeff * c});
            return r;
        }
        std::vector<Term> prods;
        prods.reserve(big.size() * small.size());
        for (const auto& s : small.terms_)
            for (const auto& t : big.terms_)
                prods.push_back({t.monomial * s.monomial, t.coeff * s.coeff});
        canonicalize(prods);
        r.terms_ = std::move(prods);
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Rational& c)
    {
        if (c == 0)
            return Polynomial(a.universe_);
        Polynomial r = a;
        for (auto& t : r.terms_)
            t.coeff *= c;
        return r;
    }
    friend Polynomial operator*(const Rational& c, const Polynomial& a) { return a * c; }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial pow(unsigned e) const
    {
        Polynomial result = constant(universe_, 1);
        Polynomial base = *this;
        while (e) {
            if (e & 1u)
                result *= base;
            e >>= 1;
            if (e)
                base *= base;
        }
        return result;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        if (a.terms_.size() != b.terms_.size())
            return false;
        if (!a.terms_.empty() && a.universe_ && b.universe_ && !same_universe(a.universe_, b.universe_))
            throw UsageError("comparing polynomials over different variable universes");
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].monomial == b.terms_[i].monomial) || a.terms_[i].coeff != b.terms_[i].coeff)
                return false;
        return true;
    }

    /// Total order used to sort factor lists: by size, then term by term.
    friend int compare(const Polynomial& a, const Polynomial& b)
    {
        if (a.terms_.size() != b.terms_.size())
            return a.terms_.size() < b.terms_.size() ? -1 : 1;
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            const auto& x = a.terms_[i];
            const auto& y = b.terms_[i];
            if (!(x.monomial == y.monomial))
                return grlex_greater(x.monomial, y.monomial) ? 1 : -1;
            if (int c = cmp(x.coeff, y.coeff); c != 0)
                return c < 0 ? -1 : 1;
        }
        return 0;
    }

    /// Plain-text form: `c * a^i * b^j` terms in canonical order joined by
    /// ` + ` / ` - `; unit coefficients and unit exponents are omitted.
    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& t : terms_) {
            bool neg = t.coeff < 0;
            Rational mag = abs(t.coeff);
            if (first)
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            first = false;
            bool wrote = false;
            if (mag != 1 || t.monomial.is_one()) {
                out += mag.get_str();
                wrote = true;
            }
            for (std::size_t v = 0; v < kMaxVariables; ++v) {
                unsigned e = t.monomial.exp[v];
                if (!e)
                    continue;
                if (wrote)
                    out += " * ";
                out += universe_->name(v);
                if (e != 1)
                    out += "^" + std::to_string(e);
                wrote = true;
            }
        }
        return out;
    }

    static void canonicalize(std::vector<Term>& terms)
    {
        std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
            return grlex_greater(x.monomial, y.monomial);
        });
        std::size_t out = 0;
        for (std::size_t i = 0; i < terms.size();) {
            std::size_t j = i + 1;
            while (j < terms.size() && terms[j].monomial == terms[i].monomial) {
                terms[i].coeff += terms[j].coeff;
                ++j;
            }
            if (terms[i].coeff != 0) {
                if (out != i)
                    terms[out] = std::move(terms[i]);
                ++out;
            }
            i = j;
        }
        terms.resize(out);
    }

    static UniversePtr common_universe(const Polynomial& a, const Polynomial& b)
    {
        if (!a.universe_)
            return b.universe_;
        if (!b.universe_)
            return a.universe_;
        if (!same_universe(a.universe_, b.universe_))
            throw UsageError("polynomials over different variable universes");
        return a.universe_;
    }

private:
    static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract)
    {
        Polynomial r(common_universe(a, b));
        r.terms_.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && grlex_greater(a.terms_[i].monomial, b.terms_[j].monomial))) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.size() || grlex_greater(b.terms_[j].monomial, a.terms_[i].monomial)) {
                r.terms_.push_back({b.terms_[j].monomial, subtract ? Rational(-b.terms_[j].coeff) : b.terms_[j].coeff});
                ++j;
            } else {
                Rational c = subtract ? Rational(a.terms_[i].coeff - b.terms_[j].coeff)
                                      : Rational(a.terms_[i].coeff + b.terms_[j].coeff);
                if (c != 0)
                    r.terms_.push_back({a.terms_[i].monomial, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    UniversePtr universe_;
    std::vector<Term> terms_;
};

/// Exact division by a single divisor under graded-lex order. Returns the
/// quotient when d divides p, nothing otherwise.
inline std::optional<Polynomial> try_divide(const Polynomial& p, const Polynomial& d)
{
    if (d.is_zero())
        throw InvalidValueError("division by the zero polynomial");
    UniversePtr u = Polynomial::common_universe(p, d);
    std::vector<Polynomial::Term> quotient;
    Polynomial rest = p;
    const auto& lead = d.leading_term();
    while (!rest.is_zero()) {
        const auto& lt = rest.leading_term();
        if (!lead.monomial.divides(lt.monomial))
            return std::nullopt;
        Polynomial step = Polynomial::monomial(u, lead.monomial.quotient_of(lt.monomial), lt.coeff / lead.coeff);
        quotient.push_back(step.terms()[0]);
        rest -= step * d;
    }
    return Polynomial(u, std::move(quotient));
}

/// Replaces source variables by polynomials over `target`. Variables without
/// a binding map to the target variable of the same name.
inline Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings,
                             const UniversePtr& target)
{
    if (p.is_zero() || p.is_constant())
        return Polynomial::constant(target, p.is_zero() ? Rational(0) : p.constant_value());
    const auto& src = *p.universe();
    std::vector<std::optional<Polynomial>> value(src.size());
    bool all_monomial = true;
    for (std::size_t v = 0; v < src.size(); ++v) {
        if (p.degree_in(v) == 0)
            continue;
        auto it = bindings.find(src.name(v));
        if (it != bindings.end()) {
            if (!it->second.is_zero() && it->second.universe() && !same_universe(it->second.universe(), target))
                throw UsageError("binding for '" + src.name(v) + "' is not over the target universe");
            value[v] = it->second;
            if (value[v]->is_zero())
                value[v] = Polynomial(target);
        } else {
            value[v] = Polynomial::variable(target, src.name(v));
        }
        if (value[v]->size() > 1)
            all_monomial = false;
    }
    for (const auto& [name, _] : bindings)
        src.require(name);

    std::vector<Polynomial::Term> out;
    if (all_monomial) {
        out.reserve(p.size());
        for (const auto& t : p.terms()) {
            Monomial m;
            Rational c = t.coeff;
            bool zero = false;
            for (std::size_t v = 0; v < src.size() && !zero; ++v) {
                unsigned e = t.monomial.exp[v];
                if (!e)
                    continue;
                if (value[v]->is_zero()) {
                    zero = true;
                    break;
                }
                const auto& vt = value[v]->terms()[0];
                for (unsigned k = 0; k < e; ++k) {
                    m = m * vt.monomial;
                    c *= vt.coeff;
                }
            }
            if (!zero)
                out.push_back({m, c});
        }
        return Polynomial(target, std::move(out));
    }

    std::vector<std::vector<Polynomial>> powers(src.size());
    auto power = [&](std::size_t v, unsigned e) -> const Polynomial& {
        auto& cache = powers[v];
        if (cache.empty())
            cache.push_back(Polynomial::constant(target, 1));
        while (cache.size() <= e)
            cache.push_back(cache.back() * *value[v]);
        return cache[e];
    };
    for (const auto& t : p.terms()) {
        Polynomial term = Polynomial::constant(target, t.coeff);
        for (std::size_t v = 0; v < src.size() && !term.is_zero(); ++v)
            if (unsigned e = t.monomial.exp[v])
                term = term * power(v, e);
        for (const auto& tt : term.terms())
            out.push_back(tt);
    }
    return Polynomial(target, std::move(out));
}

inline Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings)
{
    return substitute(p, bindings, p.universe());
}

namespace detail {

class PolynomialParser {
public:
    PolynomialParser(std::string_view text, UniversePtr u)
        : text_(text)
        , u_(std::move(u))
    {
    }

    Polynomial parse()
    {
        Polynomial p = expr();
        skip();
        if (pos_ != text_.size())
            fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw UsageError("cannot parse polynomial '" + std::string(text_) + "' at position "
                         + std::to_string(pos_) + ": " + what);
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr()
    {
        skip();
        bool neg = eat('-');
        if (!neg)
            eat('+');
        Polynomial acc = term();
        if (neg)
            acc = -acc;
        for (;;) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Polynomial term()
    {
        Polynomial acc = factor();
        for (;;) {
            if (eat('*')) {
                acc *= factor();
            } else if (eat('/')) {
                Polynomial d = factor();
                if (!d.is_constant() || d.is_zero())
                    fail("division is only allowed by a nonzero constant");
                acc = acc * Rational(1 / d.constant_value());
            } else {
                return acc;
            }
        }
    }

    Polynomial factor()
    {
        if (eat('-'))
            return -factor();
        Polynomial base = primary();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected a non-negative integer exponent");
            base = base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
        }
        return base;
    }

    Polynomial primary()
    {
        skip();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (!eat(')'))
                fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            return Polynomial::constant(u_, Rational(std::string(text_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size()
                   && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            auto name = text_.substr(start, pos_ - start);
            if (!u_->index_of(name))
                fail("unknown variable '" + std::string(name) + "'");
            return Polynomial::variable(u_, name);
        }
        fail("unexpected character");
    }

    std::string_view text_;
    UniversePtr u_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the plain-text format produced by Polynomial::to_string, plus
/// parentheses and integer powers of sub-expressions.
inline Polynomial parse_polynomial(std::string_view text, const UniversePtr& u)
{
    return detail::PolynomialParser(text, u).parse();
}

} // namespace qmono
