#pragma once

#include "qmono/config.hpp"
#include "qmono/fraction.hpp"
#include "qmono/partitions.hpp"
#include "qmono/series.hpp"
#include "qmono/specialization.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>

namespace qmono {

/// {q, t, u, x1..xN}, shared per N.
inline const UniversePtr& mac_universe(int N)
{
    static const auto table = [] {
        std::array<UniversePtr, 9> t;
        for (int k = 1; k <= 8; ++k) {
            std::vector<std::string> names{"q", "t", "u"};
            for (int i = 1; i <= k; ++i)
                names.push_back("x" + std::to_string(i));
            t[static_cast<std::size_t>(k)] = make_universe(names);
        }
        return t;
    }();
    if (N < 1 || N > 8)
        throw UsageError("alphabet size must be between 1 and 8");
    return table[static_cast<std::size_t>(N)];
}

enum class Basis { power, monomial, complete, elementary, deformed_h, deformed_e };

inline std::string to_string(Basis b)
{
    switch (b) {
    case Basis::power: return "power";
    case Basis::monomial: return "monomial";
    case Basis::complete: return "complete";
    case Basis::elementary: return "elementary";
    case Basis::deformed_h: return "deformed-h";
    case Basis::deformed_e: return "deformed-e";
    }
    return "?";
}

inline Basis parse_basis(const std::string& s)
{
    if (s == "power")
        return Basis::power;
    if (s == "monomial")
        return Basis::monomial;
    if (s == "complete")
        return Basis::complete;
    if (s == "elementary")
        return Basis::elementary;
    if (s == "deformed-h" || s == "deformed-complete")
        return Basis::deformed_h;
    if (s == "deformed-e" || s == "deformed-elementary")
        return Basis::deformed_e;
    throw UsageError("unknown basis '" + s + "'");
}

inline constexpr std::array<Basis, 6> all_bases{Basis::power,      Basis::monomial,   Basis::complete,
                                                Basis::elementary, Basis::deformed_h, Basis::deformed_e};

/// Coefficients on one basis, keyed by every partition of n in reverse
/// lexicographic order.
struct ExpansionTable {
    int n = 0;
    Basis basis = Basis::power;
    std::vector<std::pair<Partition, FactoredFraction>> entries;

    const FactoredFraction& at(const Partition& mu) const
    {
        for (const auto& [key, value] : entries)
            if (key == mu)
                return value;
        throw UsageError("partition " + mu.to_string() + " is not in the table");
    }
};

inline bool table_eq(const ExpansionTable& a, const ExpansionTable& b)
{
    if (a.n != b.n || a.basis != b.basis || a.entries.size() != b.entries.size())
        return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        if (a.entries[i].first != b.entries[i].first || !frac_eq(a.entries[i].second, b.entries[i].second))
            return false;
    return true;
}

namespace detail {

inline FactoredFraction qt_poly(const Polynomial& p) { return FactoredFraction(p); }
inline Polynomial qt_q(unsigned e = 1) { return Polynomial::variable(qt_universe(), "q", e); }
inline Polynomial qt_t(unsigned e = 1) { return Polynomial::variable(qt_universe(), "t", e); }
inline Polynomial qt_one() { return Polynomial::constant(qt_universe(), 1); }

/// (z;q)_k over {q,t}
inline Polynomial pochhammer(const Polynomial& z, unsigned k)
{
    Polynomial r = qt_one();
    for (unsigned i = 0; i < k; ++i)
        r *= qt_one() - z * qt_q(i);
    return r;
}

inline Rational sign(long e) { return e % 2 ? Rational(-1) : Rational(1); }

} // namespace detail

/// Coefficients of g_n(X;q,t) on the chosen basis.
inline ExpansionTable gn_table(int n, Basis basis, const Caps& caps = {})
{
    if (n < 0)
        throw UsageError("degree must be non-negative");
    using namespace detail;
    const auto& u = qt_universe();
    auto one = FactoredFraction::constant(u, 1), zero = FactoredFraction::constant(u, 0);
    auto t = FactoredFraction(qt_t()), q = FactoredFraction(qt_q());
    Rational global = sign(n);
    ExpansionTable table{n, basis, {}};
    for (const auto& mu : partitions_of(n)) {
        FactoredFraction c;
        switch (basis) {
        case Basis::power: {
            Polynomial num = qt_one();
            std::vector<Factor> den;
            for (int part : mu.parts()) {
                auto p = static_cast<unsigned>(part);
                num *= qt_one() - qt_t(p);
                den.push_back({qt_one() - qt_q(p), 1});
            }
            c = FactoredFraction(num * Rational(Rational(1) / z_of(mu)), std::move(den));
            break;
        }
        case Basis::monomial: {
            Polynomial num = qt_one();
            std::vector<Factor> den;
            for (int part : mu.parts()) {
                auto p = static_cast<unsigned>(part);
                num *= pochhammer(qt_t(), p);
                for (unsigned i = 1; i <= p; ++i)
                    den.push_back({qt_one() - qt_q(i), 1});
            }
            c = FactoredFraction(std::move(num), std::move(den));
            break;
        }
        case Basis::complete: c = Z_at(mu, one, t, u, caps); break;
        case Basis::elementary: c = Z_at(mu, t, one, u, caps) * global; break;
        case Basis::deformed_h: c = Z_at(mu, one, zero, u, caps); break;
        case Basis::deformed_e: c = Z_at(mu, zero, one, u, caps) * global; break;
        }
        table.entries.emplace_back(mu, std::move(c));
    }
    return table;
}

/// A symmetric function on x1..xN stored as one coefficient (over {q,t}) per
/// monomial orbit; the orbit of x^λ is keyed by the partition λ (l(λ) ≤ N).
class SymmetricPolynomial {
public:
    explicit SymmetricPolynomial(int N = 1)
        : N_(N)
    {
        mac_universe(N);
    }

    int alphabet_size() const noexcept { return N_; }
    const std::map<Partition, FactoredFraction>& orbits() const noexcept { return orbits_; }

    void add(const Partition& lambda, const FactoredFraction& c)
    {
        if (lambda.length() > N_)
            return; // m_λ vanishes on fewer than l(λ) letters
        auto it = orbits_.find(lambda);
        if (it == orbits_.end())
            orbits_.emplace(lambda, c);
        else
            it->second = it->second + c;
    }

    FactoredFraction coefficient(const Partition& lambda) const
    {
        auto it = orbits_.find(lambda);
        return it == orbits_.end() ? FactoredFraction::constant(qt_universe(), 0) : it->second;
    }

    template <class Fn>
    SymmetricPolynomial map_coefficients(Fn fn) const
    {
        SymmetricPolynomial r(N_);
        for (const auto& [k, v] : orbits_)
            r.add(k, fn(v));
        return r;
    }

    SymmetricPolynomial scaled(const FactoredFraction& c) const
    {
        return map_coefficients([&](const FactoredFraction& v) { return v * c; });
    }

    friend SymmetricPolynomial operator+(const SymmetricPolynomial& a, const SymmetricPolynomial& b)
    {
        if (a.N_ != b.N_)
            throw UsageError("symmetric polynomials on different alphabets");
        SymmetricPolynomial r = a;
        for (const auto& [k, v] : b.orbits_)
            r.add(k, v);
        return r;
    }

    /// Equal as functions: every orbit coefficient frac_eq, absent orbits are zero.
    friend bool sym_eq(const SymmetricPolynomial& a, const SymmetricPolynomial& b)
    {
        if (a.N_ != b.N_)
            return false;
        for (const auto& [k, v] : a.orbits_)
            if (!frac_eq(v, b.coefficient(k)))
                return false;
        for (const auto& [k, v] : b.orbits_)
            if (!a.orbits_.count(k) && !v.is_zero())
                return false;
        return true;
    }

    /// Σ_λ c_λ m_λ(x1..xN) over {q,t,u,x1..xN}.
    FactoredFraction to_fraction() const
    {
        const auto& u = mac_universe(N_);
        std::vector<FactoredFraction> parts;
        for (const auto& [lambda, c] : orbits_)
            parts.push_back(rebind(c, u) * FactoredFraction(monomial_symmetric(lambda, N_)));
        if (parts.empty())
            return FactoredFraction::constant(u, 0);
        return sum(parts);
    }

    /// m_λ(x1..xN) as an explicit polynomial.
    static Polynomial monomial_symmetric(const Partition& lambda, int N)
    {
        const auto& u = mac_universe(N);
        if (lambda.length() > N)
            return Polynomial(u);
        std::vector<int> e(lambda.parts().begin(), lambda.parts().end());
        e.resize(static_cast<std::size_t>(N), 0);
        std::sort(e.begin(), e.end());
        std::vector<Polynomial::Term> terms;
        do {
            Monomial m;
            for (int i = 0; i < N; ++i)
                m.set(static_cast<std::size_t>(3 + i), static_cast<unsigned>(e[static_cast<std::size_t>(i)]));
            terms.push_back({m, 1});
        } while (std::next_permutation(e.begin(), e.end()));
        return Polynomial(u, std::move(terms));
    }

    /// Reads orbit coefficients off a fraction over {q,t,u,x1..xN} whose
    /// denominator only involves q and t. Raises if u occurs or if the
    /// numerator is not symmetric in the x's.
    static SymmetricPolynomial from_fraction(const FactoredFraction& f, int N)
    {
        const auto& src = mac_universe(N);
        const auto& qt = qt_universe();
        SymmetricPolynomial r(N);
        if (f.is_zero())
            return r;
        if (!same_universe(f.universe(), src))
            throw UsageError("fraction is not over the alphabet universe");
        std::vector<Factor> den;
        for (const auto& fac : f.denominator_factors())
            den.push_back({substitute(fac.poly, {}, qt), fac.multiplicity});
        std::map<std::vector<unsigned>, std::vector<Polynomial::Term>> groups;
        for (const auto& t : f.numerator().terms()) {
            if (t.monomial.exp[2])
                throw UsageError("unexpected u in a symmetric polynomial");
            std::vector<unsigned> key;
            for (int i = 0; i < N; ++i)
                key.push_back(t.monomial.exp[static_cast<std::size_t>(3 + i)]);
            Monomial m;
            m.set(0, t.monomial.exp[0]);
            m.set(1, t.monomial.exp[1]);
            groups[key].push_back({m, t.coeff});
        }
        std::map<std::vector<unsigned>, Polynomial> coeffs;
        for (auto& [key, terms] : groups)
            coeffs.emplace(key, Polynomial(qt, std::move(terms)));
        std::map<std::vector<unsigned>, std::size_t> seen;
        for (const auto& [key, poly] : coeffs) {
            std::vector<unsigned> sorted = key;
            std::sort(sorted.begin(), sorted.end(), std::greater<>());
            auto it = coeffs.find(sorted);
            if (it == coeffs.end() || !(it->second == poly))
                throw InternalConsistencyError("polynomial is not symmetric in the alphabet");
            ++seen[sorted];
        }
        for (const auto& [key, poly] : coeffs) {
            std::vector<unsigned> sorted = key;
            std::sort(sorted.begin(), sorted.end());
            std::size_t orbit = 0;
            do
                ++orbit;
            while (std::next_permutation(sorted.begin(), sorted.end()));
            std::sort(sorted.begin(), sorted.end(), std::greater<>());
            if (seen[sorted] != orbit)
                throw InternalConsistencyError("polynomial is not symmetric in the alphabet");
            if (sorted != key)
                continue;
            std::vector<int> parts;
            for (unsigned e : key)
                if (e)
                    parts.push_back(static_cast<int>(e));
            r.add(Partition(std::move(parts)), FactoredFraction(poly, den));
        }
        return r;
    }

private:
    int N_;
    std::map<Partition, FactoredFraction> orbits_;
};

namespace detail {

/// x_i as a polynomial of the alphabet universe (1-based).
inline Polynomial mac_x(int N, int i, unsigned e = 1)
{
    return Polynomial::variable(mac_universe(N), "x" + std::to_string(i), e);
}

inline Polynomial mac_var(int N, const char* name, unsigned e = 1)
{
    return Polynomial::variable(mac_universe(N), name, e);
}

inline Polynomial mac_one(int N) { return Polynomial::constant(mac_universe(N), 1); }

/// Degree 0..order coefficients in u of Π_i num(u x_i)/den(u x_i) for
/// factors linear in u, as polynomials (the constant terms are 1).
inline std::vector<Polynomial> generating_coefficients(int N, unsigned order, const Polynomial& num_coeff,
                                                       const Polynomial& den_coeff)
{
    std::vector<SeriesFactor> fs;
    for (int i = 1; i <= N; ++i) {
        Polynomial ux = mac_var(N, "u") * mac_x(N, i);
        if (!num_coeff.is_zero())
            fs.push_back(SeriesFactor::numerator(mac_one(N) + num_coeff * ux));
        if (!den_coeff.is_zero())
            fs.push_back(SeriesFactor::denominator(mac_one(N) + den_coeff * ux));
    }
    auto s = series_expand(fs, mac_universe(N), "u", order);
    std::vector<Polynomial> out;
    for (unsigned k = 0; k <= order; ++k) {
        if (!s[k].is_polynomial())
            throw InternalConsistencyError("generating coefficient is not a polynomial");
        out.push_back(s[k].is_zero() ? Polynomial(mac_universe(N)) : s[k].numerator());
    }
    return out;
}

} // namespace detail

/// The single-row generators on x1..xN, degrees 0..order, as polynomials.
enum class Generator { power, elementary, complete, deformed_h, deformed_e };

inline std::vector<Polynomial> generator_polynomials(Generator g, int N, unsigned order)
{
    using namespace detail;
    Polynomial one = mac_one(N), zero(mac_universe(N)), t = mac_var(N, "t");
    switch (g) {
    case Generator::power: {
        std::vector<Polynomial> out{one};
        for (unsigned k = 1; k <= order; ++k) {
            Polynomial p = zero;
            for (int i = 1; i <= N; ++i)
                p += mac_x(N, i, k);
            out.push_back(p);
        }
        return out;
    }
    case Generator::elementary: return generating_coefficients(N, order, one, zero);          // Π(1 + u x)
    case Generator::complete: return generating_coefficients(N, order, zero, zero - one);     // Π 1/(1 - u x)
    case Generator::deformed_h: return generating_coefficients(N, order, zero - t, zero - one); // Π(1 - u t x)/(1 - u x)
    case Generator::deformed_e: return generating_coefficients(N, order, one, t);             // Π(1 + u x)/(1 + u t x)
    }
    throw InternalConsistencyError("unknown generator");
}

/// The basis element b_μ(x1..xN) as a polynomial over {q,t,u,x1..xN}.
inline Polynomial basis_polynomial(Basis basis, const Partition& mu, int N)
{
    if (basis == Basis::monomial)
        return SymmetricPolynomial::monomial_symmetric(mu, N);
    Generator g = basis == Basis::power       ? Generator::power
                  : basis == Basis::complete   ? Generator::complete
                  : basis == Basis::elementary ? Generator::elementary
                  : basis == Basis::deformed_h ? Generator::deformed_h
                                               : Generator::deformed_e;
    unsigned top = mu.empty() ? 0 : static_cast<unsigned>(mu[0]);
    auto gens = generator_polynomials(g, N, top);
    Polynomial r = detail::mac_one(N);
    for (int part : mu.parts())
        r *= gens[static_cast<std::size_t>(part)];
    return r;
}

/// Σ_μ c_μ b_μ(x1..xN).
inline SymmetricPolynomial table_to_symmetric(const ExpansionTable& table, int N)
{
    const auto& u = mac_universe(N);
    std::vector<FactoredFraction> parts;
    for (const auto& [mu, c] : table.entries)
        if (!c.is_zero())
            parts.push_back(rebind(c, u) * FactoredFraction(basis_polynomial(table.basis, mu, N)));
    if (parts.empty())
        return SymmetricPolynomial(N);
    return SymmetricPolynomial::from_fraction(sum(parts), N);
}

enum class GnMethod { from_basis, heine_product };

/// Σ_n g_n u^n = Π_i (t u x_i; q)_∞ / (u x_i; q)_∞ to order n in u.
inline TruncatedSeries heine_series(int N, unsigned order)
{
    using namespace detail;
    std::vector<SeriesFactor> fs;
    for (int i = 1; i <= N; ++i) {
        Polynomial ux = mac_var(N, "u") * mac_x(N, i);
        fs.push_back(SeriesFactor::q_numerator(mac_one(N) - mac_var(N, "t") * ux));
        fs.push_back(SeriesFactor::q_denominator(mac_one(N) - ux));
    }
    return series_expand(fs, mac_universe(N), "u", order);
}

inline SymmetricPolynomial gn_polynomial(int n, int N, GnMethod method, const Caps& caps = {})
{
    if (n < 0)
        throw UsageError("degree must be non-negative");
    if (method == GnMethod::heine_product)
        return SymmetricPolynomial::from_fraction(heine_series(N, static_cast<unsigned>(n))[static_cast<std::size_t>(n)], N);
    SymmetricPolynomial r(N);
    for (const auto& [mu, c] : gn_table(n, Basis::monomial, caps).entries)
        r.add(mu, c);
    return r;
}

/// Each of the six tables, summed on N letters, equals the Heine-product value.
inline bool six_way_check(int n, int N, const Caps& caps = {})
{
    auto reference = gn_polynomial(n, N, GnMethod::heine_product, caps);
    if (!sym_eq(reference, gn_polynomial(n, N, GnMethod::from_basis, caps)))
        return false;
    for (Basis b : all_bases)
        if (!sym_eq(table_to_symmetric(gn_table(n, b, caps), N), reference))
            return false;
    return true;
}

enum class DeformedKind { E, H };

struct DeformedValues {
    SymmetricPolynomial series;   // generating-series definition
    SymmetricPolynomial gn_route; // q = 0 specialization of g_n
    SymmetricPolynomial monomial; // explicit m-expansion
    bool agree = false;
};

/// E_n(X;t) = e_n[(1-t)X] or H_n(X;t) = h_n[(1-t)X], three ways.
inline DeformedValues deformed_three_ways(DeformedKind kind, int n, int N, const Caps& caps = {})
{
    if (n < 1)
        throw UsageError("deformed generators need n >= 1");
    auto un = static_cast<unsigned>(n);
    Generator g = kind == DeformedKind::E ? Generator::deformed_e : Generator::deformed_h;
    auto series_value = generator_polynomials(g, N, un)[un];
    DeformedValues v{SymmetricPolynomial::from_fraction(FactoredFraction(series_value), N), SymmetricPolynomial(N),
                     SymmetricPolynomial(N), false};

    const auto& qt = qt_universe();
    auto gn = gn_polynomial(n, N, GnMethod::from_basis, caps);
    auto zero = FactoredFraction::constant(qt, 0);
    if (kind == DeformedKind::H) {
        v.gn_route = gn.map_coefficients([&](const FactoredFraction& c) { return substitute(c, {{"q", zero}}); });
    } else {
        FactoredFraction inv_t(detail::qt_one(), {{detail::qt_t(), 1}});
        FactoredFraction prefactor(detail::qt_t(un) * detail::sign(n));
        v.gn_route = gn.map_coefficients(
            [&](const FactoredFraction& c) { return substitute(c, {{"q", zero}, {"t", inv_t}}) * prefactor; });
    }

    for (const auto& mu : partitions_of(n)) {
        auto l = static_cast<unsigned>(mu.length());
        Polynomial c = (detail::qt_one() - detail::qt_t()).pow(l);
        if (kind == DeformedKind::E)
            c *= detail::qt_t(un - l) * detail::sign(n - static_cast<int>(l));
        v.monomial.add(mu, FactoredFraction(c));
    }
    v.agree = sym_eq(v.series, v.gn_route) && sym_eq(v.series, v.monomial);
    return v;
}

inline SymmetricPolynomial deformed(DeformedKind kind, int n, int N, const Caps& caps = {})
{
    auto v = deformed_three_ways(kind, n, N, caps);
    if (!v.agree)
        throw InternalConsistencyError("the three constructions of the deformed generator disagree");
    return v.series;
}

namespace detail {

/// V·A_i with V = Π_{j<k}(x_j - x_k): (-1)^{i-1} Π_{j≠i}(t x_i - x_j) Π_{j<k; j,k≠i}(x_j - x_k).
inline Polynomial cleared_A(int N, int i, const Polynomial& t)
{
    Polynomial r = mac_one(N) * sign(i - 1);
    for (int j = 1; j <= N; ++j)
        if (j != i)
            r *= t * mac_x(N, i) - mac_x(N, j);
    for (int j = 1; j <= N; ++j)
        for (int k = j + 1; k <= N; ++k)
            if (j != i && k != i)
                r *= mac_x(N, j) - mac_x(N, k);
    return r;
}

inline Polynomial vandermonde(int N)
{
    Polynomial r = mac_one(N);
    for (int j = 1; j <= N; ++j)
        for (int k = j + 1; k <= N; ++k)
            r *= mac_x(N, j) - mac_x(N, k);
    return r;
}

inline void check_operator_cap(int N, int cap, const char* what)
{
    if (N < 1)
        throw UsageError("alphabet size must be at least 1");
    if (N > cap)
        throw ResourceLimitError(std::string(what) + " with N=" + std::to_string(N) + " exceeds the cap "
                                 + std::to_string(cap));
}

} // namespace detail

/// Σ_i A_i(X;t) G(.., q x_i, ..) = (q^n t^{N-1} + (1 - t^{N-1})/(1 - t)) G for a
/// polynomial G over the alphabet universe. Both sides are multiplied by
/// (1 - t) and the Vandermonde product, then compared as polynomials.
inline bool satisfies_eigen_equation(const Polynomial& G, int n, int N)
{
    using namespace detail;
    Polynomial t = mac_var(N, "t");
    Polynomial lhs(mac_universe(N));
    for (int i = 1; i <= N; ++i) {
        std::string xi = "x" + std::to_string(i);
        Polynomial shifted = substitute(G, {{xi, mac_var(N, "q") * mac_x(N, i)}});
        lhs += cleared_A(N, i, t) * shifted;
    }
    lhs *= mac_one(N) - t;
    auto un = static_cast<unsigned>(n), top = static_cast<unsigned>(N - 1);
    Polynomial eigen = mac_var(N, "q", un) * t.pow(top) * (mac_one(N) - t) + mac_one(N) - t.pow(top);
    return lhs == vandermonde(N) * eigen * G;
}

/// D g_n = (q^n t^{N-1} + (1 - t^{N-1})/(1 - t)) g_n with D = Σ_i A_i(X;t) T_{x_i},
/// checked on the numerator of g_n (its denominator only involves q).
inline bool apply_D_eigencheck(int n, int N, const Caps& caps = {})
{
    detail::check_operator_cap(N, caps.max_operator_N, "the difference operator");
    if (n < 0)
        throw UsageError("degree must be non-negative");
    return satisfies_eigen_equation(gn_polynomial(n, N, GnMethod::from_basis, caps).to_fraction().numerator(), n, N);
}

/// A_i(X;t) = Π_{j≠i} (t x_i - x_j)/(x_i - x_j) as a fraction.
inline FactoredFraction A_fraction(int N, int i)
{
    using namespace detail;
    Polynomial num = mac_one(N);
    std::vector<Factor> den;
    for (int j = 1; j <= N; ++j)
        if (j != i) {
            num *= mac_var(N, "t") * mac_x(N, i) - mac_x(N, j);
            den.push_back({mac_x(N, i) - mac_x(N, j), 1});
        }
    return FactoredFraction(std::move(num), std::move(den));
}

struct PartialFractionReport {
    bool sum_of_A = false;      // Σ A_i = (1 - t^N)/(1 - t)
    bool weighted_sum = false;  // Σ x_i/(1 - t x_i) A_i = t^{N-1}/(1-t) (1 - Π (1-x_i)/(1-t x_i))
    bool ok() const { return sum_of_A && weighted_sum; }
};

inline PartialFractionReport prop9_check(int N, const Caps& caps = {})
{
    detail::check_operator_cap(N, caps.max_partial_fraction_N, "the partial-fraction sums");
    using namespace detail;
    Polynomial one = mac_one(N), t = mac_var(N, "t");
    std::vector<FactoredFraction> plain, weighted;
    FactoredFraction product = FactoredFraction(one);
    for (int i = 1; i <= N; ++i) {
        auto a = A_fraction(N, i);
        plain.push_back(a);
        weighted.push_back(a * FactoredFraction(mac_x(N, i), {{one - t * mac_x(N, i), 1}}));
        product = product * FactoredFraction(one - mac_x(N, i), {{one - t * mac_x(N, i), 1}});
    }
    PartialFractionReport r;
    auto uN = static_cast<unsigned>(N);
    r.sum_of_A = frac_eq(sum(plain), FactoredFraction(one - t.pow(uN), {{one - t, 1}}));
    auto expected = FactoredFraction(t.pow(uN - 1), {{one - t, 1}}) * (FactoredFraction(one) - product);
    r.weighted_sum = frac_eq(sum(weighted), expected);
    return r;
}

enum class OmegaRoles { qt, tq };

/// ω_{q,t} on the power basis: p_μ ↦ (-1)^{|μ|-l} Π (1 - q^{μ_i})/(1 - t^{μ_i}) p_μ.
/// With roles tq the parameters are exchanged.
inline ExpansionTable omega_apply(const ExpansionTable& table, OmegaRoles roles = OmegaRoles::qt)
{
    if (table.basis != Basis::power)
        throw UsageError("omega acts on power-basis tables only");
    const char* a = roles == OmegaRoles::qt ? "q" : "t";
    const char* b = roles == OmegaRoles::qt ? "t" : "q";
    ExpansionTable out{table.n, Basis::power, {}};
    for (const auto& [mu, c] : table.entries) {
        Polynomial num = detail::qt_one() * detail::sign(mu.weight() - mu.length());
        std::vector<Factor> den;
        for (int part : mu.parts()) {
            auto p = static_cast<unsigned>(part);
            num *= detail::qt_one() - Polynomial::variable(qt_universe(), a, p);
            den.push_back({detail::qt_one() - Polynomial::variable(qt_universe(), b, p), 1});
        }
        out.entries.emplace_back(mu, c * FactoredFraction(std::move(num), std::move(den)));
    }
    return out;
}

/// Power-basis tables of single-row functions and their products.
enum class PowerRow { elementary, deformed_e, deformed_h };

/// e_n: (-1)^{n-l}/z_μ; E_n(X;s): (-1)^{n-l}/z_μ Π(1 - s^{μ_i}); H_n(X;s): 1/z_μ Π(1 - s^{μ_i}).
inline ExpansionTable power_row_table(PowerRow row, int n, const char* s = "t")
{
    ExpansionTable out{n, Basis::power, {}};
    for (const auto& mu : partitions_of(n)) {
        Polynomial c = detail::qt_one() * Rational(Rational(1) / z_of(mu));
        if (row != PowerRow::deformed_h)
            c *= detail::qt_one() * detail::sign(n - mu.length());
        if (row != PowerRow::elementary)
            for (int part : mu.parts())
                c *= detail::qt_one() - Polynomial::variable(qt_universe(), s, static_cast<unsigned>(part));
        out.entries.emplace_back(mu, FactoredFraction(c));
    }
    return out;
}

/// Product of power-basis tables: p_λ p_ν = p_{λ∪ν}.
inline ExpansionTable power_product(const ExpansionTable& a, const ExpansionTable& b)
{
    if (a.basis != Basis::power || b.basis != Basis::power)
        throw UsageError("power_product needs power-basis tables");
    std::map<Partition, std::vector<FactoredFraction>> acc;
    for (const auto& [la, ca] : a.entries)
        for (const auto& [lb, cb] : b.entries) {
            if (ca.is_zero() || cb.is_zero())
                continue;
            std::vector<int> parts = la.parts();
            parts.insert(parts.end(), lb.parts().begin(), lb.parts().end());
            acc[Partition::from_parts(parts)].push_back(ca * cb);
        }
    ExpansionTable out{a.n + b.n, Basis::power, {}};
    for (const auto& mu : partitions_of(a.n + b.n)) {
        auto it = acc.find(mu);
        out.entries.emplace_back(mu, it == acc.end() ? FactoredFraction::constant(qt_universe(), 0) : sum(it->second));
    }
    return out;
}

/// E_μ(X;s) or H_μ(X;s) on the power basis.
inline ExpansionTable deformed_power_table(DeformedKind kind, const Partition& mu, const char* s)
{
    ExpansionTable r{0, Basis::power, {{Partition{}, FactoredFraction::constant(qt_universe(), 1)}}};
    for (int part : mu.parts())
        r = power_product(r, power_row_table(kind == DeformedKind::E ? PowerRow::deformed_e : PowerRow::deformed_h,
                                             part, s));
    return r;
}

/// ω(g_n) = e_n on the power basis.
inline bool omega_gn_check(int n, const Caps& caps = {})
{
    return table_eq(omega_apply(gn_table(n, Basis::power, caps)), power_row_table(PowerRow::elementary, n));
}

/// ω_{q,t}(E_μ(X;t)) = H_μ(X;q) and ω_{q,t}(H_μ(X;t)) = E_μ(X;q).
inline bool omega_duality_check(const Partition& mu)
{
    return table_eq(omega_apply(deformed_power_table(DeformedKind::E, mu, "t")),
                    deformed_power_table(DeformedKind::H, mu, "q"))
           && table_eq(omega_apply(deformed_power_table(DeformedKind::H, mu, "t")),
                       deformed_power_table(DeformedKind::E, mu, "q"));
}

/// The five inverse expansions of h_n and e_n on N letters, in order:
/// h_n = g_n(X;q,q); h_n = Σ Z_μ(1,0,q) H_μ(X;q); h_n = (-1)^n Σ Z_μ(0,1,q) E_μ(X;q);
/// e_n = Σ Z_μ(1,0,q) E_μ(X;q); e_n = (-1)^n Σ Z_μ(0,1,q) H_μ(X;q).
inline std::vector<std::pair<std::string, bool>> inverse_expansions_check(int n, int N, const Caps& caps = {})
{
    if (n < 1)
        throw UsageError("inverse expansions need n >= 1");
    const auto& qt = qt_universe();
    const auto& u = mac_universe(N);
    auto un = static_cast<unsigned>(n);
    auto h_n = SymmetricPolynomial::from_fraction(FactoredFraction(generator_polynomials(Generator::complete, N, un)[un]), N);
    auto e_n = SymmetricPolynomial::from_fraction(FactoredFraction(generator_polynomials(Generator::elementary, N, un)[un]), N);

    FactoredFraction q_for_t(detail::qt_q());
    auto at_t_eq_q = gn_polynomial(n, N, GnMethod::from_basis, caps)
                         .map_coefficients([&](const FactoredFraction& c) { return substitute(c, {{"t", q_for_t}}); });

    auto one = FactoredFraction::constant(qt, 1), zero = FactoredFraction::constant(qt, 0);
    FactoredFraction q_big(detail::mac_var(N, "q"));
    auto combine = [&](const FactoredFraction& a, const FactoredFraction& b, Basis basis, bool signed_sum) {
        std::vector<FactoredFraction> parts;
        for (const auto& mu : partitions_of(n)) {
            auto c = rebind(Z_at(mu, a, b, qt, caps), u);
            // deformed basis at parameter q: substitute t -> q in the element
            auto elem = substitute(FactoredFraction(basis_polynomial(basis, mu, N)), {{"t", q_big}});
            parts.push_back(c * elem);
        }
        auto total = sum(parts);
        if (signed_sum)
            total = total * detail::sign(n);
        return SymmetricPolynomial::from_fraction(total, N);
    };
    return {
        {"h_n = g_n(X;q,q)", sym_eq(h_n, at_t_eq_q)},
        {"h_n = sum Z(1,0,q) H(X;q)", sym_eq(h_n, combine(one, zero, Basis::deformed_h, false))},
        {"h_n = (-1)^n sum Z(0,1,q) E(X;q)", sym_eq(h_n, combine(zero, one, Basis::deformed_e, true))},
        {"e_n = sum Z(1,0,q) E(X;q)", sym_eq(e_n, combine(one, zero, Basis::deformed_e, false))},
        {"e_n = (-1)^n sum Z(0,1,q) H(X;q)", sym_eq(e_n, combine(zero, one, Basis::deformed_h, true))},
    };
}

/// The g_n, n = 0..order, as a series in u.
inline TruncatedSeries gn_series(int N, unsigned order, const Caps& caps = {})
{
    std::vector<FactoredFraction> coeffs;
    for (unsigned k = 0; k <= order; ++k)
        coeffs.push_back(gn_polynomial(static_cast<int>(k), N, GnMethod::from_basis, caps).to_fraction());
    return TruncatedSeries(mac_universe(N), "u", std::move(coeffs));
}

/// Σ q^n g_n = H_1[q(1-t)/(1-q) X] = Π (1 - x_i)/(1 - t x_i) · Σ g_n,
/// degree-graded by u, to the given order.
inline bool prop1_check(int N, unsigned order, const Caps& caps = {})
{
    using namespace detail;
    auto g = gn_series(N, order, caps);
    std::vector<FactoredFraction> shifted;
    for (unsigned k = 0; k <= order; ++k)
        shifted.push_back(g[k] * FactoredFraction(mac_var(N, "q", k)));
    TruncatedSeries lhs(mac_universe(N), "u", std::move(shifted));

    std::vector<SeriesFactor> heine, ratio;
    for (int i = 1; i <= N; ++i) {
        Polynomial ux = mac_var(N, "u") * mac_x(N, i);
        heine.push_back(SeriesFactor::q_numerator(mac_one(N) - mac_var(N, "t") * mac_var(N, "q") * ux));
        heine.push_back(SeriesFactor::q_denominator(mac_one(N) - mac_var(N, "q") * ux));
        ratio.push_back(SeriesFactor::numerator(mac_one(N) - ux));
        ratio.push_back(SeriesFactor::denominator(mac_one(N) - mac_var(N, "t") * ux));
    }
    auto middle = series_expand(heine, mac_universe(N), "u", order);
    auto right = series_expand(ratio, mac_universe(N), "u", order) * g;
    return series_eq(lhs, middle) && series_eq(lhs, right);
}

/// H_1[(q-t)/(1-q) X] = Π (1 - x_i) · Σ g_n, with the left side both as a
/// Heine product and through the Cauchy pairing Σ_μ Z_μ(q,t,q) h_μ(X).
inline bool prop2_check(int N, unsigned order, const Caps& caps = {})
{
    using namespace detail;
    auto g = gn_series(N, order, caps);
    std::vector<SeriesFactor> heine, linear;
    for (int i = 1; i <= N; ++i) {
        Polynomial ux = mac_var(N, "u") * mac_x(N, i);
        heine.push_back(SeriesFactor::q_numerator(mac_one(N) - mac_var(N, "t") * ux));
        heine.push_back(SeriesFactor::q_denominator(mac_one(N) - mac_var(N, "q") * ux));
        linear.push_back(SeriesFactor::numerator(mac_one(N) - ux));
    }
    auto lhs = series_expand(heine, mac_universe(N), "u", order);
    auto rhs = series_expand(linear, mac_universe(N), "u", order) * g;

    const auto& qt = qt_universe();
    FactoredFraction q(qt_q()), t(qt_t());
    std::vector<FactoredFraction> cauchy;
    for (unsigned k = 0; k <= order; ++k) {
        std::vector<FactoredFraction> parts;
        for (const auto& mu : partitions_of(static_cast<int>(k)))
            parts.push_back(rebind(Z_at(mu, q, t, qt, caps), mac_universe(N))
                            * FactoredFraction(basis_polynomial(Basis::complete, mu, N)));
        cauchy.push_back(sum(parts));
    }
    TruncatedSeries via_cauchy(mac_universe(N), "u", std::move(cauchy));
    return series_eq(lhs, rhs) && series_eq(lhs, via_cauchy);
}

} // namespace qmono
