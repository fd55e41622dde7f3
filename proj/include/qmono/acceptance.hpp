#pragma once

#include "qmono/identities.hpp"
#include "qmono/macdonald.hpp"
#include "qmono/parallel.hpp"
#include "qmono/positivity.hpp"
#include "qmono/specialization.hpp"

#include <chrono>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace qmono {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail; // instance count or the first failing instance
    double seconds = 0;
};

namespace acceptance {

/// Tally of a sweep: how many instances ran and the first one that failed.
struct Tally {
    std::size_t checked = 0;
    std::vector<std::string> failures;

    void record(bool ok, const std::string& what)
    {
        ++checked;
        if (!ok)
            failures.push_back(what);
    }
    void merge(const Tally& other)
    {
        checked += other.checked;
        failures.insert(failures.end(), other.failures.begin(), other.failures.end());
    }
    bool ok() const { return failures.empty() && checked > 0; }
    std::string summary() const
    {
        std::ostringstream os;
        os << checked << " instances";
        if (!failures.empty())
            os << ", " << failures.size() << " failed, first: " << failures.front();
        return os.str();
    }
};

inline std::vector<Partition> nonempty_up_to(int w, int max_length = 1 << 20)
{
    std::vector<Partition> out;
    for (auto& p : partitions_up_to(w))
        if (!p.empty() && p.length() <= max_length)
            out.push_back(std::move(p));
    return out;
}

/// Runs check(mu) over the partitions on `threads` workers, in partition order.
inline Tally sweep(const std::vector<Partition>& parts, const std::function<bool(const Partition&)>& check,
                   unsigned threads, const std::string& label = "")
{
    auto results = parallel_map(parts.size(), [&](std::size_t i) { return check(parts[i]) ? 1 : 0; }, threads);
    Tally t;
    for (std::size_t i = 0; i < parts.size(); ++i)
        t.record(results[i] != 0, label + parts[i].to_string());
    return t;
}

inline Tally z_equals_w(unsigned threads)
{
    auto parts = nonempty_up_to(8);
    Tally t = sweep(parts, [](const Partition& mu) { return frac_eq(spec_Z(mu).value, spec_W(mu).value); }, threads);
    t.record(parts.size() == 66, "partition count " + std::to_string(parts.size()));
    return t;
}

inline Tally oracle_equivalence(unsigned threads)
{
    return sweep(nonempty_up_to(7),
                 [](const Partition& mu) { return frac_eq(spec_Z(mu).value, spec_oracle_powersum(mu).value); }, threads);
}

inline Tally evaluation_oracle(unsigned threads)
{
    return sweep(
        nonempty_up_to(6, 5),
        [](const Partition& mu) {
            auto z = spec_Z(mu).value;
            for (int N = mu.length(); N <= 5; ++N) {
                auto v = evaluate_at_geometric(z, N).simplified();
                if (!v.is_polynomial() || !frac_eq(v, spec_oracle_direct(mu, N).value))
                    return false;
            }
            return true;
        },
        threads);
}

inline Tally gauss_polynomials()
{
    Tally t;
    for (int N = 1; N <= 6; ++N)
        for (int k = 1; k <= N; ++k) {
            auto v = evaluate_at_geometric(spec_generator(GeneratorKind::elementary, k).value, N);
            t.record(frac_eq(v, gauss_binomial_scaled(k, N)), "k=" + std::to_string(k) + " N=" + std::to_string(N));
        }
    return t;
}

inline Tally recurrences(unsigned threads)
{
    auto parts = nonempty_up_to(8);
    Tally t;
    t.merge(sweep(parts, [](const Partition& mu) { return check_prop3(mu); }, threads, "a-shift "));
    t.merge(sweep(parts, [](const Partition& mu) { return check_prop4(mu); }, threads, "qa-shift "));
    t.merge(sweep(parts, [](const Partition& mu) { return check_theorem2(mu); }, threads, "t-recurrence "));
    t.merge(sweep(parts, [](const Partition& mu) { return check_theorem4(mu); }, threads, "removal "));
    return t;
}

/// The n=2 case written out term by term.
inline bool two_letter_display()
{
    const auto& u = xy_universe(2);
    auto F = [&](const char* num, std::vector<const char*> den) {
        std::vector<Factor> fs;
        for (auto d : den)
            fs.push_back({parse_polynomial(d, u), 1});
        return FactoredFraction(parse_polynomial(num, u), std::move(fs));
    };
    auto left = F("(y1 - x1)*(y2 - x1*x2)", {"1 - x1", "1 - x1*x2"})
                + F("(y2 - x2)*(y1 - x1*x2)", {"1 - x2", "1 - x1*x2"});
    auto middle = F("(y1 - x1^2)*(y2 - x2)", {"1 - x1", "1 - x1*x2"})
                  + F("(y2 - x2^2)*(y1 - x1)", {"1 - x2", "1 - x1*x2"});
    auto right = F("(y1 - x1)*(y2 - x2)", {"1 - x1", "1 - x2"}) + F("y1*y2 - x1*x2", {"1 - x1*x2"});
    return frac_eq(symmetrized_side(2, Side::thm6_left).value, left)
           && frac_eq(symmetrized_side(2, Side::thm6_right).value, middle)
           && frac_eq(symmetrized_side(2, Side::thm7_right).value, right) && frac_eq(left, middle)
           && frac_eq(left, right);
}

inline Tally symmetrized_identities(unsigned threads)
{
    auto ok = parallel_map(4, [](std::size_t i) { return symmetrized_identity_holds(static_cast<int>(i) + 1) ? 1 : 0; },
                           threads);
    Tally t;
    for (std::size_t i = 0; i < ok.size(); ++i)
        t.record(ok[i] != 0, "n=" + std::to_string(i + 1));
    t.record(two_letter_display(), "two-letter display");
    return t;
}

inline Tally constants(unsigned threads)
{
    Tally t;
    t.merge(sweep(
        nonempty_up_to(9, 6),
        [](const Partition& mu) {
            return frac_eq(prop5_sum(mu), FactoredFraction::constant(qt_universe(), Rational(mu.arrangement_count())));
        },
        threads, "arrangement count "));
    t.merge(sweep(
        nonempty_up_to(10, 7), [](const Partition& mu) { return littlewood_sum(mu) == 1 / z_of(mu); }, threads,
        "inverse centralizer "));
    for (int n = 1; n <= 5; ++n) {
        t.record(frac_eq(prop7_prop8(n, ProductKind::prop7), prop7_prop8_expected(n, ProductKind::prop7)),
                 "factorial n=" + std::to_string(n));
        t.record(frac_eq(prop7_prop8(n, ProductKind::prop8), prop7_prop8_expected(n, ProductKind::prop8)),
                 "inverse product n=" + std::to_string(n));
    }
    return t;
}

inline Tally appendix(unsigned threads)
{
    struct Case {
        int n, relation;
        AppendixSide side;
    };
    std::vector<Case> cases;
    for (int n = 2; n <= 4; ++n)
        for (int rel : {13, 14})
            for (AppendixSide s : {AppendixSide::L, AppendixSide::R})
                cases.push_back({n, rel, s});
    auto ok = parallel_map(
        cases.size(), [&](std::size_t i) { return appendix_step(cases[i].n, cases[i].relation, cases[i].side) ? 1 : 0; },
        threads);
    Tally t;
    for (std::size_t i = 0; i < cases.size(); ++i)
        t.record(ok[i] != 0, "n=" + std::to_string(cases[i].n) + " relation " + std::to_string(cases[i].relation)
                                 + (cases[i].side == AppendixSide::L ? " L" : " R"));
    return t;
}

inline Tally positivity(unsigned threads)
{
    Tally t = sweep(nonempty_up_to(8, 5), [](const Partition& mu) { return thm8_check(mu).ok(); }, threads);
    t.record(H_poly(Partition({2, 1})) == parse_polynomial("1 + 2*q + 2*t + q*t", qt_universe()), "H(2,1) value");
    t.record(H_nk_closed(2, 1) == H_poly(Partition({2, 1})), "H(2,1) closed form");
    for (int n = 2; n <= 5; ++n)
        for (int k = 1; k < n; ++k)
            t.record(H_nk_closed(n, k) == H_poly(Partition({n, k})),
                     "closed form (" + std::to_string(n) + "," + std::to_string(k) + ")");
    return t;
}

inline Tally macdonald_suite()
{
    Tally t;
    for (int n = 0; n <= 5; ++n)
        t.record(six_way_check(n, 3), "six expansions n=" + std::to_string(n));
    for (int N = 2; N <= 3; ++N)
        for (int n = 0; n <= 4; ++n)
            t.record(apply_D_eigencheck(n, N), "eigen-equation N=" + std::to_string(N) + " n=" + std::to_string(n));
    for (int N = 1; N <= 4; ++N) {
        // at n = 0 the eigenvalue is (1 - t^N)/(1 - t), which is the first partial-fraction sum
        const auto& u = qt_universe();
        Polynomial one = Polynomial::constant(u, 1), t_ = Polynomial::variable(u, "t");
        auto un = static_cast<unsigned>(N);
        auto eigen0 = FactoredFraction(t_.pow(un - 1)) + FactoredFraction(one - t_.pow(un - 1), {{one - t_, 1}});
        t.record(frac_eq(eigen0, FactoredFraction(one - t_.pow(un), {{one - t_, 1}})),
                 "eigenvalue at degree 0, N=" + std::to_string(N));
        t.record(prop9_check(N).ok(), "partial fractions N=" + std::to_string(N));
    }
    t.record(prop1_check(3, 5), "shifted generating series");
    t.record(prop2_check(3, 5), "Cauchy generating series");
    for (int n = 1; n <= 5; ++n)
        t.record(omega_gn_check(n), "omega n=" + std::to_string(n));
    for (int n = 1; n <= 4; ++n)
        for (const auto& [name, ok] : inverse_expansions_check(n, 3))
            t.record(ok, name + " n=" + std::to_string(n));
    return t;
}

struct Criterion {
    int id;
    const char* name;
    std::function<Tally(unsigned)> run;
};

inline std::vector<Criterion> criteria()
{
    return {
        {1, "Z equals W for all 66 partitions of weight 1..8", z_equals_w},
        {2, "Z equals the power-sum oracle up to weight 7", oracle_equivalence},
        {3, "geometric evaluation matches direct sums up to weight 6, N <= 5", evaluation_oracle},
        {4, "elementary generators give scaled Gauss polynomials, k <= N <= 6", [](unsigned) { return gauss_polynomials(); }},
        {5, "shift and removal recurrences up to weight 8", recurrences},
        {6, "three symmetrized sums agree for n <= 4, n=2 display", symmetrized_identities},
        {7, "derangement constants and symmetrized products", constants},
        {8, "appendix recurrences, both sides, n = 2..4", appendix},
        {9, "positivity of H up to weight 8, length <= 5", positivity},
        {10, "row Macdonald polynomial suite", [](unsigned) { return macdonald_suite(); }},
    };
}

} // namespace acceptance

/// Runs every criterion; errors inside a criterion count as a failure of it.
/// `on_result` is called as each one finishes.
inline std::vector<CriterionResult> run_acceptance(unsigned threads,
                                                   const std::function<void(const CriterionResult&)>& on_result = {})
{
    std::vector<CriterionResult> out;
    for (const auto& c : acceptance::criteria()) {
        CriterionResult r{c.id, c.name, false, "", 0};
        auto start = std::chrono::steady_clock::now();
        try {
            auto tally = c.run(threads);
            r.passed = tally.ok();
            r.detail = tally.summary();
        } catch (const std::exception& e) {
            r.detail = std::string("error: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (on_result)
            on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

inline std::string format_criterion(const CriterionResult& r)
{
    std::ostringstream os;
    os << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " (" << r.detail << ")";
    return os.str();
}

} // namespace qmono
