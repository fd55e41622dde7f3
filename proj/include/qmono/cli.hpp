#pragma once

#include "qmono/acceptance.hpp"
#include "qmono/identities.hpp"
#include "qmono/macdonald.hpp"
#include "qmono/parallel.hpp"
#include "qmono/positivity.hpp"
#include "qmono/serialize.hpp"
#include "qmono/specialization.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qmono {

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_usage = 2, exit_resource = 3 };

struct Failure {
    std::string instance;
    std::string expected;
    std::string actual;
};

struct RunReport {
    std::string command;
    std::size_t instances_checked = 0;
    std::vector<Failure> failures;
    double elapsed_seconds = 0;
    int exit_code = exit_ok;
};

inline Json to_json(const RunReport& r)
{
    Json failures = Json::array();
    for (const auto& f : r.failures)
        failures.push_back(Json{{"instance", f.instance}, {"expected", f.expected}, {"actual", f.actual}});
    return Json{{"command", r.command},
                {"instances_checked", r.instances_checked},
                {"failures", std::move(failures)},
                {"elapsed_seconds", r.elapsed_seconds},
                {"exit_code", r.exit_code}};
}

namespace cli {

struct Options {
    std::string format = "text";
    std::string mu;
    std::string form = "theorem1";
    std::string subst;
    std::string identity;
    std::string basis;
    std::optional<int> n;
    std::optional<int> N;
    std::optional<int> max_weight;
    std::optional<int> max_length;
    std::optional<int> max_n;
    std::optional<int> max_N;
};

/// One checked instance in a sweep: its descriptor, whether it held, and for
/// failures what was expected and what came out.
struct Instance {
    std::string name;
    bool holds = false;
    std::string expected;
    std::string actual;
};

inline Json instances_json(const std::string& command, const std::vector<Instance>& items)
{
    Json list = Json::array();
    Json failures = Json::array();
    for (const auto& i : items) {
        list.push_back(Json{{"instance", i.name}, {"holds", i.holds}});
        if (!i.holds)
            failures.push_back(Json{{"instance", i.name}, {"expected", i.expected}, {"actual", i.actual}});
    }
    return Json{{"command", command},
                {"instances_checked", items.size()},
                {"instances", std::move(list)},
                {"failures", std::move(failures)}};
}

inline void finish(RunReport& report, const std::vector<Instance>& items)
{
    report.instances_checked += items.size();
    for (const auto& i : items)
        if (!i.holds)
            report.failures.push_back({i.name, i.expected, i.actual});
}

inline void print_instances(std::ostream& out, const std::string& command, const std::vector<Instance>& items,
                            const std::string& format)
{
    if (format == "json") {
        out << dump(instances_json(command, items)) << '\n';
        return;
    }
    std::size_t failed = 0;
    for (const auto& i : items) {
        out << (i.holds ? "ok   " : "FAIL ") << i.name << '\n';
        if (!i.holds) {
            ++failed;
            if (!i.expected.empty())
                out << "     expected: " << i.expected << "\n     actual:   " << i.actual << '\n';
        }
    }
    out << items.size() << " instances checked, " << failed << " failed\n";
}

inline void require_format(const std::string& f, std::initializer_list<const char*> allowed)
{
    for (auto a : allowed)
        if (f == a)
            return;
    throw UsageError("unsupported --format '" + f + "'");
}

/// `a=1,b=q^4` into bindings over {a,b,q}.
inline Bindings parse_substitution(const std::string& text, Json& record)
{
    Bindings b;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("substitution items look like name=value, got '" + item + "'");
        std::string name = item.substr(0, eq);
        spec_universe()->require(name);
        if (b.count(name))
            throw UsageError("variable '" + name + "' is bound twice");
        auto value = parse_polynomial(item.substr(eq + 1), spec_universe());
        record[name] = value.to_string();
        b.emplace(name, FactoredFraction(std::move(value)));
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return b;
}

inline SpecFormula parse_form(const std::string& s)
{
    if (s == "theorem1")
        return SpecFormula::theorem1;
    if (s == "theorem3")
        return SpecFormula::theorem3;
    if (s == "oracle-powersum")
        return SpecFormula::oracle_powersum;
    if (s == "oracle-direct")
        return SpecFormula::oracle_direct;
    throw UsageError("unknown --form '" + s + "'");
}

inline void run_specialize(const Options& o, std::ostream& out, RunReport& report)
{
    require_format(o.format, {"text", "json", "both"});
    auto mu = parse_partition(o.mu);
    SpecResult r;
    switch (parse_form(o.form)) {
    case SpecFormula::theorem1: r = spec_Z(mu); break;
    case SpecFormula::theorem3: r = spec_W(mu); break;
    case SpecFormula::oracle_powersum: r = spec_oracle_powersum(mu); break;
    case SpecFormula::oracle_direct:
        if (!o.N)
            throw UsageError("--form oracle-direct needs --N");
        r = spec_oracle_direct(mu, *o.N);
        break;
    }
    Json record;
    record["partition"] = to_json(mu);
    record["form"] = o.form;
    FactoredFraction value = r.value;
    if (!o.subst.empty()) {
        Json bound = Json::object();
        auto bindings = parse_substitution(o.subst, bound);
        value = substitute(value, bindings).simplified();
        record["substitution"] = std::move(bound);
    }
    record["variables"] = variables_json(spec_universe());
    Json fraction = to_json(value);
    for (auto& [k, v] : fraction.items())
        record[k] = v;
    if (o.format != "json")
        out << value.to_string() << '\n';
    if (o.format != "text")
        out << (o.format == "json" ? dump(record) : record.dump()) << '\n';
    report.instances_checked = 1;
}

inline std::vector<Partition> sweep_partitions(int max_weight, int max_length)
{
    std::vector<Partition> out;
    for (auto& p : partitions_up_to(max_weight))
        if (!p.empty() && p.length() <= max_length)
            out.push_back(std::move(p));
    return out;
}

inline void run_verify(const Options& o, std::ostream& out, RunReport& report, unsigned threads)
{
    require_format(o.format, {"text", "json"});
    Caps caps;
    if (o.max_n)
        caps.max_symmetrized_n = *o.max_n;
    const std::string& id = o.identity;
    std::vector<Instance> items;
    auto by_n = [&](int lo, int n, auto check) {
        if (n < lo)
            throw UsageError("--n must be at least " + std::to_string(lo));
        if (n > caps.max_symmetrized_n)
            throw ResourceLimitError("n=" + std::to_string(n) + " exceeds the symmetrization cap "
                                     + std::to_string(caps.max_symmetrized_n));
        std::vector<int> ns;
        for (int k = lo; k <= n; ++k)
            ns.push_back(k);
        return parallel_map(ns.size(), [&](std::size_t i) { return check(ns[i]); }, threads);
    };
    if (id == "thm6" || id == "thm7") {
        Side other = id == "thm6" ? Side::thm6_right : Side::thm7_right;
        items = by_n(1, o.n.value_or(4), [&](int k) {
            bool ok = sides_agree(k, Side::thm6_left, other, caps);
            return Instance{"n=" + std::to_string(k), ok, ok ? "" : "left side", ok ? "" : "right side differs"};
        });
    } else if (id == "prop5" || id == "prop6") {
        bool five = id == "prop5";
        auto parts = sweep_partitions(o.max_weight.value_or(five ? 9 : 10), o.max_length.value_or(five ? 6 : 7));
        items = parallel_map(
            parts.size(),
            [&](std::size_t i) {
                const auto& mu = parts[i];
                if (five) {
                    auto got = prop5_sum(mu, caps);
                    auto want = FactoredFraction::constant(qt_universe(), Rational(mu.arrangement_count()));
                    bool ok = frac_eq(got, want);
                    return Instance{"mu=" + mu.to_string(), ok, want.to_string(), ok ? "" : got.simplified().to_string()};
                }
                Rational got = littlewood_sum(mu, caps), want = 1 / z_of(mu);
                return Instance{"mu=" + mu.to_string(), got == want, want.get_str(), got.get_str()};
            },
            threads);
    } else if (id == "prop7" || id == "prop8") {
        auto kind = id == "prop7" ? ProductKind::prop7 : ProductKind::prop8;
        items = by_n(1, o.n.value_or(5), [&](int k) {
            auto got = prop7_prop8(k, kind, caps);
            auto want = prop7_prop8_expected(k, kind);
            bool ok = frac_eq(got, want);
            return Instance{"n=" + std::to_string(k), ok, want.to_string(), ok ? "" : got.to_string()};
        });
    } else if (id == "appendix") {
        int n = o.n.value_or(4);
        if (n < 2)
            throw UsageError("--n must be at least 2");
        if (n > caps.max_symmetrized_n)
            throw ResourceLimitError("n=" + std::to_string(n) + " exceeds the symmetrization cap "
                                     + std::to_string(caps.max_symmetrized_n));
        struct Case {
            int n, relation;
            AppendixSide side;
        };
        std::vector<Case> cases;
        for (int k = 2; k <= n; ++k)
            for (int rel : {13, 14})
                for (AppendixSide s : {AppendixSide::L, AppendixSide::R})
                    cases.push_back({k, rel, s});
        items = parallel_map(
            cases.size(),
            [&](std::size_t i) {
                const auto& c = cases[i];
                bool ok = appendix_step(c.n, c.relation, c.side, caps);
                return Instance{"n=" + std::to_string(c.n) + " relation=" + std::to_string(c.relation)
                                    + (c.side == AppendixSide::L ? " side=L" : " side=R"),
                                ok, ok ? "" : "recurrence", ok ? "" : "mismatch"};
            },
            threads);
    } else {
        throw UsageError("unknown --identity '" + id + "'");
    }
    print_instances(out, "verify " + id, items, o.format);
    finish(report, items);
}

inline void run_expand(const Options& o, std::ostream& out, RunReport& report)
{
    require_format(o.format, {"text", "json"});
    if (!o.n)
        throw UsageError("expand needs --n");
    auto table = gn_table(*o.n, parse_basis(o.basis));
    if (o.format == "json") {
        out << dump(to_json(table)) << '\n';
    } else {
        out << "g_" << table.n << " on the " << to_string(table.basis) << " basis\n";
        for (const auto& [mu, c] : table.entries)
            out << mu.to_string() << ": " << c.to_string() << '\n';
    }
    report.instances_checked = 1;
}

inline void run_positivity(const Options& o, std::ostream& out, RunReport& report, unsigned threads)
{
    require_format(o.format, {"text", "json"});
    std::vector<Partition> parts;
    if (!o.mu.empty())
        parts.push_back(parse_partition(o.mu));
    else
        parts = sweep_partitions(o.max_weight.value_or(8), o.max_length.value_or(5));
    auto reports = parallel_map(parts.size(), [&](std::size_t i) { return thm8_check(parts[i]); }, threads);
    std::vector<Instance> items;
    Json list = Json::array();
    for (const auto& r : reports) {
        std::string name = "mu=" + r.partition.to_string();
        std::string verdict = std::string(r.nonnegative_integers ? "" : " negative-or-fractional")
                              + (r.hbar_is_polynomial ? "" : " hbar-not-polynomial")
                              + (r.identity_holds ? "" : " factorization") + (r.prop5_consequence ? "" : " size-identity");
        items.push_back({name, r.ok(), r.ok() ? "" : "all checks", r.ok() ? "" : "failed:" + verdict});
        list.push_back(Json{{"partition", to_json(r.partition)},
                            {"H", r.H.to_string()},
                            {"Hbar", r.hbar_is_polynomial ? Json(r.Hbar.to_string()) : Json(nullptr)},
                            {"nonnegative_integers", r.nonnegative_integers},
                            {"hbar_is_polynomial", r.hbar_is_polynomial},
                            {"factorization_holds", r.identity_holds},
                            {"size_identity_holds", r.prop5_consequence}});
    }
    if (o.format == "json") {
        Json doc = instances_json("positivity", items);
        doc["partitions"] = std::move(list);
        out << dump(doc) << '\n';
    } else {
        for (const auto& r : reports)
            out << (r.ok() ? "ok   " : "FAIL ") << r.partition.to_string() << "  H = " << r.H.to_string() << '\n';
        std::size_t failed = 0;
        for (const auto& i : items)
            failed += i.holds ? 0 : 1;
        out << items.size() << " instances checked, " << failed << " failed\n";
    }
    finish(report, items);
}

inline void run_eigencheck(const Options& o, std::ostream& out, RunReport& report)
{
    require_format(o.format, {"text", "json"});
    if (!o.n || !o.N)
        throw UsageError("eigencheck needs --n and --N");
    Caps caps;
    if (o.max_N)
        caps.max_operator_N = *o.max_N;
    bool ok = apply_D_eigencheck(*o.n, *o.N, caps);
    const auto& u = qt_universe();
    Polynomial one = Polynomial::constant(u, 1), t = Polynomial::variable(u, "t");
    auto top = static_cast<unsigned>(*o.N - 1);
    auto eigen = (FactoredFraction(Polynomial::variable(u, "q", static_cast<unsigned>(*o.n)) * t.pow(top))
                  + FactoredFraction(one - t.pow(top), {{one - t, 1}}))
                     .simplified();
    std::string name = "n=" + std::to_string(*o.n) + " N=" + std::to_string(*o.N);
    if (o.format == "json") {
        out << dump(Json{{"command", "eigencheck"}, {"n", *o.n}, {"N", *o.N}, {"eigenvalue", to_json(eigen)}, {"holds", ok}})
            << '\n';
    } else {
        out << (ok ? "ok   " : "FAIL ") << name << "  eigenvalue " << eigen.to_string() << '\n';
    }
    std::vector<Instance> items{{name, ok, ok ? "" : "eigenfunction", ok ? "" : "not an eigenfunction"}};
    finish(report, items);
}

inline void run_selftest(const Options& o, std::ostream& out, RunReport& report, unsigned threads)
{
    require_format(o.format, {"text", "json"});
    auto results = run_acceptance(threads, [&](const CriterionResult& r) {
        if (o.format == "text")
            out << format_criterion(r) << std::endl;
    });
    Json list = Json::array();
    for (const auto& r : results) {
        ++report.instances_checked;
        if (!r.passed)
            report.failures.push_back({"criterion " + std::to_string(r.id), "pass", r.detail});
        list.push_back(Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    if (o.format == "json")
        out << dump(Json{{"command", "selftest"}, {"criteria", std::move(list)}}) << '\n';
}

} // namespace cli

/// Parses and runs one command line (args excludes the program name). Output
/// goes to `out`, diagnostics to `err`.
inline RunReport execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    auto start = std::chrono::steady_clock::now();
    RunReport report;
    cli::Options o;

    CLI::App app{"Exact checks of q-specializations, symmetrized identities and row Macdonald expansions", "qmono"};
    app.require_subcommand(1);
    std::optional<std::string> format;

    auto* spec = app.add_subcommand("specialize", "Specialize m_mu at (a-b)/(1-q)");
    spec->add_option("--mu", o.mu, "partition, e.g. 2,1")->required();
    spec->add_option("--form", o.form, "theorem1|theorem3|oracle-powersum|oracle-direct")->capture_default_str();
    spec->add_option("--N", o.N, "alphabet size for oracle-direct");
    spec->add_option("--subst", o.subst, "substitution, e.g. a=1,b=q^4");
    spec->add_option("--format", format, "text, json or both");

    auto* verify = app.add_subcommand("verify", "Verify an identity over a range of instances");
    verify->add_option("--identity", o.identity, "thm6|thm7|prop5|prop6|prop7|prop8|appendix")->required();
    verify->add_option("--n", o.n, "largest n");
    verify->add_option("--max-weight", o.max_weight, "largest partition weight");
    verify->add_option("--max-length", o.max_length, "largest partition length");
    verify->add_option("--max-n", o.max_n, "symmetrization cap");
    verify->add_option("--format", format, "text or json");

    auto* expand = app.add_subcommand("expand", "Print the coefficients of g_n on one basis");
    expand->add_option("--n", o.n, "degree")->required();
    expand->add_option("--basis", o.basis, "power|monomial|complete|elementary|deformed-h|deformed-e")->required();
    expand->add_option("--format", format, "text or json");

    auto* pos = app.add_subcommand("positivity", "Check the positivity polynomial H");
    pos->add_option("--max-weight", o.max_weight, "largest partition weight");
    pos->add_option("--max-length", o.max_length, "largest partition length");
    pos->add_option("--mu", o.mu, "a single partition");
    pos->add_option("--format", format, "text or json");

    auto* eig = app.add_subcommand("eigencheck", "Check that g_n is an eigenfunction of the difference operator");
    eig->add_option("--n", o.n, "degree")->required();
    eig->add_option("--N", o.N, "alphabet size")->required();
    eig->add_option("--max-N", o.max_N, "alphabet cap");
    eig->add_option("--format", format, "text or json");

    auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
    self->add_option("--format", format, "text or json");

    auto finish = [&](int code) {
        report.exit_code = code;
        report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return report;
    };

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return finish(exit_ok);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        if (app.get_subcommands().empty())
            err << app.help();
        return finish(exit_usage);
    }

    auto* sub = app.get_subcommands().front();
    report.command = sub->get_name();
    o.format = format.value_or(sub == spec ? "both" : "text");
    try {
        unsigned threads = thread_count_from_env();
        if (sub == spec)
            cli::run_specialize(o, out, report);
        else if (sub == verify)
            cli::run_verify(o, out, report, threads);
        else if (sub == expand)
            cli::run_expand(o, out, report);
        else if (sub == pos)
            cli::run_positivity(o, out, report, threads);
        else if (sub == eig)
            cli::run_eigencheck(o, out, report);
        else
            cli::run_selftest(o, out, report, threads);
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << '\n';
        return finish(exit_resource);
    } catch (const InternalConsistencyError& e) {
        err << "internal check failed: " << e.what() << '\n';
        return finish(exit_failure);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return finish(exit_usage);
    }
    return finish(report.failures.empty() ? exit_ok : exit_failure);
}

} // namespace qmono
