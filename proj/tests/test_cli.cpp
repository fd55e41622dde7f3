#include <catch_amalgamated.hpp>

#include "qmono/cli.hpp"

#include <cstdlib>
#include <sstream>

using namespace qmono;

namespace {

struct Run {
    RunReport report;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    auto report = execute(args, out, err);
    return {report, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

/// Parsing and dumping again gives the same bytes.
bool round_trips(const std::string& out)
{
    std::string body = out;
    if (!body.empty() && body.back() == '\n')
        body.pop_back();
    return dump(Json::parse(body)) == body;
}

} // namespace

TEST_CASE("specialize prints the closed form", "[cli]")
{
    auto r = run({"specialize", "--mu", "1", "--form", "theorem1", "--format", "text"});
    CHECK(r.report.exit_code == exit_ok);
    CHECK(r.out == "(a - b) / (-q + 1)\n");

    auto two = run({"specialize", "--mu", "1,1", "--form", "theorem1", "--format", "text"});
    const auto& u = spec_universe();
    FactoredFraction expected(parse_polynomial("(a - b)*(a*q - b)", u),
                              {{parse_polynomial("1 - q", u), 1}, {parse_polynomial("1 - q^2", u), 1}});
    CHECK(first_line(two.out) == expected.to_string());

    // default output is the text line followed by a one-line JSON record
    auto both = run({"specialize", "--mu", "2,1"});
    auto second = both.out.substr(both.out.find('\n') + 1);
    auto record = Json::parse(second);
    CHECK(record["partition"] == Json::parse("[2,1]"));
    CHECK(record["form"] == "theorem1");
}

TEST_CASE("specialize JSON rebuilds the fraction", "[cli][serialize]")
{
    for (const char* form : {"theorem1", "theorem3", "oracle-powersum"}) {
        auto r = run({"specialize", "--mu", "2,1,1", "--form", form, "--format", "json"});
        REQUIRE(r.report.exit_code == exit_ok);
        CHECK(round_trips(r.out));
        auto j = Json::parse(r.out);
        auto u = universe_from_json(j["variables"]);
        auto f = fraction_from_json(j, u);
        CHECK(frac_eq(f, rebind(spec_Z(Partition({2, 1, 1})).value, u)));
        auto again = to_json(f);
        CHECK(again["numerator"] == j["numerator"]);
        CHECK(again["denominator_factors"] == j["denominator_factors"]);
    }
    auto sub = run({"specialize", "--mu", "2,1", "--subst", "a=1,b=q^4", "--format", "json"});
    auto j = Json::parse(sub.out);
    CHECK(j["substitution"]["b"] == "q^4");
    CHECK(j["denominator_factors"].empty());
    CHECK(j["numerator"] == "q^8 + 2 * q^7 + q^6 + 2 * q^5 + 2 * q^4 + q^3 + 2 * q^2 + q");
}

TEST_CASE("verify sweeps report zero failures", "[cli]")
{
    auto r = run({"verify", "--identity", "prop6", "--max-weight", "10"});
    CHECK(r.report.exit_code == exit_ok);
    CHECK(r.report.failures.empty());
    CHECK(r.report.instances_checked > 100);
    for (const char* id : {"thm6", "thm7"}) {
        auto s = run({"verify", "--identity", id, "--n", "3", "--format", "json"});
        CHECK(s.report.exit_code == exit_ok);
        CHECK(round_trips(s.out));
        CHECK(Json::parse(s.out)["instances_checked"] == 3);
    }
    CHECK(run({"verify", "--identity", "prop5", "--max-weight", "6"}).report.exit_code == exit_ok);
    CHECK(run({"verify", "--identity", "prop7"}).report.instances_checked == 5);
    CHECK(run({"verify", "--identity", "prop8", "--n", "3"}).report.exit_code == exit_ok);
    CHECK(run({"verify", "--identity", "appendix", "--n", "3"}).report.instances_checked == 8);
}

TEST_CASE("output does not depend on the worker count", "[cli]")
{
    ::setenv("QMONO_THREADS", "3", 1);
    auto threaded = run({"verify", "--identity", "prop5", "--max-weight", "7", "--format", "json"});
    auto pos3 = run({"positivity", "--max-weight", "5", "--format", "json"});
    ::unsetenv("QMONO_THREADS");
    auto serial = run({"verify", "--identity", "prop5", "--max-weight", "7", "--format", "json"});
    auto pos1 = run({"positivity", "--max-weight", "5", "--format", "json"});
    CHECK(threaded.out == serial.out);
    CHECK(pos3.out == pos1.out);
    CHECK(round_trips(pos1.out));
}

TEST_CASE("expand JSON round-trips", "[cli][serialize]")
{
    for (const char* basis : {"power", "monomial", "complete", "elementary", "deformed-h", "deformed-e"}) {
        auto r = run({"expand", "--n", "4", "--basis", basis, "--format", "json"});
        REQUIRE(r.report.exit_code == exit_ok);
        CHECK(round_trips(r.out));
        auto table = table_from_json(Json::parse(r.out));
        CHECK(dump(to_json(table)) + "\n" == r.out);
        CHECK(table.entries.size() == 5);
    }
    auto text = run({"expand", "--n", "1", "--basis", "power"});
    CHECK(text.out.find("(1): (-t + 1) / (-q + 1)") != std::string::npos);
}

TEST_CASE("eigencheck and positivity", "[cli]")
{
    auto e = run({"eigencheck", "--n", "3", "--N", "3", "--format", "json"});
    CHECK(e.report.exit_code == exit_ok);
    CHECK(Json::parse(e.out)["holds"] == true);
    CHECK(round_trips(e.out));
    auto p = run({"positivity", "--mu", "2,1", "--format", "json"});
    CHECK(Json::parse(p.out)["partitions"][0]["H"] == "q * t + 2 * q + 2 * t + 1");
}

TEST_CASE("exit codes", "[cli]")
{
    CHECK(run({}).report.exit_code == exit_usage);
    CHECK(run({"frobnicate"}).report.exit_code == exit_usage);
    CHECK(run({"expand", "--n", "2", "--basis", "schur"}).report.exit_code == exit_usage);
    CHECK(run({"expand", "--n", "2", "--basis", "power", "--bogus"}).report.exit_code == exit_usage);
    CHECK(run({"specialize", "--mu", "1,3"}).report.exit_code == exit_usage);
    CHECK(run({"specialize", "--mu", "2,1", "--form", "oracle-direct"}).report.exit_code == exit_usage);
    CHECK(run({"specialize", "--mu", "2,1", "--subst", "a=q"}).report.exit_code == exit_ok);
    CHECK(run({"verify", "--identity", "thm6", "--n", "6"}).report.exit_code == exit_resource);
    CHECK(run({"eigencheck", "--n", "1", "--N", "4"}).report.exit_code == exit_resource);
    CHECK(run({"eigencheck", "--n", "1", "--N", "4", "--max-N", "4"}).report.exit_code == exit_ok);
    CHECK(run({"positivity", "--mu", "1,1,1,1,1,1,1"}).report.exit_code == exit_resource);
    CHECK(run({"verify", "--identity", "thm6", "--format", "yaml"}).report.exit_code == exit_usage);
    ::setenv("QMONO_THREADS", "many", 1);
    CHECK(run({"verify", "--identity", "prop7"}).report.exit_code == exit_usage);
    ::unsetenv("QMONO_THREADS");
    auto help = run({"--help"});
    CHECK(help.report.exit_code == exit_ok);
    CHECK(help.out.find("selftest") != std::string::npos);
}

TEST_CASE("run report serializes", "[cli]")
{
    auto r = run({"verify", "--identity", "prop7", "--n", "2"});
    auto j = to_json(r.report);
    CHECK(j["command"] == "verify");
    CHECK(j["instances_checked"] == 2);
    CHECK(j["failures"].empty());
    CHECK(j["exit_code"] == 0);
}

TEST_CASE("selftest passes every criterion", "[cli][slow]")
{
    auto r = run({"selftest"});
    CHECK(r.report.exit_code == exit_ok);
    CHECK(r.report.instances_checked == 10);
    std::istringstream lines(r.out);
    std::string line;
    int pass = 0;
    while (std::getline(lines, line))
        pass += line.rfind("PASS [", 0) == 0 ? 1 : 0;
    CHECK(pass == 10);
    auto j = run({"selftest", "--format", "json"});
    CHECK(round_trips(j.out));
}
