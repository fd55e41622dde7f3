#include <catch_amalgamated.hpp>

#include "qmono/partitions.hpp"

#include <set>

using namespace qmono;

namespace {

Partition mu(std::vector<int> parts) { return Partition(std::move(parts)); }

/// Number of partitions of n by the pentagonal-free recursion p(n, k) = p(n, k-1) + p(n-k, k).
long count_partitions(int n)
{
    std::vector<long> p(static_cast<std::size_t>(n + 1), 0);
    p[0] = 1;
    for (int k = 1; k <= n; ++k)
        for (int m = k; m <= n; ++m)
            p[static_cast<std::size_t>(m)] += p[static_cast<std::size_t>(m - k)];
    return p[static_cast<std::size_t>(n)];
}

} // namespace

TEST_CASE("partition validation and accessors", "[partitions]")
{
    CHECK_THROWS_AS(mu({1, 2}), UsageError);
    CHECK_THROWS_AS(mu({2, 0}), UsageError);
    auto p = mu({3, 1, 1});
    CHECK(p.weight() == 5);
    CHECK(p.length() == 3);
    CHECK(p.multiplicity(1) == 2);
    CHECK(p.multiplicity(2) == 0);
    CHECK(p.to_string() == "(3,1,1)");
    CHECK(p.without(1) == mu({3, 1}));
    CHECK_THROWS_AS(p.without(2), UsageError);
    CHECK(p.distinct_parts() == std::vector<int>{3, 1});
    CHECK(Partition::from_parts({1, 3, 1}) == p);
    CHECK(parse_partition("3,1,1") == p);
    CHECK(parse_partition("[3, 1, 1]") == p);
    CHECK_THROWS_AS(parse_partition("3,,1"), UsageError);
    CHECK_THROWS_AS(parse_partition("3,x"), UsageError);
}

TEST_CASE("partition enumeration", "[partitions]")
{
    auto two = partitions_up_to(2);
    REQUIRE(two.size() == 3);
    CHECK(two[0] == mu({1}));
    CHECK(two[1] == mu({2}));
    CHECK(two[2] == mu({1, 1}));
    CHECK(partitions_of(4).size() == 5);
    CHECK(partitions_up_to(0).empty());
    CHECK(partitions_of(0).size() == 1);
    CHECK(partitions_up_to(8).size() == 66);
    for (int n = 1; n <= 12; ++n) {
        auto ps = partitions_of(n);
        CHECK(static_cast<long>(ps.size()) == count_partitions(n));
        std::set<Partition> distinct(ps.begin(), ps.end());
        CHECK(distinct.size() == ps.size());
        for (const auto& p : ps)
            CHECK(p.weight() == n);
    }
}

TEST_CASE("derangements of small partitions", "[partitions]")
{
    auto d = derangements(mu({2, 1}));
    REQUIRE(d.size() == 2);
    CHECK(d[0].entries == std::vector<int>{1, 2});
    CHECK(d[0].prefix(0) == 0);
    CHECK(d[0].prefix(1) == 1);
    CHECK(d[0].prefix(2) == 3);
    CHECK(d[1].entries == std::vector<int>{2, 1});
    CHECK(derangements(mu({1, 1})).size() == 1);
    CHECK(derangements(mu({2, 1, 1})).size() == 3);
    CHECK(derangements(Partition{}).size() == 1);
}

TEST_CASE("derangement counts match l!/Π m_i!", "[partitions][property]")
{
    for (const auto& p : partitions_up_to(8)) {
        auto ds = derangements(p);
        CHECK(Integer(static_cast<long>(ds.size())) * p.multiplicity_factorial_product()
              == factorial(static_cast<unsigned>(p.length())));
        std::set<std::vector<int>> distinct;
        for (const auto& d : ds) {
            distinct.insert(d.entries);
            CHECK(Partition::from_parts(d.entries) == p);
            CHECK(d.prefix(d.entries.size()) == p.weight());
        }
        CHECK(distinct.size() == ds.size());
    }
}

TEST_CASE("z_mu", "[partitions]")
{
    CHECK(z_of(mu({1, 1, 1})) == 6);
    CHECK(z_of(mu({2, 1})) == 2);
    CHECK(z_of(mu({3, 3})) == 18);
    CHECK(z_of(mu({4})) == 4);
}

TEST_CASE("permutations and cycle types", "[partitions]")
{
    CHECK(permutations_with_cycles(1).size() == 1);
    CHECK(permutations_with_cycles(2).size() == 2);
    auto s3 = permutations_with_cycles(3);
    REQUIRE(s3.size() == 6);
    std::map<Partition, int> types;
    for (const auto& p : s3)
        ++types[cycle_type(p)];
    CHECK(types[mu({1, 1, 1})] == 1);
    CHECK(types[mu({2, 1})] == 3);
    CHECK(types[mu({3})] == 2);
    // (1 2 3) -> (2 3 1) is a single 3-cycle starting at 1
    CHECK(s3[3].mapping == std::vector<int>{2, 3, 1});
    REQUIRE(s3[3].cycles.size() == 1);
    CHECK(s3[3].cycles[0] == std::vector<int>{1, 2, 3});
}

TEST_CASE("class sizes n!/z_mu add up to n!", "[partitions][property]")
{
    for (int n = 1; n <= 6; ++n) {
        auto perms = permutations_with_cycles(n);
        std::map<Partition, long> counts;
        for (const auto& p : perms) {
            ++counts[cycle_type(p)];
            // cycles partition {1..n} and follow the mapping
            std::vector<int> seen(static_cast<std::size_t>(n), 0);
            for (const auto& c : p.cycles)
                for (std::size_t k = 0; k < c.size(); ++k) {
                    ++seen[static_cast<std::size_t>(c[k] - 1)];
                    CHECK(p.mapping[static_cast<std::size_t>(c[k] - 1)] == c[(k + 1) % c.size()]);
                }
            for (int s : seen)
                CHECK(s == 1);
        }
        Rational total = 0;
        for (const auto& lam : partitions_of(n)) {
            Rational size = Rational(factorial(static_cast<unsigned>(n))) / z_of(lam);
            CHECK(size == counts[lam]);
            total += size;
        }
        CHECK(total == Rational(factorial(static_cast<unsigned>(n))));
    }
}

TEST_CASE("enumeration caps raise errors", "[partitions]")
{
    Caps caps;
    caps.max_derangement_length = 3;
    caps.max_permutation_n = 4;
    CHECK_THROWS_AS(derangements(mu({1, 1, 1, 1}), caps), ResourceLimitError);
    CHECK_NOTHROW(derangements(mu({1, 1, 1}), caps));
    CHECK_THROWS_AS(permutations_with_cycles(5, caps), ResourceLimitError);
}
