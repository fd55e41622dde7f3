#pragma once

#include "qmono/config.hpp"
#include "qmono/errors.hpp"
#include "qmono/rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace qmono {

/// Weakly decreasing sequence of positive integers.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts)
        : parts_(std::move(parts))
    {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1)
                throw UsageError("partition parts must be positive");
            if (i && parts_[i] > parts_[i - 1])
                throw UsageError("partition parts must be weakly decreasing");
        }
    }

    /// Sorts arbitrary positive parts into a partition.
    static Partition from_parts(std::vector<int> parts)
    {
        std::sort(parts.begin(), parts.end(), std::greater<>());
        return Partition(std::move(parts));
    }

    const std::vector<int>& parts() const noexcept { return parts_; }
    int operator[](std::size_t i) const { return parts_.at(i); }
    int length() const noexcept { return static_cast<int>(parts_.size()); }
    int weight() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    bool empty() const noexcept { return parts_.empty(); }

    int multiplicity(int part) const noexcept
    {
        return static_cast<int>(std::count(parts_.begin(), parts_.end(), part));
    }

    /// part → m_part for every part that occurs, ascending by part.
    std::map<int, int> multiplicities() const
    {
        std::map<int, int> m;
        for (int p : parts_)
            ++m[p];
        return m;
    }

    /// Distinct parts, in decreasing order.
    std::vector<int> distinct_parts() const
    {
        std::vector<int> d;
        for (int p : parts_)
            if (d.empty() || d.back() != p)
                d.push_back(p);
        return d;
    }

    /// μ∖{i}: one copy of the part i removed.
    Partition without(int part) const
    {
        auto it = std::find(parts_.begin(), parts_.end(), part);
        if (it == parts_.end())
            throw UsageError(std::to_string(part) + " is not a part of " + to_string());
        std::vector<int> rest(parts_.begin(), it);
        rest.insert(rest.end(), it + 1, parts_.end());
        return Partition(std::move(rest));
    }

    /// Π_i m_i!
    Integer multiplicity_factorial_product() const
    {
        Integer r = 1;
        for (const auto& [_, m] : multiplicities())
            r *= factorial(static_cast<unsigned>(m));
        return r;
    }

    /// l! / Π_i m_i!, the number of distinct rearrangements.
    Integer arrangement_count() const
    {
        return factorial(static_cast<unsigned>(length())) / multiplicity_factorial_product();
    }

    /// `(3,1,1)`; the empty partition prints as `()`.
    std::string to_string() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i)
            s += (i ? "," : "") + std::to_string(parts_[i]);
        return s + ")";
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

/// A distinct rearrangement of a partition's parts with its prefix sums.
struct Derangement {
    std::vector<int> entries;
    std::vector<int> prefix_sums; // prefix_sums[i] = entries[0] + ... + entries[i]

    /// [c_i] with the 1-based convention of the formulas: prefix(0) == 0.
    int prefix(std::size_t i) const { return i == 0 ? 0 : prefix_sums.at(i - 1); }
};

/// A permutation of {1..n} (mapping[i-1] = σ(i)) with its cycles.
struct PermutationWithCycles {
    std::vector<int> mapping;
    std::vector<std::vector<int>> cycles;

    int cycle_count() const noexcept { return static_cast<int>(cycles.size()); }
};

/// All partitions of n in reverse-lexicographic order; n = 0 gives the empty partition.
inline std::vector<Partition> partitions_of(int n)
{
    if (n < 0)
        throw UsageError("cannot partition a negative integer");
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            rec(remaining - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

/// Every partition of weight 1..w, grouped by weight.
inline std::vector<Partition> partitions_up_to(int w)
{
    if (w < 0)
        throw UsageError("weight bound must be non-negative");
    std::vector<Partition> out;
    for (int n = 1; n <= w; ++n)
        for (auto& p : partitions_of(n))
            out.push_back(std::move(p));
    return out;
}

/// The distinct permutations of μ's parts, lexicographically ordered.
inline std::vector<Derangement> derangements(const Partition& mu, const Caps& caps = {})
{
    if (mu.length() > caps.max_derangement_length)
        throw ResourceLimitError("partition " + mu.to_string() + " has length " + std::to_string(mu.length())
                                 + ", derangement cap is " + std::to_string(caps.max_derangement_length));
    std::vector<int> c(mu.parts().rbegin(), mu.parts().rend());
    std::vector<Derangement> out;
    do {
        Derangement d;
        d.entries = c;
        d.prefix_sums.resize(c.size());
        std::partial_sum(c.begin(), c.end(), d.prefix_sums.begin());
        out.push_back(std::move(d));
    } while (std::next_permutation(c.begin(), c.end()));
    return out;
}

/// z_μ = Π_i i^{m_i} m_i!
inline Rational z_of(const Partition& mu)
{
    Integer z = 1;
    for (const auto& [part, m] : mu.multiplicities()) {
        Integer pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(part), static_cast<unsigned long>(m));
        z *= pw * factorial(static_cast<unsigned>(m));
    }
    return Rational(z);
}

/// Cycle decomposition of a permutation given as mapping[i-1] = σ(i).
/// Each cycle starts at its smallest element; cycles ordered by that element.
inline std::vector<std::vector<int>> cycles_of(const std::vector<int>& mapping)
{
    std::vector<std::vector<int>> cycles;
    std::vector<bool> seen(mapping.size(), false);
    for (std::size_t start = 0; start < mapping.size(); ++start) {
        if (seen[start])
            continue;
        std::vector<int> cyc;
        for (std::size_t i = start; !seen[i]; i = static_cast<std::size_t>(mapping[i] - 1)) {
            seen[i] = true;
            cyc.push_back(static_cast<int>(i + 1));
        }
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

/// All n! permutations of {1..n} in lexicographic order, with cycles.
inline std::vector<PermutationWithCycles> permutations_with_cycles(int n, const Caps& caps = {})
{
    if (n < 0)
        throw UsageError("permutation size must be non-negative");
    if (n > caps.max_permutation_n)
        throw ResourceLimitError("S_" + std::to_string(n) + " exceeds the permutation cap "
                                 + std::to_string(caps.max_permutation_n));
    std::vector<int> m(static_cast<std::size_t>(n));
    std::iota(m.begin(), m.end(), 1);
    std::vector<PermutationWithCycles> out;
    do {
        out.push_back({m, cycles_of(m)});
    } while (std::next_permutation(m.begin(), m.end()));
    return out;
}

/// Cycle type of a permutation, as a partition of n.
inline Partition cycle_type(const PermutationWithCycles& p)
{
    std::vector<int> lens;
    for (const auto& c : p.cycles)
        lens.push_back(static_cast<int>(c.size()));
    return Partition::from_parts(std::move(lens));
}

/// Parses `3,1,1` (or `[3,1,1]`) into a partition.
inline Partition parse_partition(const std::string& text)
{
    std::vector<int> parts;
    std::string cur;
    auto flush = [&] {
        if (cur.empty())
            return;
        try {
            std::size_t used = 0;
            int v = std::stoi(cur, &used);
            if (used != cur.size())
                throw UsageError("");
            parts.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("invalid partition part '" + cur + "'");
        }
        cur.clear();
    };
    for (char c : text) {
        if (c == ',' ) {
            if (cur.empty())
                throw UsageError("empty part in partition '" + text + "'");
            flush();
        } else if (c == '[' || c == ']' || c == '(' || c == ')' || c == ' ') {
            flush();
        } else {
            cur += c;
        }
    }
    flush();
    return Partition(std::move(parts));
}

} // namespace qmono
