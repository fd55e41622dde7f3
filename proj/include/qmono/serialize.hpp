#pragma once

#include "qmono/fraction.hpp"
#include "qmono/macdonald.hpp"
#include "qmono/partitions.hpp"

#include <json.hpp>

#include <string>

namespace qmono {

using Json = nlohmann::ordered_json;

inline Json to_json(const Partition& mu) { return Json(mu.parts()); }

inline Partition partition_from_json(const Json& j)
{
    if (!j.is_array())
        throw UsageError("a partition must be a JSON array");
    std::vector<int> parts;
    for (const auto& v : j) {
        if (!v.is_number_integer())
            throw UsageError("partition parts must be integers");
        parts.push_back(v.get<int>());
    }
    return Partition(std::move(parts));
}

/// {"numerator": text, "denominator_factors": [{"factor": text, "multiplicity": k}]}
/// The variable set comes from context.
inline Json to_json(const FactoredFraction& f)
{
    Json factors = Json::array();
    for (const auto& fac : f.denominator_factors())
        factors.push_back(Json{{"factor", fac.poly.to_string()}, {"multiplicity", fac.multiplicity}});
    return Json{{"numerator", f.numerator().to_string()}, {"denominator_factors", std::move(factors)}};
}

inline FactoredFraction fraction_from_json(const Json& j, const UniversePtr& u)
{
    if (!j.is_object() || !j.contains("numerator") || !j.contains("denominator_factors"))
        throw UsageError("a fraction needs 'numerator' and 'denominator_factors'");
    std::vector<Factor> den;
    for (const auto& fac : j.at("denominator_factors"))
        den.push_back({parse_polynomial(fac.at("factor").get<std::string>(), u), fac.at("multiplicity").get<unsigned>()});
    return FactoredFraction(parse_polynomial(j.at("numerator").get<std::string>(), u), std::move(den));
}

inline Json variables_json(const UniversePtr& u)
{
    Json names = Json::array();
    for (std::size_t i = 0; i < u->size(); ++i)
        names.push_back(u->name(i));
    return names;
}

inline UniversePtr universe_from_json(const Json& j)
{
    std::vector<std::string> names;
    for (const auto& v : j)
        names.push_back(v.get<std::string>());
    return make_universe(std::move(names));
}

inline Json to_json(const ExpansionTable& t)
{
    Json entries = Json::array();
    for (const auto& [mu, c] : t.entries)
        entries.push_back(Json{{"mu", to_json(mu)}, {"coefficient", to_json(c)}});
    return Json{{"n", t.n}, {"basis", to_string(t.basis)}, {"entries", std::move(entries)}};
}

/// Coefficients live over {q,t}.
inline ExpansionTable table_from_json(const Json& j)
{
    ExpansionTable t;
    t.n = j.at("n").get<int>();
    t.basis = parse_basis(j.at("basis").get<std::string>());
    for (const auto& e : j.at("entries"))
        t.entries.emplace_back(partition_from_json(e.at("mu")), fraction_from_json(e.at("coefficient"), qt_universe()));
    return t;
}

/// Canonical text of a JSON document: two-space indent, keys in insertion order.
inline std::string dump(const Json& j) { return j.dump(2); }

} // namespace qmono
