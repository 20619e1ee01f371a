#pragma once

#include <cmath>
#include <sstream>

#include "incilab/bounds.hpp"
#include "incilab/configs.hpp"
#include "incilab/partition.hpp"

namespace incilab {

// List of {"e": [i, j, k], "c": "p/q"} records in exponent lex order.
inline Json to_json(const TriPoly& f) {
    Json terms = Json::array();
    for (const auto& [e, c] : f.terms()) terms.push_back(Json{{"e", {e[0], e[1], e[2]}}, {"c", to_string(c)}});
    return terms;
}

inline TriPoly tripoly_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("polynomial: expected an array of terms");
    TriPoly f;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string path = "terms[" + std::to_string(i) + "]";
        const Json& e = j[i].at("e");
        if (!e.is_array() || e.size() != 3) throw ParseError(path + ".e: expected 3 exponents");
        const Json& c = j[i].at("c");
        if (!c.is_string()) throw ParseError(path + ".c: expected a rational string");
        f.add_term({e[0].get<unsigned>(), e[1].get<unsigned>(), e[2].get<unsigned>()}, parse_rational(c.get<std::string>()));
    }
    return f;
}

inline Json to_json(const PartitionPoly& p) {
    Json j;
    j["t"] = p.t();
    j["eps"] = to_string(p.eps);
    j["seed"] = p.seed;
    j["D"] = p.degree;
    Json levels = Json::array();
    for (std::size_t i = 0; i < p.levels.size(); ++i) {
        Json l;
        l["text"] = to_string(p.levels[i]);
        l["terms"] = to_json(p.levels[i]);
        l["degree"] = *p.levels[i].degree();
        l["median_fallback"] = static_cast<bool>(p.fallback[i]);
        levels.push_back(std::move(l));
    }
    j["levels"] = std::move(levels);
    return j;
}

inline Json to_json(const RichnessHistogram& h) {
    Json counts = Json::object();
    for (const auto& [r, c] : h.counts) counts[std::to_string(r)] = c;
    return counts;
}

inline Json to_json(const IncidenceTally& t) {
    Json j;
    j["I"] = t.total;
    j["per_line"] = t.per_line;
    j["richness"] = to_json(richness_histogram(t));
    return j;
}

inline std::string sign_string(const SignVector& s) {
    std::string out;
    for (int v : s) out += v > 0 ? '+' : (v < 0 ? '-' : '0');
    return out;
}

inline std::string format_ld(long double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Exact value when available, else an outward-rounded interval.
inline Json to_json(const Real& r) {
    Json j;
    j["value"] = static_cast<double>(r.value());
    if (r.exact) j["exact"] = to_string(*r.exact);
    j["lo"] = format_ld(r.lower());
    j["hi"] = format_ld(r.upper());
    return j;
}

inline Json to_json(const PowerProduct& p) {
    Json j;
    j["expr"] = p.to_string();
    j["value"] = static_cast<double>(p.approx());
    if (auto e = p.exact()) j["exact"] = to_string(*e);
    return j;
}

}  // namespace incilab
