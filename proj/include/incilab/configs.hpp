#pragma once

#include <cstdint>
#include <fstream>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "incilab/incidence.hpp"
#include "incilab/random.hpp"

namespace incilab {

using Json = nlohmann::ordered_json;

struct GeneratorSpec {
    std::string family;
    std::map<std::string, ParamValue> params;
    std::uint64_t seed = 0;

    long integer(const std::string& key) const {
        auto it = params.find(key);
        if (it == params.end()) throw InvalidArgument(family + ": missing parameter '" + key + "'");
        if (const long* v = std::get_if<long>(&it->second)) return *v;
        throw InvalidArgument(family + ": parameter '" + key + "' must be an integer");
    }
    long integer_or(const std::string& key, long fallback) const {
        return params.count(key) ? integer(key) : fallback;
    }
    std::string text(const std::string& key) const {
        auto it = params.find(key);
        if (it == params.end()) throw InvalidArgument(family + ": missing parameter '" + key + "'");
        if (const auto* v = std::get_if<std::string>(&it->second)) return *v;
        throw InvalidArgument(family + ": parameter '" + key + "' must be a name");
    }
};

/// Parse "key=value,key=value"; integer-looking values become integers.
inline std::map<std::string, ParamValue> parse_params(const std::string& text) {
    std::map<std::string, ParamValue> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError("parameter '" + item + "' is not of the form key=value");
        const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        try {
            std::size_t used = 0;
            const long v = std::stol(val, &used);
            if (used == val.size()) {
                out[key] = v;
                continue;
            }
        } catch (const std::exception&) {
        }
        out[key] = val;
    }
    return out;
}

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidArgument(what);
}

inline Point3 ipt(long x, long y, long z) { return {Rational(x), Rational(y), Rational(z)}; }

inline void add_elekes_layer(Configuration& cfg, long N, long z) {
    for (long i = 1; i <= N; ++i)
        for (long j = 1; j <= 2 * N * N; ++j) cfg.points.push_back(ipt(i, j, z));
    for (long a = 1; a <= N; ++a)
        for (long b = 1; b <= N * N; ++b) cfg.lines.push_back(Line::through(ipt(0, b, z), ipt(1, a, 0)));
}

inline Configuration elekes2d(long N) {
    require(N >= 1 && N <= 40, "elekes2d: N must lie in [1, 40]");
    Configuration cfg;
    add_elekes_layer(cfg, N, 0);
    return cfg;
}

inline Configuration coplanar_pack(long k, long N) {
    require(k >= 1 && k <= 64, "coplanar_pack: k must lie in [1, 64]");
    require(N >= 1 && N <= 20, "coplanar_pack: N must lie in [1, 20]");
    Configuration cfg;
    for (long z = 0; z < k; ++z) add_elekes_layer(cfg, N, z);
    return cfg;
}

inline Configuration grid3d(long N) {
    require(N >= 1 && N <= 64, "grid3d: N must lie in [1, 64]");
    Configuration cfg;
    for (long x = 1; x <= N; ++x)
        for (long y = 1; y <= N; ++y)
            for (long z = 1; z <= N; ++z) cfg.points.push_back(ipt(x, y, z));
    for (long a = 1; a <= N; ++a)
        for (long b = 1; b <= N; ++b) {
            cfg.lines.push_back(Line::through(ipt(0, a, b), ipt(1, 0, 0)));
            cfg.lines.push_back(Line::through(ipt(a, 0, b), ipt(0, 1, 0)));
            cfg.lines.push_back(Line::through(ipt(a, b, 0), ipt(0, 0, 1)));
        }
    return cfg;
}

// Every pairwise intersection point of the lines (all rational here).
inline std::vector<Point3> pairwise_intersections(const std::vector<Line>& lines) {
    std::set<Point3> pts;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const Line &a = lines[i], &b = lines[j];
            const Vec3 n = cross(a.dir(), b.dir());
            if (is_zero(n)) continue;
            const Vec3 w = b.base() - a.base();
            if (dot(w, n) != 0) continue;  // skew
            // a.base + t a.dir on b: t = ((w x b.dir) . n) / |n|^2
            const Rational t = dot(cross(w, b.dir()), n) / dot(n, n);
            pts.insert(a.at(t));
        }
    return {pts.begin(), pts.end()};
}

// k primitive Pythagorean directions (q^2 - p^2, 2pq, q^2 + p^2), distinct
// as lines through the origin.
inline std::vector<Vec3> pythagorean_directions(long k) {
    std::vector<Vec3> out;
    std::set<Line> seen;
    const Point3 origin{};
    for (long q = 1; static_cast<long>(out.size()) < k; ++q)
        for (long p = -q; p <= q && static_cast<long>(out.size()) < k; ++p) {
            if (std::gcd(std::labs(p), q) != 1) continue;
            const Vec3 d = ipt(q * q - p * p, 2 * p * q, q * q + p * p);
            if (seen.insert(Line::through(origin, d)).second) out.push_back(d);
        }
    return out;
}

inline Configuration ruled_surface(const std::string& kind, long k) {
    require(k >= 1 && k <= 400, "ruled_surface: k must lie in [1, 400]");
    Configuration cfg;
    if (kind == "plane") {
        // Tangent lines y = i x + i^2 of a parabola in z = 0: every pair meets once.
        for (long i = 1; i <= k; ++i) cfg.lines.push_back(Line::through(ipt(0, i * i, 0), ipt(1, i, 0)));
    } else if (kind == "cone") {
        for (const auto& d : pythagorean_directions(k)) cfg.lines.push_back(Line::through(Point3{}, d));
    } else if (kind == "hp") {
        const long first = (k + 1) / 2, second = k / 2;
        for (long a = 1; a <= first; ++a) cfg.lines.push_back(Line::through(ipt(a, 0, 0), ipt(0, 1, a)));
        for (long b = 1; b <= second; ++b) cfg.lines.push_back(Line::through(ipt(0, b, 0), ipt(1, 0, b)));
    } else {
        throw InvalidArgument("ruled_surface: kind must be plane, cone or hp, got '" + kind + "'");
    }
    cfg.points = pairwise_intersections(cfg.lines);
    return cfg;
}

inline Configuration concurrent(long k) {
    require(k >= 1 && k <= 100000, "concurrent: k must lie in [1, 100000]");
    Configuration cfg;
    cfg.points.push_back(Point3{});
    for (long i = 0; i < k; ++i) cfg.lines.push_back(Line::through(Point3{}, ipt(1, i, i * i)));
    return cfg;
}

// Points with coordinates in [-range, range]. A `forced` percentage of the
// lines pass through two existing points; the rest are arbitrary.
inline Configuration random_config(long m, long n, std::uint64_t seed, long forced, long range) {
    require(m >= 0 && m <= 1000000, "random: m must lie in [0, 10^6]");
    require(n >= 0 && n <= 1000000, "random: n must lie in [0, 10^6]");
    require(forced >= 0 && forced <= 100, "random: forced must be a percentage");
    require(range >= 1 && range <= 1000000000L, "random: range must lie in [1, 10^9]");
    require(static_cast<double>(m) <= std::pow(2.0 * range + 1, 3), "random: range too small for m distinct points");
    require(forced == 0 || m >= 2, "random: forced incidences need m >= 2");
    Rng rng(seed);
    Configuration cfg;
    std::set<Point3> pts;
    while (static_cast<long>(cfg.points.size()) < m) {
        Point3 p = ipt(rng.uniform(-range, range), rng.uniform(-range, range), rng.uniform(-range, range));
        if (pts.insert(p).second) cfg.points.push_back(p);
    }
    std::set<Line> ls;
    // Two points span at most m(m-1)/2 distinct lines.
    const long n_forced = std::min(n * forced / 100, m * (m - 1) / 2);
    long attempts = 0;
    while (static_cast<long>(cfg.lines.size()) < n) {
        if (++attempts > 100 * (n + 10)) throw InvalidArgument("random: could not draw enough distinct lines");
        std::optional<Line> l;
        if (static_cast<long>(cfg.lines.size()) < n_forced) {
            const auto i = rng.index(m), j = rng.index(m);
            if (i == j) continue;
            l = Line::through_points(cfg.points[i], cfg.points[j]);
        } else {
            const Point3 b = ipt(rng.uniform(-range, range), rng.uniform(-range, range), rng.uniform(-range, range));
            const Vec3 d = ipt(rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(-9, 9));
            if (is_zero(d)) continue;
            l = Line::through(b, d);
        }
        if (ls.insert(*l).second) cfg.lines.push_back(*l);
    }
    return cfg;
}

}  // namespace detail

/// Build the configuration described by spec. Deterministic in spec.
inline Configuration generate(const GeneratorSpec& spec) {
    Configuration cfg;
    ConfigMeta meta;
    meta.family = spec.family;
    auto record = [&](const std::string& key, ParamValue v) { meta.params.emplace_back(key, std::move(v)); };
    const auto& f = spec.family;
    if (f == "elekes2d") {
        const long N = spec.integer("N");
        cfg = detail::elekes2d(N);
        record("N", N);
    } else if (f == "coplanar_pack") {
        const long k = spec.integer("k"), N = spec.integer("N");
        cfg = detail::coplanar_pack(k, N);
        record("k", k);
        record("N", N);
    } else if (f == "grid3d") {
        const long N = spec.integer("N");
        cfg = detail::grid3d(N);
        record("N", N);
    } else if (f == "ruled_surface") {
        const std::string kind = spec.text("kind");
        const long k = spec.integer("k");
        cfg = detail::ruled_surface(kind, k);
        record("kind", kind);
        record("k", k);
    } else if (f == "concurrent") {
        const long k = spec.integer("k");
        cfg = detail::concurrent(k);
        record("k", k);
    } else if (f == "random") {
        const long m = spec.integer("m"), n = spec.integer("n");
        const long forced = spec.integer_or("forced", 30), range = spec.integer_or("range", 100);
        cfg = detail::random_config(m, n, spec.seed, forced, range);
        record("m", m);
        record("n", n);
        record("forced", forced);
        record("range", range);
        meta.seed = spec.seed;
    } else {
        throw InvalidArgument("unknown generator family '" + f + "'");
    }
    for (const auto& [key, _] : spec.params) {
        bool known = false;
        for (const auto& [k2, __] : meta.params) known = known || k2 == key;
        if (!known) throw InvalidArgument(f + ": unknown parameter '" + key + "'");
    }
    cfg.meta = std::move(meta);
    validate(cfg);
    return cfg;
}

inline GeneratorSpec spec_of(std::string family, std::map<std::string, ParamValue> params, std::uint64_t seed = 0) {
    return GeneratorSpec{std::move(family), std::move(params), seed};
}

/// Fixed regression suite used by the pipeline tests and the ratio check.
inline std::vector<GeneratorSpec> shipped_suite() {
    return {
        spec_of("elekes2d", {{"N", 2L}}),
        spec_of("elekes2d", {{"N", 3L}}),
        spec_of("elekes2d", {{"N", 4L}}),
        spec_of("coplanar_pack", {{"k", 2L}, {"N", 2L}}),
        spec_of("coplanar_pack", {{"k", 3L}, {"N", 3L}}),
        spec_of("grid3d", {{"N", 3L}}),
        spec_of("grid3d", {{"N", 5L}}),
        spec_of("ruled_surface", {{"kind", std::string("plane")}, {"k", 12L}}),
        spec_of("ruled_surface", {{"kind", std::string("cone")}, {"k", 12L}}),
        spec_of("ruled_surface", {{"kind", std::string("hp")}, {"k", 20L}}),
        spec_of("concurrent", {{"k", 5L}}),
        spec_of("random", {{"m", 200L}, {"n", 50L}}, 1),
        spec_of("random", {{"m", 400L}, {"n", 40L}}, 2),
    };
}

// ---------------------------------------------------------------------------
// JSON.

inline Json to_json(const Point3& p) { return Json::array({to_string(p.x), to_string(p.y), to_string(p.z)}); }

inline Json to_json(const Line& l) {
    Json j;
    j["base"] = to_json(l.base());
    j["dir"] = to_json(l.dir());
    return j;
}

inline Json to_json(const ConfigMeta& meta) {
    Json j;
    j["family"] = meta.family;
    Json params = Json::object();
    for (const auto& [k, v] : meta.params)
        std::visit([&, key = k](const auto& x) { params[key] = x; }, v);
    j["params"] = params;
    j["seed"] = meta.seed ? Json(*meta.seed) : Json(nullptr);
    return j;
}

inline Json to_json(const Configuration& cfg) {
    Json j;
    j["meta"] = to_json(cfg.meta);
    Json pts = Json::array(), ls = Json::array();
    for (const auto& p : cfg.points) pts.push_back(to_json(p));
    for (const auto& l : cfg.lines) ls.push_back(to_json(l));
    j["points"] = std::move(pts);
    j["lines"] = std::move(ls);
    return j;
}

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw ParseError(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(path + ": missing field '" + key + "'");
    return *it;
}

inline Rational rational_field(const Json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError(path + ": rationals must be strings like \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline Point3 point_field(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3) throw ParseError(path + ": expected an array of 3 rationals");
    return {rational_field(j[0], path + "[0]"), rational_field(j[1], path + "[1]"), rational_field(j[2], path + "[2]")};
}

}  // namespace detail

inline Configuration config_from_json(const Json& j) {
    using detail::field;
    Configuration cfg;
    if (j.contains("meta")) {
        const Json& m = j["meta"];
        cfg.meta.family = field(m, "family", "meta").get<std::string>();
        if (m.contains("params")) {
            if (!m["params"].is_object()) throw ParseError("meta.params: expected an object");
            for (const auto& [k, v] : m["params"].items()) {
                if (v.is_number_integer())
                    cfg.meta.params.emplace_back(k, v.get<long>());
                else if (v.is_string())
                    cfg.meta.params.emplace_back(k, v.get<std::string>());
                else
                    throw ParseError("meta.params." + k + ": expected an integer or a string");
            }
        }
        if (m.contains("seed") && !m["seed"].is_null()) {
            if (!m["seed"].is_number_unsigned()) throw ParseError("meta.seed: expected a nonnegative integer");
            cfg.meta.seed = m["seed"].get<std::uint64_t>();
        }
    }
    const Json& pts = field(j, "points", "<root>");
    if (!pts.is_array()) throw ParseError("points: expected an array");
    for (std::size_t i = 0; i < pts.size(); ++i) cfg.points.push_back(detail::point_field(pts[i], "points[" + std::to_string(i) + "]"));
    const Json& ls = field(j, "lines", "<root>");
    if (!ls.is_array()) throw ParseError("lines: expected an array");
    for (std::size_t i = 0; i < ls.size(); ++i) {
        const std::string path = "lines[" + std::to_string(i) + "]";
        const Point3 base = detail::point_field(field(ls[i], "base", path), path + ".base");
        const Vec3 dir = detail::point_field(field(ls[i], "dir", path), path + ".dir");
        if (is_zero(dir)) throw ParseError(path + ".dir: zero direction");
        cfg.lines.push_back(Line::through(base, dir));
    }
    validate(cfg);
    return cfg;
}

inline std::string dump_config(const Configuration& cfg) { return to_json(cfg).dump(2) + "\n"; }

inline Configuration parse_config(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Translate the byte offset to a line number.
        std::size_t line = 1;
        for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i) line += text[i] == '\n';
        throw ParseError("line " + std::to_string(line) + ": " + e.what());
    }
    return config_from_json(j);
}

inline void save_config(const Configuration& cfg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << dump_config(cfg);
    if (!out) throw Error("write to '" + path + "' failed");
}

inline Configuration load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace incilab
