#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "incilab/bounds.hpp"
#include "incilab/configs.hpp"
#include "incilab/partition.hpp"
#include "incilab/serialize.hpp"

namespace incilab {

enum class Cause { Planar, Conic, Regulus };

inline const char* to_string(Cause c) {
    switch (c) {
        case Cause::Planar: return "planar";
        case Cause::Conic: return "conic";
        case Cause::Regulus: return "regulus";
    }
    return "?";
}

// A surface component of Z(f) that captured points and lines.
struct Component {
    Cause cause = Cause::Planar;
    TriPoly poly;
    std::optional<Point3> apex;          // cones only
    std::vector<std::size_t> points;     // assigned (first come, first served)
    std::vector<std::size_t> lines;
    std::uint64_t pruned = 0;            // incidences inside the component
    std::vector<std::size_t> top_rich;   // two largest 2-rich counts among its lines
};

struct ClassSummary {
    SignVector sign;
    std::size_t points = 0;
    std::size_t lines_crossing = 0;
    std::uint64_t incidences = 0;
    bool over_occupancy = false;   // more points than the (1/2 + eps)^t surrogate
    bool over_line_share = false;  // more crossing lines than n / E^2
};

struct StageReport {
    int stage = 1;
    long degree_target = 0;  // D or E
    std::vector<std::string> flags;
    std::optional<PartitionPoly> partition;  // bisector levels followed by forced factors
    std::size_t bisector_levels = 0;

    // Index sets into the configuration.
    std::vector<std::size_t> P1, P1c, L1, L1c;  // on Z(f), in cells, contained, crossing

    std::uint64_t I = 0;
    std::uint64_t I_P1_L1 = 0, I_P1_L1c = 0, I_P1c_L1c = 0;

    // Breakdown of I(P1, L1).
    std::uint64_t pruned_planar = 0, pruned_conic = 0, pruned_regulus = 0;
    std::uint64_t cross_charge = 0;
    std::uint64_t surface_residual = 0;  // incidences at points no component claimed
    std::vector<Component> components;

    std::vector<ClassSummary> classes;
    std::size_t occupancy_cap = 0;
    std::size_t max_roots = 0;
    bool roots_certified = true;

    std::uint64_t pruned() const { return pruned_planar + pruned_conic + pruned_regulus; }
    std::uint64_t residual() const { return I_P1_L1c + I_P1c_L1c + surface_residual; }
    bool identity_holds() const { return I == I_P1_L1 + I_P1_L1c + I_P1c_L1c; }
    bool pruning_balanced() const { return pruned() + cross_charge + residual() == I; }
};

struct StageOptions {
    Rational eps = Rational(1, 10);
    std::uint64_t seed = 0;
    std::vector<TriPoly> extra_factors;  // multiplied into f as extra levels
    unsigned regulus_triples = 64;
};

namespace detail {

inline std::string ld(long double v) { return format_ld(v); }

inline long floor_degree(const PowerProduct& p, std::vector<std::string>& flags, const char* name) {
    if (auto e = p.exact()) {
        if (e->get_den() != 1) flags.push_back(std::string(name) + " = " + to_string(*e) + " is not an integer; using its floor");
        return std::max(1L, floor(*e).get_si());
    }
    flags.push_back(std::string(name) + " = " + p.to_string() + " ~ " + ld(p.approx()) + " is irrational; using its floor");
    return std::max(1L, static_cast<long>(std::floor(p.approx())));
}

// Largest t with a bisector budget <= degree and 2^t <= m, starting from
// the smallest t with 2^t >= degree^3.
inline unsigned level_count(long degree, std::size_t m) {
    if (degree < 1 || m < 2) return 0;
    unsigned t = 0;
    const Integer cube = pow(Integer(degree), 3);
    while (pow(Integer(2), t) < cube) ++t;
    while (t > 0 && (degree_budget(t) > static_cast<unsigned>(degree) || (std::size_t{1} << std::min(t, 62u)) > m)) --t;
    return t;
}

// Bisector levels with total degree <= budget, shrinking t when the
// median-plane fallback overshoots.
inline PartitionPoly bounded_partition(const std::vector<Point3>& pts, long budget, const StageOptions& opt,
                                       std::vector<std::string>& flags) {
    for (unsigned t = level_count(budget, pts.size()); t > 0; --t) {
        PartitionOptions po;
        po.levels = t;
        po.eps = opt.eps;
        po.seed = opt.seed;
        PartitionPoly p = build_partition(pts, po);
        if (p.degree <= static_cast<unsigned>(budget)) {
            if (std::find(p.fallback.begin(), p.fallback.end(), true) != p.fallback.end() && t > 1)
                flags.push_back("median-plane fallback used at some level");
            return p;
        }
    }
    PartitionPoly p;
    p.eps = opt.eps;
    p.seed = opt.seed;
    return p;
}

inline PartitionPoly with_factors(PartitionPoly p, const std::vector<TriPoly>& extra) {
    for (const auto& g : extra) {
        if (g.is_zero() || g.is_constant()) throw InvalidArgument("forced factor must be nonconstant");
        p.levels.push_back(g);
        p.fallback.push_back(false);
        p.product *= g;
        p.degree += *g.degree();
    }
    return p;
}

struct Split {
    std::vector<std::size_t> P1, P1c, L1, L1c;
    std::vector<char> on_surface, contained;
    std::vector<std::set<SignVector>> cells_crossed;  // per crossing line, aligned with L1c
    std::size_t max_roots = 0;
};

inline Split split(const Configuration& cfg, const std::vector<std::size_t>& pidx, const std::vector<std::size_t>& lidx,
                   const PartitionPoly& f, bool with_cells) {
    Split s;
    s.on_surface.assign(cfg.m(), 0);
    s.contained.assign(cfg.n(), 0);
    for (auto i : pidx) {
        if (full_sign(sign_vector(f, cfg.points[i]))) {
            s.P1c.push_back(i);
        } else {
            s.P1.push_back(i);
            s.on_surface[i] = 1;
        }
    }
    std::vector<Line> ls;
    for (auto j : lidx) ls.push_back(cfg.lines[j]);
    const LineSplit lsplit = classify_lines(f, ls, with_cells);
    for (auto k : lsplit.contained) {
        s.L1.push_back(lidx[k]);
        s.contained[lidx[k]] = 1;
    }
    for (std::size_t k = 0; k < lsplit.crossing.size(); ++k) {
        s.L1c.push_back(lidx[lsplit.crossing[k]]);
        s.max_roots = std::max(s.max_roots, lsplit.roots[k]);
    }
    s.cells_crossed = lsplit.cells_crossed;
    return s;
}

// Components of Z(f) witnessed by the contained lines and surface points:
// planes spanned by contained pairs, cones at rich surface points, and (large
// m only) reguli through skew triples of contained lines.
inline std::vector<Component> find_components(const Configuration& cfg, const Split& sp, const PartitionPoly& f,
                                              const IncidenceLists& lists, const StageOptions& opt) {
    std::vector<Component> comps;
    const TriPoly& F = f.product;
    if (F.is_constant()) return comps;

    std::map<Plane, std::size_t> plane_support;
    for (std::size_t a = 0; a < sp.L1.size(); ++a)
        for (std::size_t b = a + 1; b < sp.L1.size(); ++b) {
            auto rel = plane_through_lines(cfg.lines[sp.L1[a]], cfg.lines[sp.L1[b]]);
            if (auto* pl = std::get_if<Plane>(&rel)) plane_support[*pl] += 1;
        }
    std::vector<std::pair<std::size_t, Plane>> planes;
    for (const auto& [pl, support] : plane_support)
        if (divides_by_plane(F, pl)) planes.emplace_back(support, pl);
    std::stable_sort(planes.begin(), planes.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [_, pl] : planes) {
        Component c;
        c.cause = Cause::Planar;
        c.poly = TriPoly::from_plane(pl);
        comps.push_back(std::move(c));
    }

    // Richness within L1 decides which surface points may be cone apexes.
    std::vector<std::size_t> rich_in_L1(cfg.m(), 0);
    for (auto j : sp.L1)
        for (auto i : lists[j]) ++rich_in_L1[i];
    std::set<std::pair<Point3, std::string>> seen;
    for (auto i : sp.P1) {
        if (rich_in_L1[i] < 3) continue;
        for (const auto& g : f.levels) {
            if (*g.degree() < 2 || g(cfg.points[i]) != 0 || !is_cone_with_apex(g, cfg.points[i])) continue;
            if (!seen.insert({cfg.points[i], to_string(g.primitive())}).second) continue;
            Component c;
            c.cause = Cause::Conic;
            c.poly = g.primitive();
            c.apex = cfg.points[i];
            comps.push_back(std::move(c));
        }
    }

    if (compare_with_threshold(cfg.m(), cfg.n()) > 0 && sp.L1.size() >= 3 && *F.degree() >= 2) {
        Rng rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
        std::set<std::string> have;
        for (unsigned trial = 0; trial < opt.regulus_triples; ++trial) {
            const auto a = sp.L1[rng.index(sp.L1.size())], b = sp.L1[rng.index(sp.L1.size())],
                       c3 = sp.L1[rng.index(sp.L1.size())];
            const Line &la = cfg.lines[a], &lb = cfg.lines[b], &lc = cfg.lines[c3];
            if (!are_skew(la, lb) || !are_skew(la, lc) || !are_skew(lb, lc)) continue;
            try {
                const Quadric q = regulus_through(la, lb, lc);
                if (!F.divisible_by(q.poly()) || !have.insert(to_string(q.poly())).second) continue;
                Component c;
                c.cause = Cause::Regulus;
                c.poly = q.poly();
                comps.push_back(std::move(c));
            } catch (const DegeneracyError&) {
            }
        }
    }
    return comps;
}

inline std::uint64_t count_pairs(const IncidenceLists& lists, const std::vector<std::size_t>& lidx,
                                 const std::vector<char>& point_flag, char want) {
    std::uint64_t c = 0;
    for (auto j : lidx)
        for (auto i : lists[j])
            if (point_flag[i] == want) ++c;
    return c;
}

inline std::vector<char> flags_of(std::size_t size, const std::vector<std::size_t>& idx) {
    std::vector<char> f(size, 0);
    for (auto i : idx) f[i] = 1;
    return f;
}

}  // namespace detail

/// First stage: partition with a polynomial of degree at most D, prune the
/// planar, conic and regulus components of Z(f) first come first served, and
/// account for every incidence.
inline StageReport run_stage1(const Configuration& cfg, std::optional<long> D_override = std::nullopt,
                              const StageOptions& opt = {}) {
    validate(cfg);
    StageReport r;
    r.stage = 1;
    if (D_override) {
        if (*D_override < 1) throw InvalidArgument("stage 1: D must be at least 1");
        r.degree_target = *D_override;
    } else {
        try {
            const DegreePlan plan = degree_plan(cfg.m(), cfg.n());
            r.degree_target = detail::floor_degree(plan.D, r.flags, "D");
        } catch (const RangeError& e) {
            throw RangeError(std::string("stage 1: ") + e.what());
        }
    }
    long forced = 0;
    for (const auto& g : opt.extra_factors) forced += g.degree().value_or(0);
    if (forced > r.degree_target) r.flags.push_back("forced factors exceed D; deg f = " + std::to_string(forced));

    PartitionPoly part;
    try {
        part = detail::bounded_partition(cfg.points, r.degree_target - forced, opt, r.flags);
    } catch (const BudgetError& e) {
        throw BudgetError(std::string("stage 1: ") + e.what(), e.best_slack());
    }
    r.bisector_levels = part.t();
    r.partition = detail::with_factors(part, opt.extra_factors);
    const PartitionPoly& f = *r.partition;

    std::vector<std::size_t> all_p(cfg.m()), all_l(cfg.n());
    for (std::size_t i = 0; i < cfg.m(); ++i) all_p[i] = i;
    for (std::size_t j = 0; j < cfg.n(); ++j) all_l[j] = j;
    const detail::Split sp = detail::split(cfg, all_p, all_l, f, false);
    r.P1 = sp.P1;
    r.P1c = sp.P1c;
    r.L1 = sp.L1;
    r.L1c = sp.L1c;
    r.max_roots = sp.max_roots;
    r.roots_certified = sp.max_roots <= f.degree;

    // Every tally below is a fresh naive recount.
    const IncidenceLists lists = incidence_lists(cfg.points, cfg.lines);
    for (const auto& l : lists) r.I += l.size();
    r.I_P1_L1 = detail::count_pairs(lists, r.L1, sp.on_surface, 1);
    r.I_P1_L1c = detail::count_pairs(lists, r.L1c, sp.on_surface, 1);
    r.I_P1c_L1c = detail::count_pairs(lists, r.L1c, sp.on_surface, 0);

    // Occupancy of the bisector cells.
    if (part.t() > 0) {
        const CellOccupancy occ = cell_occupancy(part, cfg.points);
        const Rational cap = pow(Rational(1, 2) + opt.eps, part.t()) * static_cast<unsigned long>(cfg.m());
        r.occupancy_cap = ceil(cap).get_ui();
        for (const auto& [sign, count] : occ.cells) {
            ClassSummary c;
            c.sign = sign;
            c.points = count;
            c.over_occupancy = count > r.occupancy_cap;
            r.classes.push_back(std::move(c));
        }
    }

    // Pruning.
    r.components = detail::find_components(cfg, sp, f, lists, opt);
    std::vector<std::optional<std::size_t>> pc(cfg.m()), lc(cfg.n());
    for (auto i : r.P1)
        for (std::size_t c = 0; c < r.components.size(); ++c)
            if (r.components[c].poly(cfg.points[i]) == 0) {
                pc[i] = c;
                r.components[c].points.push_back(i);
                break;
            }
    for (auto j : r.L1)
        for (std::size_t c = 0; c < r.components.size(); ++c)
            if (line_in_zero_set(r.components[c].poly, cfg.lines[j])) {
                lc[j] = c;
                r.components[c].lines.push_back(j);
                break;
            }
    for (auto j : r.L1)
        for (auto i : lists[j]) {
            if (!pc[i]) {
                ++r.surface_residual;
            } else if (lc[j] == pc[i]) {
                Component& c = r.components[*pc[i]];
                ++c.pruned;
                (c.cause == Cause::Planar ? r.pruned_planar : c.cause == Cause::Conic ? r.pruned_conic : r.pruned_regulus)++;
            } else {
                ++r.cross_charge;
            }
        }
    if (!r.components.empty()) {
        const auto rich = rich_points_per_line(cfg);
        for (auto& c : r.components) {
            std::vector<std::size_t> counts;
            for (auto j : c.lines) counts.push_back(rich[j]);
            std::sort(counts.rbegin(), counts.rend());
            counts.resize(std::min<std::size_t>(2, counts.size()));
            c.top_rich = counts;
        }
    }
    return r;
}

/// Second stage on the stage-1 cell part: points P1c and crossing lines L1c.
/// E comes from the plan's window unless overridden.
inline StageReport run_stage2(const Configuration& cfg, const StageReport& s1, std::optional<long> E_override = std::nullopt,
                              const StageOptions& opt = {}) {
    StageReport r;
    r.stage = 2;
    std::optional<Window> window;
    std::string window_note;
    try {
        const DegreePlan plan = degree_plan(cfg.m(), cfg.n());
        window = plan.E_window;
        window_note = plan.notes;
    } catch (const Error& e) {
        window_note = e.what();
    }
    if (E_override) {
        if (*E_override < 1) throw InvalidArgument("stage 2: E must be at least 1");
        r.degree_target = *E_override;
        if (window) {
            const PowerProduct E = PowerProduct::of(static_cast<std::uint64_t>(*E_override));
            if (compare(E, window->lo) < 0)
                r.flags.push_back("window-violated: E = " + std::to_string(*E_override) + " < lower bound " +
                                  window->lo.to_string() + " ~ " + detail::ld(window->lo.approx()));
            if (compare(E, window->hi) > 0)
                r.flags.push_back("window-violated: E = " + std::to_string(*E_override) + " > upper bound " +
                                  window->hi.to_string() + " ~ " + detail::ld(window->hi.approx()));
        }
    } else {
        if (!window) throw WindowError("stage 2: no E window (" + (window_note.empty() ? std::string("base range") : window_note) + ")");
        if (!window->nonempty())
            throw WindowError("stage 2: empty E window, lower bound " + window->lo.to_string() + " ~ " +
                              detail::ld(window->lo.approx()) + " exceeds upper bound " + window->hi.to_string() + " ~ " +
                              detail::ld(window->hi.approx()));
        r.degree_target = detail::floor_degree(window->hi, r.flags, "E");
    }
    if (s1.P1c.empty()) return r;

    std::vector<Point3> pts;
    for (auto i : s1.P1c) pts.push_back(cfg.points[i]);
    PartitionPoly g;
    try {
        g = detail::bounded_partition(pts, r.degree_target, opt, r.flags);
    } catch (const BudgetError& e) {
        throw BudgetError(std::string("stage 2: ") + e.what(), e.best_slack());
    }
    r.bisector_levels = g.t();
    r.partition = g;

    const detail::Split sp = detail::split(cfg, s1.P1c, s1.L1c, g, true);
    r.P1 = sp.P1;
    r.P1c = sp.P1c;
    r.L1 = sp.L1;
    r.L1c = sp.L1c;
    r.max_roots = sp.max_roots;
    r.roots_certified = sp.max_roots <= g.degree;

    const IncidenceLists lists = incidence_lists(cfg.points, cfg.lines);
    const auto in_residual = detail::flags_of(cfg.m(), s1.P1c);
    for (auto j : s1.L1c)
        for (auto i : lists[j]) r.I += in_residual[i];
    std::vector<char> surf(cfg.m(), 2);  // 2: outside the stage-2 point set
    for (auto i : r.P1) surf[i] = 1;
    for (auto i : r.P1c) surf[i] = 0;
    r.I_P1_L1 = detail::count_pairs(lists, r.L1, surf, 1);
    r.I_P1_L1c = detail::count_pairs(lists, r.L1c, surf, 1);
    r.I_P1c_L1c = detail::count_pairs(lists, r.L1c, surf, 0);
    r.surface_residual = r.I_P1_L1;

    if (g.t() > 0) {
        const Rational cap = pow(Rational(1, 2) + opt.eps, g.t()) * static_cast<unsigned long>(pts.size());
        r.occupancy_cap = ceil(cap).get_ui();
        std::map<SignVector, ClassSummary> classes;
        for (auto i : r.P1c) {
            auto& c = classes[sign_vector(g, cfg.points[i])];
            ++c.points;
        }
        for (std::size_t k = 0; k < r.L1c.size(); ++k) {
            for (const auto& s : sp.cells_crossed[k])
                if (auto it = classes.find(s); it != classes.end()) ++it->second.lines_crossing;
            for (auto i : lists[r.L1c[k]])
                if (surf[i] == 0) ++classes[sign_vector(g, cfg.points[i])].incidences;
        }
        // n' / E^2 with n' the number of stage-2 lines.
        const Rational share(static_cast<unsigned long>(s1.L1c.size()), static_cast<unsigned long>(r.degree_target * r.degree_target));
        for (auto& [sign, c] : classes) {
            c.sign = sign;
            c.over_occupancy = c.points > r.occupancy_cap;
            c.over_line_share = Rational(static_cast<unsigned long>(c.lines_crossing)) > share;
            if (c.over_line_share)
                r.flags.push_back("class " + sign_string(sign) + " is crossed by " + std::to_string(c.lines_crossing) +
                                  " lines > n/E^2 = " + to_string(share));
            r.classes.push_back(c);
        }
    }
    return r;
}

struct ReportOptions {
    bool pipeline = true;
    std::optional<long> D;
    std::optional<long> E;
    StageOptions stage;
};

struct IncidenceReport {
    std::string family;
    std::size_t m = 0, n = 0, s = 0;
    std::uint64_t I = 0;
    RichnessHistogram richness;
    std::optional<Plane> s_witness;
    std::optional<Real> st2d, gk, scale;
    Integer trivial = 0;
    std::optional<MidrangeBound> midrange;
    std::optional<DegreePlan> plan;
    std::optional<Real> ratio;
    std::optional<StageReport> stage1, stage2;
    std::vector<std::string> notes;
};

inline std::string family_label(const Configuration& cfg) {
    std::string label = cfg.meta.family;
    for (const auto& [k, v] : cfg.meta.params) {
        label += label == cfg.meta.family ? "(" : ",";
        label += k + "=" + std::visit([](const auto& x) {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, long>) return std::to_string(x);
            else return std::string(x);
        }, v);
    }
    if (!cfg.meta.params.empty()) label += ")";
    return label;
}

inline IncidenceReport full_report(const Configuration& cfg, const ReportOptions& opt = {}) {
    IncidenceReport rep;
    rep.family = family_label(cfg);
    rep.m = cfg.m();
    rep.n = cfg.n();
    const IncidenceTally naive = count_incidences(cfg, CountStrategy::Naive);
    const IncidenceTally grid = count_incidences(cfg, CountStrategy::Grid);
    if (!(naive == grid)) throw Error("count: grid and naive tallies differ");
    rep.I = naive.total;
    rep.richness = richness_histogram(naive);
    const CoplanarMax cop = max_coplanar_lines(cfg.lines);
    rep.s = cop.s;
    rep.s_witness = cop.witness;
    rep.trivial = trivial_bound(rep.m, rep.n);
    if (rep.m >= 1 && rep.n >= 1) {
        rep.st2d = st2d_bound(rep.m, rep.n);
        BoundParams bp;
        bp.m = rep.m;
        bp.n = rep.n;
        bp.s = rep.s;
        rep.gk = gk_bound(bp);
        rep.scale = incidence_scale(rep.m, rep.n, rep.s);
        Real ratio;
        if (rep.scale->exact) {
            Rational q(Integer(static_cast<unsigned long>(rep.I)), 1);
            ratio = Real::from(q / *rep.scale->exact);
        } else {
            const long double I = static_cast<long double>(rep.I);
            ratio = Real::from_interval(Interval::widen({I / rep.scale->upper(), I / rep.scale->lower()}));
        }
        rep.ratio = ratio;
        if (rep.n >= 2) rep.midrange = midrange_bound(rep.m, rep.n, rep.s);
        try {
            rep.plan = degree_plan(rep.m, rep.n);
        } catch (const Error& e) {
            rep.notes.push_back(std::string("degree plan: ") + e.what());
        }
    } else {
        rep.ratio = Real::from(Rational(0));
    }
    if (!opt.pipeline) return rep;
    if (!opt.D && !rep.plan) {
        rep.notes.push_back("pipeline skipped: no degree plan and no D override");
        return rep;
    }
    rep.stage1 = run_stage1(cfg, opt.D, opt.stage);
    try {
        rep.stage2 = run_stage2(cfg, *rep.stage1, opt.E, opt.stage);
    } catch (const WindowError& e) {
        rep.notes.push_back(std::string("stage 2 skipped: ") + e.what());
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Output.

inline Json to_json(const StageReport& r) {
    Json j;
    j["stage"] = r.stage;
    j[r.stage == 1 ? "D" : "E"] = r.degree_target;
    j["bisector_levels"] = r.bisector_levels;
    j["partition"] = r.partition ? to_json(*r.partition) : Json(nullptr);
    j["counts"] = {{"P1", r.P1.size()}, {"P1_cells", r.P1c.size()}, {"L1", r.L1.size()}, {"L1_crossing", r.L1c.size()}};
    j["incidences"] = {{"I", r.I}, {"I_P1_L1", r.I_P1_L1}, {"I_P1_L1_crossing", r.I_P1_L1c}, {"I_cells", r.I_P1c_L1c}};
    j["identity_holds"] = r.identity_holds();
    j["pruned"] = {{"planar", r.pruned_planar}, {"conic", r.pruned_conic}, {"regulus", r.pruned_regulus},
                   {"cross_charge", r.cross_charge}, {"surface_residual", r.surface_residual}, {"residual", r.residual()}};
    j["pruning_balanced"] = r.pruning_balanced();
    Json comps = Json::array();
    for (const auto& c : r.components) {
        Json cj;
        cj["cause"] = to_string(c.cause);
        cj["poly"] = to_string(c.poly);
        cj["apex"] = c.apex ? to_json(*c.apex) : Json(nullptr);
        cj["points"] = c.points.size();
        cj["lines"] = c.lines.size();
        cj["pruned"] = c.pruned;
        cj["top_rich_points_per_line"] = c.top_rich;
        comps.push_back(std::move(cj));
    }
    j["components"] = std::move(comps);
    j["occupancy_cap"] = r.occupancy_cap;
    Json classes = Json::array();
    for (const auto& c : r.classes)
        classes.push_back({{"sign", sign_string(c.sign)}, {"points", c.points}, {"lines_crossing", c.lines_crossing},
                           {"incidences", c.incidences}, {"over_occupancy", c.over_occupancy},
                           {"over_line_share", c.over_line_share}});
    j["classes"] = std::move(classes);
    j["max_roots"] = r.max_roots;
    j["roots_certified"] = r.roots_certified;
    j["flags"] = r.flags;
    return j;
}

inline Json to_json(const DegreePlan& p) {
    Json j;
    j["regime"] = to_string(p.regime);
    j["j"] = p.j ? Json(*p.j) : Json(nullptr);
    j["D"] = to_json(p.D);
    if (p.E_window) {
        j["E_window"] = {{"lo", to_json(p.E_window->lo)}, {"hi", to_json(p.E_window->hi)}};
    } else {
        j["E_window"] = nullptr;
    }
    j["window_nonempty"] = p.window_nonempty;
    j["notes"] = p.notes;
    return j;
}

inline Json to_json(const MidrangeBound& b) {
    return {{"j0", to_json(b.j0)}, {"j", b.j}, {"k", to_json(b.k)}, {"multiplier", to_json(b.multiplier)},
            {"value", to_json(b.value)}, {"large_variant", b.large_variant}};
}

inline Json to_json(const IncidenceReport& r) {
    Json j;
    j["family"] = r.family;
    j["m"] = r.m;
    j["n"] = r.n;
    j["s"] = r.s;
    j["I"] = r.I;
    j["s_witness"] = r.s_witness ? Json(to_string(TriPoly::from_plane(*r.s_witness))) : Json(nullptr);
    j["richness"] = to_json(r.richness);
    Json b;
    b["st2d"] = r.st2d ? to_json(*r.st2d) : Json(nullptr);
    b["gk_A1_B1"] = r.gk ? to_json(*r.gk) : Json(nullptr);
    b["trivial"] = r.trivial.get_str();
    b["midrange"] = r.midrange ? to_json(*r.midrange) : Json(nullptr);
    b["scale"] = r.scale ? to_json(*r.scale) : Json(nullptr);
    j["bounds"] = std::move(b);
    j["ratio"] = r.ratio ? to_json(*r.ratio) : Json(nullptr);
    j["plan"] = r.plan ? to_json(*r.plan) : Json(nullptr);
    j["stage1"] = r.stage1 ? to_json(*r.stage1) : Json(nullptr);
    j["stage2"] = r.stage2 ? to_json(*r.stage2) : Json(nullptr);
    j["notes"] = r.notes;
    return j;
}

inline std::string csv_header() { return "family,m,n,s,I,max_richness,bound_st2d,bound_gk_A1_B1,bound_trivial,ratio\n"; }

inline std::string csv_row(const IncidenceReport& r) {
    auto num = [](const std::optional<Real>& v) { return v ? format_ld(v->value()) : std::string(); };
    std::string fam = r.family;
    if (fam.find(',') != std::string::npos) fam = "\"" + fam + "\"";
    return fam + "," + std::to_string(r.m) + "," + std::to_string(r.n) + "," + std::to_string(r.s) + "," +
           std::to_string(r.I) + "," + std::to_string(r.richness.max_richness) + "," + num(r.st2d) + "," + num(r.gk) +
           "," + r.trivial.get_str() + "," + num(r.ratio) + "\n";
}

}  // namespace incilab
