#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "incilab/algebra.hpp"
#include "incilab/geom.hpp"
#include "incilab/linalg.hpp"
#include "incilab/parallel.hpp"

namespace incilab {

using ParamValue = std::variant<long, std::string>;

struct ConfigMeta {
    std::string family = "custom";
    std::vector<std::pair<std::string, ParamValue>> params;
    std::optional<std::uint64_t> seed;

    friend bool operator==(const ConfigMeta&, const ConfigMeta&) = default;
};

// A point set P and a line set L. Points are pairwise distinct and lines are
// pairwise distinct (lines compare by canonical form).
struct Configuration {
    std::vector<Point3> points;
    std::vector<Line> lines;
    ConfigMeta meta;

    std::size_t m() const { return points.size(); }
    std::size_t n() const { return lines.size(); }

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Throws ValidationError on repeated points or lines.
inline void validate(const Configuration& cfg) {
    std::vector<Point3> pts(cfg.points);
    std::sort(pts.begin(), pts.end());
    if (auto it = std::adjacent_find(pts.begin(), pts.end()); it != pts.end()) {
        std::ostringstream os;
        os << "invalid configuration: duplicate point " << *it;
        throw ValidationError(os.str());
    }
    std::vector<Line> ls(cfg.lines);
    std::sort(ls.begin(), ls.end());
    if (auto it = std::adjacent_find(ls.begin(), ls.end()); it != ls.end()) {
        std::ostringstream os;
        os << "invalid configuration: duplicate line " << *it;
        throw ValidationError(os.str());
    }
}

struct IncidenceTally {
    std::uint64_t total = 0;
    std::vector<std::size_t> per_point;
    std::vector<std::size_t> per_line;

    friend bool operator==(const IncidenceTally&, const IncidenceTally&) = default;
};

enum class CountStrategy { Naive, Grid };

struct GridOptions {
    std::optional<Rational> cell_width;  // default: bbox side / ceil((m+n)^{1/3})
};

// For every line, the sorted indices of the points on it.
using IncidenceLists = std::vector<std::vector<std::size_t>>;

namespace detail {

using CellKey = std::array<long, 3>;

struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (long v : k) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

inline std::size_t icbrt_ceil(std::size_t v) {
    std::size_t r = 0;
    while (r * r * r < v) ++r;
    return std::max<std::size_t>(r, 1);
}

// Axis-aligned lattice over the points' bounding box; points on cell
// boundaries are registered in every touching cell.
class PointGrid {
public:
    PointGrid(const std::vector<Point3>& points, std::size_t n_lines, const GridOptions& opt) : points_(points) {
        if (points.empty()) return;
        lo_ = hi_ = points.front();
        for (const auto& p : points)
            for (int i = 0; i < 3; ++i) {
                if (p[i] < lo_[i]) lo_[i] = p[i];
                if (p[i] > hi_[i]) hi_[i] = p[i];
            }
        Rational side = 0;
        for (int i = 0; i < 3; ++i) side = std::max(side, Rational(hi_[i] - lo_[i]));
        if (opt.cell_width) {
            if (*opt.cell_width <= 0) throw InvalidArgument("grid cell width must be positive");
            width_ = *opt.cell_width;
        } else if (side == 0) {
            width_ = 1;
        } else {
            width_ = side / Rational(static_cast<unsigned long>(icbrt_ceil(points.size() + n_lines)));
        }
        for (std::size_t idx = 0; idx < points.size(); ++idx) {
            std::array<std::vector<long>, 3> cand;
            for (int i = 0; i < 3; ++i) {
                const Rational u = (points[idx][i] - lo_[i]) / width_;
                const long k = floor(u).get_si();
                cand[i].push_back(k);
                if (u.get_den() == 1) cand[i].push_back(k - 1);
            }
            for (long a : cand[0])
                for (long b : cand[1])
                    for (long c : cand[2]) cells_[{a, b, c}].push_back(idx);
        }
    }

    const Rational& width() const { return width_; }

    /// Candidate point indices that may lie on the line (sorted, unique).
    std::vector<std::size_t> candidates(const Line& l) const {
        std::vector<std::size_t> out;
        if (points_.empty()) return out;
        // Clip the line to the bounding box.
        std::optional<Rational> t0, t1;
        for (int i = 0; i < 3; ++i) {
            const Rational& d = l.dir()[i];
            const Rational& b = l.base()[i];
            if (d == 0) {
                if (b < lo_[i] || b > hi_[i]) return out;
                continue;
            }
            Rational a = (lo_[i] - b) / d, c = (hi_[i] - b) / d;
            if (a > c) std::swap(a, c);
            if (!t0 || a > *t0) t0 = a;
            if (!t1 || c < *t1) t1 = c;
        }
        if (*t0 > *t1) return out;
        std::vector<Rational> breaks{*t0, *t1};
        for (int i = 0; i < 3; ++i) {
            const Rational& d = l.dir()[i];
            if (d == 0) continue;
            // Grid planes lo + k*w crossed strictly inside (t0, t1).
            Rational u0 = (l.at(*t0)[i] - lo_[i]) / width_, u1 = (l.at(*t1)[i] - lo_[i]) / width_;
            if (u0 > u1) std::swap(u0, u1);
            for (Integer k = floor(u0) + 1; Rational(k) < u1; ++k) {
                const Rational coord = lo_[i] + Rational(k) * width_;
                breaks.push_back((coord - l.base()[i]) / d);
            }
        }
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
        auto visit = [&](const Point3& p) {
            CellKey key;
            for (int i = 0; i < 3; ++i) key[i] = floor((p[i] - lo_[i]) / width_).get_si();
            if (auto it = cells_.find(key); it != cells_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
        };
        if (breaks.size() == 1) {
            visit(l.at(breaks.front()));
        } else {
            for (std::size_t i = 0; i + 1 < breaks.size(); ++i) visit(l.at((breaks[i] + breaks[i + 1]) / 2));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    const std::vector<Point3>& points_;
    Point3 lo_, hi_;
    Rational width_ = 1;
    std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash> cells_;
};

}  // namespace detail

/// Incident point indices for every line.
inline IncidenceLists incidence_lists(const std::vector<Point3>& points, const std::vector<Line>& lines,
                                      CountStrategy strategy = CountStrategy::Naive, const GridOptions& grid = {}) {
    IncidenceLists out(lines.size());
    if (strategy == CountStrategy::Naive) {
        parallel_for(lines.size(), [&](std::size_t b, std::size_t e) {
            for (std::size_t j = b; j < e; ++j)
                for (std::size_t i = 0; i < points.size(); ++i)
                    if (point_on_line(points[i], lines[j])) out[j].push_back(i);
        });
        return out;
    }
    const detail::PointGrid index(points, lines.size(), grid);
    parallel_for(lines.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t j = b; j < e; ++j)
            for (std::size_t i : index.candidates(lines[j]))
                if (point_on_line(points[i], lines[j])) out[j].push_back(i);
    });
    return out;
}

inline IncidenceTally tally_from_lists(const IncidenceLists& lists, std::size_t m) {
    IncidenceTally t;
    t.per_point.assign(m, 0);
    t.per_line.resize(lists.size());
    for (std::size_t j = 0; j < lists.size(); ++j) {
        t.per_line[j] = lists[j].size();
        t.total += lists[j].size();
        for (auto i : lists[j]) ++t.per_point[i];
    }
    return t;
}

/// Exact I(P, L) with per-point and per-line counts.
inline IncidenceTally count_incidences(const Configuration& cfg, CountStrategy strategy = CountStrategy::Naive,
                                       const GridOptions& grid = {}) {
    validate(cfg);
    return tally_from_lists(incidence_lists(cfg.points, cfg.lines, strategy, grid), cfg.m());
}

/// Number of incidences between a point subset and a line subset (naive).
inline std::uint64_t count_between(const std::vector<Point3>& points, const std::vector<std::size_t>& pidx,
                                   const std::vector<Line>& lines, const std::vector<std::size_t>& lidx) {
    std::uint64_t c = 0;
    for (auto j : lidx)
        for (auto i : pidx)
            if (point_on_line(points[i], lines[j])) ++c;
    return c;
}

struct RichnessHistogram {
    std::map<std::size_t, std::size_t> counts;  // richness -> number of points
    std::size_t poor = 0;  // richness <= 1
    std::size_t rich = 0;  // richness >= 2
    std::size_t max_richness = 0;
};

inline RichnessHistogram richness_histogram(const IncidenceTally& tally) {
    RichnessHistogram h;
    for (auto r : tally.per_point) {
        ++h.counts[r];
        (r >= 2 ? h.rich : h.poor)++;
        h.max_richness = std::max(h.max_richness, r);
    }
    return h;
}

struct CoplanarMax {
    std::size_t s = 0;
    std::optional<Plane> witness;
    std::vector<std::size_t> lines;  // indices of the lines in the witness plane
};

/// Largest number of lines contained in one plane, found by bucketing the
/// planes spanned by coplanar pairs.
inline CoplanarMax max_coplanar_lines(const std::vector<Line>& lines) {
    CoplanarMax best;
    if (lines.empty()) return best;
    best.s = 1;
    best.lines = {0};
    // The smallest-index line of any plane sees every other line of that plane
    // among j > i, so per-i bucketing finds each plane's full count.
    std::vector<std::map<Plane, std::vector<std::size_t>>> per_line(lines.size());
    parallel_for(lines.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            for (std::size_t j = i + 1; j < lines.size(); ++j) {
                auto rel = plane_through_lines(lines[i], lines[j]);
                if (auto* pl = std::get_if<Plane>(&rel)) per_line[i][*pl].push_back(j);
            }
    });
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (auto& [pl, others] : per_line[i])
            if (others.size() + 1 > best.s || (others.size() + 1 == best.s && best.witness && pl < *best.witness)) {
                best.s = others.size() + 1;
                best.witness = pl;
                best.lines = {i};
                best.lines.insert(best.lines.end(), others.begin(), others.end());
            }
    return best;
}

// First-come-first-serve assignment of points and lines to an ordered list of
// planes, with the incidence accounting used for planar pruning.
struct PlaneAssignment {
    std::vector<std::optional<std::size_t>> point_plane;
    std::vector<std::optional<std::size_t>> line_plane;
    std::vector<std::vector<std::size_t>> plane_points;
    std::vector<std::vector<std::size_t>> plane_lines;
    std::uint64_t within = 0;        // p assigned to a plane that fully contains l
    std::uint64_t cross_charge = 0;  // p assigned to a plane that does not contain l
    std::uint64_t unassigned = 0;    // p not in any plane
};

inline PlaneAssignment assign_to_planes(const std::vector<Point3>& points, const std::vector<Line>& lines,
                                        const std::vector<Plane>& planes) {
    {
        std::vector<Plane> sorted(planes);
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InvalidArgument("assign_to_planes: planes must be distinct");
    }
    PlaneAssignment a;
    a.point_plane.resize(points.size());
    a.line_plane.resize(lines.size());
    a.plane_points.resize(planes.size());
    a.plane_lines.resize(planes.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t k = 0; k < planes.size(); ++k)
            if (planes[k].contains(points[i])) {
                a.point_plane[i] = k;
                a.plane_points[k].push_back(i);
                break;
            }
    for (std::size_t j = 0; j < lines.size(); ++j)
        for (std::size_t k = 0; k < planes.size(); ++k)
            if (planes[k].contains(lines[j])) {
                a.line_plane[j] = k;
                a.plane_lines[k].push_back(j);
                break;
            }
    const auto lists = incidence_lists(points, lines);
    for (std::size_t j = 0; j < lines.size(); ++j)
        for (auto i : lists[j]) {
            if (!a.point_plane[i])
                ++a.unassigned;
            else if (planes[*a.point_plane[i]].contains(lines[j]))
                ++a.within;
            else
                ++a.cross_charge;
        }
    return a;
}

/// Per line, the number of incident points whose total richness >= threshold.
inline std::vector<std::size_t> rich_points_per_line(const Configuration& cfg, std::size_t threshold = 2) {
    const auto lists = incidence_lists(cfg.points, cfg.lines);
    const auto tally = tally_from_lists(lists, cfg.m());
    std::vector<std::size_t> out(cfg.n(), 0);
    for (std::size_t j = 0; j < cfg.n(); ++j)
        for (auto i : lists[j])
            if (tally.per_point[i] >= threshold) ++out[j];
    return out;
}

// Nonzero degree-2 polynomial, primitive-normalized.
class Quadric {
public:
    explicit Quadric(const TriPoly& f) : poly_(f.primitive()) {
        if (f.is_zero()) throw InvalidArgument("quadric must be nonzero");
        if (*f.degree() > 2) throw InvalidArgument("quadric degree exceeds 2");
    }
    const TriPoly& poly() const { return poly_; }
    bool contains(const Point3& p) const { return poly_(p) == 0; }
    bool contains(const Line& l) const { return line_in_zero_set(poly_, l); }
    friend bool operator==(const Quadric&, const Quadric&) = default;

private:
    TriPoly poly_;
};

inline const std::array<Exponent, 10>& quadric_monomials() {
    static const std::array<Exponent, 10> mons{{{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1},
                                                {0, 0, 2}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}}};
    return mons;
}

/// The quadric containing three pairwise skew lines, from the 9x10 vanishing
/// system at three points per line.
inline Quadric regulus_through(const Line& l1, const Line& l2, const Line& l3) {
    const std::array<const Line*, 3> ls{&l1, &l2, &l3};
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            if (!are_skew(*ls[a], *ls[b])) throw InvalidArgument("regulus_through: lines must be pairwise skew");
    RationalMatrix sys;
    for (const Line* l : ls)
        for (int t = 0; t < 3; ++t) {
            const Point3 p = l->at(t);
            std::vector<Rational> row;
            for (const auto& e : quadric_monomials()) row.push_back(TriPoly::monomial(1, e)(p));
            sys.push_back(std::move(row));
        }
    const auto basis = nullspace(sys, 10);
    if (basis.size() != 1)
        throw DegeneracyError("regulus_through: solution space has dimension " + std::to_string(basis.size()),
                              basis.size());
    TriPoly f;
    for (std::size_t k = 0; k < 10; ++k) f.add_term(quadric_monomials()[k], basis[0][k]);
    return Quadric(f);
}

}  // namespace incilab
