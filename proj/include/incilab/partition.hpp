#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "incilab/algebra.hpp"
#include "incilab/linalg.hpp"
#include "incilab/parallel.hpp"
#include "incilab/random.hpp"

namespace incilab {

/// Smallest d with C(d+3,3) - 1 >= 2^{level-1}: the Veronese lifting
/// dimension needed to bisect every class at that level simultaneously.
inline unsigned lifting_degree(unsigned level) {
    if (level == 0) throw InvalidArgument("levels are numbered from 1");
    const Integer classes = pow(Integer(2), level - 1);
    unsigned d = 1;
    while (binomial(d + 3, 3) - 1 < classes) ++d;
    return d;
}

/// Sum of lifting_degree(j) for j = 1..levels.
inline unsigned degree_budget(unsigned levels) {
    unsigned total = 0;
    for (unsigned j = 1; j <= levels; ++j) total += lifting_degree(j);
    return total;
}

/// All exponents of total degree <= d, in a fixed order.
inline std::vector<Exponent> monomials_up_to(unsigned d) {
    std::vector<Exponent> out;
    for (unsigned k = 0; k <= d; ++k)
        for (unsigned i = k + 1; i-- > 0;)
            for (unsigned j = k - i + 1; j-- > 0;) out.push_back({i, j, k - i - j});
    return out;
}

// Sequence of bisecting polynomials g_1..g_t with product f.
struct PartitionPoly {
    std::vector<TriPoly> levels;
    std::vector<bool> fallback;  // level built by the median-plane product
    TriPoly product = TriPoly(1);
    unsigned degree = 0;
    Rational eps;
    std::uint64_t seed = 0;

    unsigned t() const { return static_cast<unsigned>(levels.size()); }

    /// Wrap explicit level polynomials (no balance guarantee).
    static PartitionPoly from_levels(std::vector<TriPoly> gs) {
        PartitionPoly p;
        for (auto& g : gs) {
            if (g.is_zero() || g.is_constant()) throw InvalidArgument("partition level must be nonconstant");
            p.product *= g;
            p.degree += *g.degree();
            p.levels.push_back(std::move(g));
            p.fallback.push_back(false);
        }
        return p;
    }
};

struct PartitionOptions {
    unsigned levels = 1;
    Rational eps = Rational(1, 10);
    std::uint64_t seed = 0;
    unsigned attempts = 64;        // random restarts per level
    unsigned refinements = 8;      // median re-anchoring rounds per restart
    bool median_fallback = true;   // fall back to a product of median planes
};

// Sign of each g_j at a point: -1, 0 or +1.
using SignVector = std::vector<int>;

inline SignVector sign_vector(const PartitionPoly& part, const Point3& p) {
    SignVector s;
    s.reserve(part.levels.size());
    for (const auto& g : part.levels) s.push_back(sgn(g(p)));
    return s;
}

inline bool full_sign(const SignVector& s) {
    return std::none_of(s.begin(), s.end(), [](int v) { return v == 0; });
}

namespace detail {

struct ClassSplit {
    std::size_t pos = 0, neg = 0, zero = 0;
};

// Accept g on a class when both open sides hold at most (1/2 + eps)|C| points
// and g does not swallow the class: at most max(1, floor(eps |C|)) zeros.
inline bool split_ok(const ClassSplit& s, std::size_t size, const Rational& eps) {
    const Rational cap = (Rational(1, 2) + eps) * static_cast<unsigned long>(size);
    if (Rational(static_cast<unsigned long>(s.pos)) > cap || Rational(static_cast<unsigned long>(s.neg)) > cap) return false;
    const Integer zcap = std::max(Integer(1), floor(eps * static_cast<unsigned long>(size)));
    return Integer(static_cast<unsigned long>(s.zero)) <= zcap;
}

inline Rational split_slack(const ClassSplit& s, std::size_t size) {
    if (size == 0) return 0;
    Rational r(static_cast<unsigned long>(std::max(s.pos, s.neg)), static_cast<unsigned long>(size));
    r.canonicalize();
    return r - Rational(1, 2);
}

inline Rational median_coordinate(std::vector<Rational> v) {
    std::sort(v.begin(), v.end());
    const std::size_t k = v.size();
    return (v[(k - 1) / 2] + v[k / 2]) / 2;
}

// One axis-aligned median plane per class, multiplied together.
inline TriPoly median_plane_product(const std::vector<Point3>& pts, const std::vector<std::vector<std::size_t>>& classes) {
    TriPoly g(1);
    for (const auto& cls : classes) {
        if (cls.empty()) continue;
        int axis = 0;
        Rational best_spread = -1;
        for (int a = 0; a < 3; ++a) {
            Rational lo = pts[cls[0]][a], hi = lo;
            for (auto i : cls) {
                lo = std::min(lo, pts[i][a]);
                hi = std::max(hi, pts[i][a]);
            }
            if (hi - lo > best_spread) {
                best_spread = hi - lo;
                axis = a;
            }
        }
        std::vector<Rational> coords;
        for (auto i : cls) coords.push_back(pts[i][axis]);
        g *= TriPoly::variable(axis) - TriPoly(median_coordinate(std::move(coords)));
    }
    return g.primitive();
}

class BisectorSearch {
public:
    BisectorSearch(const std::vector<Point3>& pts, const std::vector<std::vector<std::size_t>>& classes, unsigned degree,
                   const PartitionOptions& opt, Rng& rng)
        : pts_(pts), classes_(classes), mons_(monomials_up_to(degree)), opt_(opt), rng_(rng),
          eps_(to_long_double(opt.eps)) {
        lo_ = hi_ = pts.front();
        for (const auto& p : pts)
            for (int i = 0; i < 3; ++i) {
                lo_[i] = std::min(lo_[i], p[i]);
                hi_[i] = std::max(hi_[i], p[i]);
            }
    }

    std::optional<TriPoly> run() {
        const std::size_t k = classes_.size();
        if (k + 2 > mons_.size()) return std::nullopt;
        for (unsigned attempt = 0; attempt < opt_.attempts; ++attempt) {
            std::vector<Point3> anchors;
            for (const auto& cls : classes_) anchors.push_back(pts_[cls[rng_.index(cls.size())]]);
            std::vector<Point3> extra;
            for (std::size_t e = 0; e + k + 2 < mons_.size(); ++e) extra.push_back(random_point());
            for (unsigned round = 0; round <= opt_.refinements; ++round) {
                auto pencil = interpolate(anchors, extra);
                if (!pencil) break;
                const TriPoly g = best_in_pencil(pencil->first, pencil->second);
                if (accept(g)) return g.primitive();
                // Re-anchor each class at its median point under g.
                for (std::size_t c = 0; c < k; ++c) anchors[c] = median_point(g, classes_[c]);
            }
        }
        return std::nullopt;
    }

    Rational best_slack() const { return best_slack_; }

private:
    Point3 random_point() {
        Point3 p;
        for (int i = 0; i < 3; ++i) {
            const long u = rng_.uniform(0, 1 << 20);
            const Rational width = hi_[i] - lo_[i] + 1;
            p[i] = lo_[i] - Rational(1, 2) + width * Rational(u, 1 << 20);
            p[i].canonicalize();
        }
        return p;
    }

    // Two independent polynomials vanishing at every anchor and extra point.
    std::optional<std::pair<TriPoly, TriPoly>> interpolate(const std::vector<Point3>& anchors,
                                                           const std::vector<Point3>& extra) {
        RationalMatrix a;
        auto push = [&](const Point3& p) {
            std::vector<Rational> row;
            row.reserve(mons_.size());
            for (const auto& e : mons_) row.push_back(TriPoly::monomial(1, e)(p));
            a.push_back(std::move(row));
        };
        for (const auto& p : anchors) push(p);
        for (const auto& p : extra) push(p);
        const auto basis = nullspace(std::move(a), mons_.size());
        if (basis.size() < 2) return std::nullopt;
        TriPoly g[2];
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const long w0 = b < 2 ? (b == 0) : rng_.uniform(-8, 8);
            const long w1 = b < 2 ? (b == 1) : rng_.uniform(-8, 8);
            for (std::size_t i = 0; i < mons_.size(); ++i) {
                if (w0) g[0].add_term(mons_[i], basis[b][i] * w0);
                if (w1) g[1].add_term(mons_[i], basis[b][i] * w1);
            }
        }
        return std::make_pair(g[0], g[1]);
    }

    // Scan cos(t) g0 + sin(t) g1 over t in [0, pi) and keep the most balanced.
    TriPoly best_in_pencil(const TriPoly& g0, const TriPoly& g1) const {
        std::vector<long double> u(pts_.size()), w(pts_.size());
        for (const auto& cls : classes_)
            for (auto i : cls) {
                u[i] = to_long_double(g0(pts_[i]));
                w[i] = to_long_double(g1(pts_[i]));
            }
        constexpr int steps = 360;
        long double best = 3;
        long best_c = 1, best_s = 0;
        for (int s = 0; s < steps; ++s) {
            const long double t = 3.14159265358979323846L * s / steps;
            const long c = std::lround(std::cos(t) * 4096), sn = std::lround(std::sin(t) * 4096);
            long double worst = 0;
            for (const auto& cls : classes_) {
                std::size_t pos = 0, neg = 0;
                for (auto i : cls) {
                    const long double v = c * u[i] + sn * w[i];
                    if (v > 0) ++pos;
                    else if (v < 0) ++neg;
                }
                // A candidate that swallows a class is useless however balanced.
                const std::size_t zeros = cls.size() - pos - neg;
                const long double zcap = std::max<long double>(1, std::floor(eps_ * cls.size()));
                const long double score = zeros > zcap ? 2 : static_cast<long double>(std::max(pos, neg)) / cls.size();
                worst = std::max(worst, score);
            }
            if (worst < best) {
                best = worst;
                best_c = c;
                best_s = sn;
            }
        }
        return Rational(best_c) * g0 + Rational(best_s) * g1;
    }

    Point3 median_point(const TriPoly& g, const std::vector<std::size_t>& cls) const {
        std::vector<std::pair<Rational, std::size_t>> vals;
        vals.reserve(cls.size());
        for (auto i : cls) vals.emplace_back(g(pts_[i]), i);
        std::nth_element(vals.begin(), vals.begin() + (vals.size() - 1) / 2, vals.end());
        return pts_[vals[(vals.size() - 1) / 2].second];
    }

    bool accept(const TriPoly& g) {
        Rational worst = 0;
        bool ok = true;
        for (const auto& cls : classes_) {
            ClassSplit s;
            for (auto i : cls) {
                const int v = sgn(g(pts_[i]));
                (v > 0 ? s.pos : (v < 0 ? s.neg : s.zero))++;
            }
            worst = std::max(worst, split_slack(s, cls.size()));
            if (!split_ok(s, cls.size(), opt_.eps)) ok = false;
        }
        if (!have_best_ || worst < best_slack_) {
            best_slack_ = worst;
            have_best_ = true;
        }
        return ok;
    }

    const std::vector<Point3>& pts_;
    const std::vector<std::vector<std::size_t>>& classes_;
    std::vector<Exponent> mons_;
    const PartitionOptions& opt_;
    Rng& rng_;
    long double eps_;
    Point3 lo_, hi_;
    Rational best_slack_ = 1;
    bool have_best_ = false;
};

}  // namespace detail

/// Build g_1..g_t by recursive bisection of the point classes. Level j uses
/// a polynomial of degree lifting_degree(j) found by randomized interpolation
/// search; a single median plane is used when that degree allows one plane
/// per class, and the median-plane product is the fallback when the search
/// fails (BudgetError when the fallback is disabled).
inline PartitionPoly build_partition(const std::vector<Point3>& points, const PartitionOptions& opt) {
    if (points.empty()) throw InvalidArgument("build_partition: empty point set");
    if (opt.levels < 1) throw InvalidArgument("build_partition: need at least one level");
    if (opt.eps < 0 || opt.eps >= Rational(1, 2)) throw InvalidArgument("build_partition: eps must lie in [0, 1/2)");
    PartitionPoly part;
    part.eps = opt.eps;
    part.seed = opt.seed;
    Rng rng(opt.seed);
    std::vector<std::vector<std::size_t>> classes(1);
    for (std::size_t i = 0; i < points.size(); ++i) classes[0].push_back(i);

    for (unsigned level = 1; level <= opt.levels; ++level) {
        std::vector<std::vector<std::size_t>> live;
        for (auto& c : classes)
            if (!c.empty()) live.push_back(c);
        const unsigned d = lifting_degree(level);
        std::optional<TriPoly> g;
        bool fell_back = false;
        if (live.empty()) {
            // Every point already sits on Z(f); any plane will do.
            g = TriPoly::x();
        } else if (live.size() <= d) {
            g = detail::median_plane_product(points, live);
            fell_back = true;
        } else {
            detail::BisectorSearch search(points, live, d, opt, rng);
            g = search.run();
            if (!g) {
                if (!opt.median_fallback)
                    throw BudgetError("build_partition: no bisector found at level " + std::to_string(level),
                                      search.best_slack().get_d());
                g = detail::median_plane_product(points, live);
                fell_back = true;
            }
        }
        part.levels.push_back(*g);
        part.fallback.push_back(fell_back);
        part.product *= *g;
        part.degree += *g->degree();

        std::vector<std::vector<std::size_t>> next;
        for (const auto& cls : classes) {
            std::vector<std::size_t> neg, pos;
            for (auto i : cls) {
                const int s = sgn((*g)(points[i]));
                if (s < 0) neg.push_back(i);
                else if (s > 0) pos.push_back(i);
            }
            next.push_back(std::move(neg));
            next.push_back(std::move(pos));
        }
        classes = std::move(next);
    }
    return part;
}

struct CellOccupancy {
    std::map<SignVector, std::size_t> cells;  // full-sign classes only
    std::size_t on_surface = 0;               // points with a zero entry
};

inline CellOccupancy cell_occupancy(const PartitionPoly& part, const std::vector<Point3>& points) {
    CellOccupancy occ;
    for (const auto& p : points) {
        const auto s = sign_vector(part, p);
        if (full_sign(s))
            ++occ.cells[s];
        else
            ++occ.on_surface;
    }
    return occ;
}

struct PointSplit {
    std::vector<std::size_t> on_surface;  // P ∩ Z(f)
    std::vector<std::size_t> in_cells;    // P \ Z(f)
};

inline PointSplit classify_points(const PartitionPoly& part, const std::vector<Point3>& points) {
    PointSplit out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool zero = false;
        for (const auto& g : part.levels)
            if (g(points[i]) == 0) {
                zero = true;
                break;
            }
        (zero ? out.on_surface : out.in_cells).push_back(i);
    }
    return out;
}

struct LineClass {
    bool contained = false;
    std::size_t roots = 0;                 // distinct intersections with Z(f), when not contained
    std::set<SignVector> cells_crossed;    // full-sign classes met by the line
};

/// Classification of one line against Z(f), with the cells it crosses.
inline LineClass classify_line(const PartitionPoly& part, const Line& l, bool with_cells = true) {
    LineClass out;
    UniPoly q = UniPoly::constant(1);
    std::vector<UniPoly> restricted;
    for (const auto& g : part.levels) {
        UniPoly r = restrict_to_line(g, l);
        if (r.is_zero()) {
            out.contained = true;
            return out;
        }
        q = q * r;
        restricted.push_back(std::move(r));
    }
    out.roots = count_real_roots(q);
    if (with_cells)
        for (const auto& t : sample_between_roots(q)) {
            SignVector s;
            for (const auto& r : restricted) s.push_back(sgn(r(t)));
            out.cells_crossed.insert(std::move(s));
        }
    return out;
}

struct LineSplit {
    std::vector<std::size_t> contained;                   // L_1: lines inside Z(f)
    std::vector<std::size_t> crossing;                    // L'_1
    std::vector<std::size_t> roots;                       // per crossing line
    std::vector<std::set<SignVector>> cells_crossed;      // per crossing line
};

inline LineSplit classify_lines(const PartitionPoly& part, const std::vector<Line>& lines, bool with_cells = false) {
    std::vector<LineClass> per(lines.size());
    parallel_for(lines.size(), [&](std::size_t b, std::size_t e) {
        for (std::size_t j = b; j < e; ++j) per[j] = classify_line(part, lines[j], with_cells);
    });
    LineSplit out;
    for (std::size_t j = 0; j < lines.size(); ++j) {
        if (per[j].contained) {
            out.contained.push_back(j);
        } else {
            out.crossing.push_back(j);
            out.roots.push_back(per[j].roots);
            out.cells_crossed.push_back(std::move(per[j].cells_crossed));
        }
    }
    return out;
}

}  // namespace incilab
