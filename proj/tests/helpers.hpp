#pragma once

#include "incilab/incilab.hpp"

namespace testing_support {

using namespace incilab;

inline Point3 P(long x, long y, long z) { return {Rational(x), Rational(y), Rational(z)}; }
inline Rational Q(long a, long b = 1) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}
inline Line L(Point3 base, Vec3 dir) { return Line::through(base, dir); }

inline const TriPoly X = TriPoly::x();
inline const TriPoly Y = TriPoly::y();
inline const TriPoly Z = TriPoly::z();
inline TriPoly C(long v) { return TriPoly(Rational(v)); }

inline Point3 random_point(Rng& rng, long r) {
    return {Q(rng.uniform(-r, r), rng.uniform(1, 4)), Q(rng.uniform(-r, r), rng.uniform(1, 4)),
            Q(rng.uniform(-r, r), rng.uniform(1, 4))};
}

inline Vec3 random_dir(Rng& rng, long r) {
    for (;;) {
        Vec3 v = P(rng.uniform(-r, r), rng.uniform(-r, r), rng.uniform(-r, r));
        if (!is_zero(v)) return v;
    }
}

inline Configuration config_of(std::vector<Point3> pts, std::vector<Line> lines) {
    Configuration c;
    c.points = std::move(pts);
    c.lines = std::move(lines);
    return c;
}

}  // namespace testing_support
