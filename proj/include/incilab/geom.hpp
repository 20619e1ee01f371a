#pragma once

#include <array>
#include <compare>
#include <functional>
#include <ostream>
#include <variant>

#include "incilab/rational.hpp"

namespace incilab {

// Affine point in R^3 with exact rational coordinates. mpq values are always
// kept canonical (reduced, positive denominator), so equality is value equality.
struct Point3 {
    Rational x, y, z;

    Point3() = default;
    Point3(Rational x_, Rational y_, Rational z_) : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

    const Rational& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    Rational& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    friend bool operator==(const Point3& a, const Point3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
    friend bool operator<(const Point3& a, const Point3& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    }
};

using Vec3 = Point3;

inline Vec3 operator-(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Point3 operator+(const Point3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator*(const Rational& s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }

inline Rational dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline bool is_zero(const Vec3& v) { return v.x == 0 && v.y == 0 && v.z == 0; }

inline std::ostream& operator<<(std::ostream& os, const Point3& p) {
    return os << '(' << to_string(p.x) << ", " << to_string(p.y) << ", " << to_string(p.z) << ')';
}

/// Scale a nonzero rational vector to a primitive integer vector whose first
/// nonzero coordinate is positive.
inline std::array<Integer, 3> primitive_direction(const Vec3& v) {
    if (is_zero(v)) throw InvalidArgument("zero direction vector");
    Integer den = 1;
    for (int i = 0; i < 3; ++i) den = lcm(den, v[i].get_den());
    std::array<Integer, 3> out;
    Integer g = 0;
    for (int i = 0; i < 3; ++i) {
        Rational scaled = v[i] * den;
        out[i] = scaled.get_num();
        g = gcd(g, out[i]);
    }
    int first = 0;
    while (out[first] == 0) ++first;
    if (out[first] < 0) g = -g;
    for (auto& c : out) c /= g;
    return out;
}

// A line {base + t*dir}. Only constructible in canonical form:
//  - dir is a primitive integer vector, first nonzero coordinate positive;
//  - base is the unique point of the line whose coordinate along the first
//    nonzero axis of dir is zero.
// Two descriptions of the same geometric line therefore compare equal.
class Line {
public:
    /// Canonicalize (base, dir). Throws InvalidArgument for a zero direction.
    static Line through(const Point3& base, const Vec3& dir) {
        Line l;
        const auto prim = primitive_direction(dir);
        for (int i = 0; i < 3; ++i) l.dir_[i] = Rational(prim[i]);
        l.axis_ = 0;
        while (prim[l.axis_] == 0) ++l.axis_;
        const Rational t = -base[l.axis_] / l.dir_[l.axis_];
        l.base_ = base + t * l.dir_;
        return l;
    }

    static Line through_points(const Point3& a, const Point3& b) { return through(a, b - a); }

    const Point3& base() const { return base_; }
    const Vec3& dir() const { return dir_; }
    /// Index of the first nonzero coordinate of dir.
    int axis() const { return axis_; }

    Point3 at(const Rational& t) const { return base_ + t * dir_; }

    /// Parameter of a point known to lie on the line.
    Rational parameter_of(const Point3& p) const { return (p[axis_] - base_[axis_]) / dir_[axis_]; }

    friend bool operator==(const Line& a, const Line& b) { return a.dir_ == b.dir_ && a.base_ == b.base_; }
    friend bool operator<(const Line& a, const Line& b) {
        if (a.dir_ == b.dir_) return a.base_ < b.base_;
        return a.dir_ < b.dir_;
    }

private:
    Line() = default;
    Point3 base_;
    Vec3 dir_;
    int axis_ = 0;
};

inline Line canonical_line(const Point3& base, const Vec3& dir) { return Line::through(base, dir); }

inline std::ostream& operator<<(std::ostream& os, const Line& l) {
    return os << "Line{base=" << l.base() << ", dir=" << l.dir() << '}';
}

/// Exact membership test: p - base is a rational multiple of dir.
inline bool point_on_line(const Point3& p, const Line& l) {
    const int k = l.axis();
    const Rational& dk = l.dir()[k];
    // base[k] == 0, so t = p[k] / dk; compare the remaining coordinates
    // cross-multiplied to avoid the division.
    for (int i = 0; i < 3; ++i) {
        if (i == k) continue;
        if ((p[i] - l.base()[i]) * dk != p[k] * l.dir()[i]) return false;
    }
    return true;
}

// Plane a*x + b*y + c*z + d = 0 with integer coefficients, gcd 1 and the
// first nonzero coefficient positive.
class Plane {
public:
    static Plane from_coefficients(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
        if (a == 0 && b == 0 && c == 0) throw InvalidArgument("plane normal is zero");
        const std::array<const Rational*, 4> in{&a, &b, &c, &d};
        Integer den = 1;
        for (auto* q : in) den = lcm(den, q->get_den());
        Plane p;
        Integer g = 0;
        for (int i = 0; i < 4; ++i) {
            Rational s = *in[i] * den;
            p.coef_[i] = s.get_num();
            g = gcd(g, p.coef_[i]);
        }
        int first = 0;
        while (p.coef_[first] == 0) ++first;
        if (p.coef_[first] < 0) g = -g;
        for (auto& c_ : p.coef_) c_ /= g;
        return p;
    }

    /// Plane through point p with normal n.
    static Plane through(const Point3& p, const Vec3& normal) {
        return from_coefficients(normal.x, normal.y, normal.z, -dot(normal, p));
    }

    const Integer& a() const { return coef_[0]; }
    const Integer& b() const { return coef_[1]; }
    const Integer& c() const { return coef_[2]; }
    const Integer& d() const { return coef_[3]; }
    const std::array<Integer, 4>& coefficients() const { return coef_; }
    Vec3 normal() const { return {Rational(coef_[0]), Rational(coef_[1]), Rational(coef_[2])}; }

    Rational evaluate(const Point3& p) const { return coef_[0] * p.x + coef_[1] * p.y + coef_[2] * p.z + coef_[3]; }
    bool contains(const Point3& p) const { return evaluate(p) == 0; }
    bool contains(const Line& l) const { return contains(l.base()) && dot(normal(), l.dir()) == 0; }

    friend bool operator==(const Plane& a, const Plane& b) { return a.coef_ == b.coef_; }
    friend bool operator<(const Plane& a, const Plane& b) {
        for (int i = 0; i < 4; ++i)
            if (a.coef_[i] != b.coef_[i]) return a.coef_[i] < b.coef_[i];
        return false;
    }

private:
    Plane() = default;
    std::array<Integer, 4> coef_;
};

inline std::ostream& operator<<(std::ostream& os, const Plane& p) {
    return os << "Plane{" << p.a() << ", " << p.b() << ", " << p.c() << ", " << p.d() << '}';
}

struct Skew {
    friend bool operator==(Skew, Skew) { return true; }
};
struct Identical {
    friend bool operator==(Identical, Identical) { return true; }
};

using PlaneRelation = std::variant<Plane, Skew, Identical>;

/// Plane spanned by two lines when they are coplanar and distinct.
inline PlaneRelation plane_through_lines(const Line& l1, const Line& l2) {
    if (l1 == l2) return Identical{};
    const Vec3 n = cross(l1.dir(), l2.dir());
    const Vec3 w = l2.base() - l1.base();
    if (is_zero(n)) {
        // Parallel and distinct.
        return Plane::through(l1.base(), cross(l1.dir(), w));
    }
    if (dot(n, w) != 0) return Skew{};
    return Plane::through(l1.base(), n);
}

inline bool are_skew(const Line& a, const Line& b) {
    return std::holds_alternative<Skew>(plane_through_lines(a, b));
}

}  // namespace incilab
