#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "incilab/geom.hpp"
#include "incilab/tripoly.hpp"
#include "incilab/unipoly.hpp"

namespace incilab {

/// q(t) = f(base + t*dir). q is identically zero iff the line lies in Z(f).
inline UniPoly restrict_to_line(const TriPoly& f, const Line& l) { return f.restrict(l.base(), l.dir()); }

inline bool line_in_zero_set(const TriPoly& f, const Line& l) {
    if (f.is_zero()) throw InvalidArgument("line_in_zero_set: zero polynomial");
    return restrict_to_line(f, l).is_zero();
}

/// True iff the linear form of the plane divides f exactly.
inline bool divides_by_plane(const TriPoly& f, const Plane& pl) {
    if (f.is_zero()) throw InvalidArgument("divides_by_plane: zero polynomial");
    return f.divisible_by(TriPoly::from_plane(pl));
}

// Taylor data of f at a point p of Z(f): f(p + t v) = sum_i (1/i!) F_i(v) t^i,
// with F_i homogeneous of degree i in v (or zero). forms[i-1] holds F_i.
struct DirectionalSystem {
    Point3 base;
    std::vector<TriPoly> forms;

    const TriPoly& F(unsigned i) const { return forms.at(i - 1); }
    std::size_t size() const { return forms.size(); }

    /// Sum_i (1/i!) F_i(v) t^i evaluated exactly.
    Rational expand(const Rational& t, const Vec3& v) const {
        Rational acc = 0, tp = 1;
        for (unsigned i = 1; i <= forms.size(); ++i) {
            tp *= t;
            Rational term = forms[i - 1](v) * tp;
            term /= Rational(factorial(i));
            acc += term;
        }
        return acc;
    }
};

inline DirectionalSystem directional_system(const TriPoly& f, const Point3& p) {
    if (f(p) != 0) throw PreconditionError("directional_system: f(p) != 0");
    const TriPoly g = f.translate(p);
    DirectionalSystem sys{p, {}};
    const unsigned d = f.degree().value_or(0);
    for (unsigned i = 1; i <= d; ++i) sys.forms.push_back(Rational(factorial(i)) * g.homogeneous_part(i));
    return sys;
}

/// f(p + v) is homogeneous in v (every Taylor form except the top one vanishes).
inline bool is_cone_with_apex(const TriPoly& f, const Point3& p) {
    if (f.is_zero()) return false;
    return f.translate(p).is_homogeneous();
}

namespace detail {

inline int highest_variable(const TriPoly& a) {
    for (int v = 2; v >= 0; --v)
        if (a.contains_variable(v)) return v;
    return -1;
}

inline TriPoly exact_quotient(const TriPoly& a, const TriPoly& b) {
    auto [q, r] = a.divmod(b);
    if (!r.is_zero()) throw Error("internal: inexact polynomial division");
    return q;
}

// Pseudo-remainder of a by b with respect to var.
inline TriPoly pseudo_remainder(TriPoly a, const TriPoly& b, int var) {
    const unsigned db = b.degree_in(var);
    const TriPoly lcb = b.coefficients_in(var).back();
    while (!a.is_zero() && a.degree_in(var) >= db) {
        const unsigned da = a.degree_in(var);
        const TriPoly lca = a.coefficients_in(var).back();
        Exponent shift{0, 0, 0};
        shift[var] = da - db;
        a = lcb * a - lca * TriPoly::monomial(1, shift) * b;
    }
    return a;
}

TriPoly polynomial_gcd(const TriPoly& a, const TriPoly& b);

inline TriPoly content_in(const TriPoly& a, int var) {
    TriPoly g;
    for (const auto& c : a.coefficients_in(var)) {
        if (c.is_zero()) continue;
        g = polynomial_gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

// GCD over Q[x,y,z] by recursive primitive remainder sequences; the result is
// normalized with TriPoly::primitive().
inline TriPoly polynomial_gcd(const TriPoly& a, const TriPoly& b) {
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    if (a.is_constant() || b.is_constant()) return TriPoly(1);
    const int var = std::max(highest_variable(a), highest_variable(b));
    if (!a.contains_variable(var)) return polynomial_gcd(a, content_in(b, var));
    if (!b.contains_variable(var)) return polynomial_gcd(content_in(a, var), b);

    const TriPoly ca = content_in(a, var), cb = content_in(b, var);
    TriPoly pa = exact_quotient(a, ca), pb = exact_quotient(b, cb);
    if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
    TriPoly g;
    for (;;) {
        const TriPoly r = pseudo_remainder(pa, pb, var);
        if (r.is_zero()) {
            g = pb;
            break;
        }
        if (!r.contains_variable(var)) {
            g = TriPoly(1);
            break;
        }
        pa = std::move(pb);
        pb = exact_quotient(r, content_in(r, var)).primitive();
    }
    g = exact_quotient(g, content_in(g, var));
    return (polynomial_gcd(ca, cb) * g).primitive();
}

}  // namespace detail

/// Normalized gcd of two trivariate polynomials over Q.
inline TriPoly gcd(const TriPoly& a, const TriPoly& b) { return detail::polynomial_gcd(a, b); }

struct Coprime {
    friend bool operator==(Coprime, Coprime) { return true; }
};

using CommonFactor = std::variant<TriPoly, Coprime>;

inline constexpr unsigned kCommonFactorDegreeCap = 8;

/// Nontrivial common divisor of homogeneous forms, or Coprime.
inline CommonFactor common_factor(const std::vector<TriPoly>& fs, unsigned degree_cap = kCommonFactorDegreeCap) {
    if (fs.empty()) throw InvalidArgument("common_factor: empty input");
    for (const auto& f : fs) {
        if (f.is_zero()) throw InvalidArgument("common_factor: zero polynomial in input");
        if (!f.is_homogeneous()) throw InvalidArgument("common_factor: input is not homogeneous");
        if (*f.degree() > degree_cap) throw InvalidArgument("common_factor: degree above cap");
    }
    TriPoly g = fs.front().primitive();
    for (std::size_t i = 1; i < fs.size() && !g.is_constant(); ++i) g = gcd(g, fs[i]);
    if (g.is_constant()) return Coprime{};
    return g;
}

// Real projective zeros of a directional system, viewed in P^2.
struct ProjectiveZeroCount {
    enum class Kind { Finite, Infinite, Unresolved };
    Kind kind = Kind::Unresolved;
    std::size_t count = 0;  // meaningful for Finite
    std::vector<Vec3> rational_zeros;  // the rational ones among them, when known
};

namespace detail {

// Rational basis (a, b) of the 2-dimensional kernel of a nonzero linear form.
inline std::pair<Vec3, Vec3> kernel_basis(const Vec3& n) {
    if (n.x != 0) return {Vec3{-n.y, n.x, 0}, Vec3{-n.z, 0, n.x}};
    if (n.y != 0) return {Vec3{1, 0, 0}, Vec3{0, -n.z, n.y}};
    return {Vec3{1, 0, 0}, Vec3{0, 1, 0}};
}

}  // namespace detail

/// Count the common real projective zeros of the forms F_1..F_D.
/// Exact when F_1 is a nonzero linear form (the zero set is then parameterized
/// by a projective line); Infinite when the nonzero forms share a factor;
/// Unresolved otherwise.
inline ProjectiveZeroCount common_projective_zeros(const DirectionalSystem& sys) {
    ProjectiveZeroCount out;
    std::vector<TriPoly> nonzero;
    for (const auto& f : sys.forms)
        if (!f.is_zero()) nonzero.push_back(f);
    if (nonzero.empty()) {
        out.kind = ProjectiveZeroCount::Kind::Infinite;
        return out;
    }
    const TriPoly& f1 = sys.forms.empty() ? nonzero.front() : sys.forms.front();
    if (f1.is_zero()) {
        bool small = true;
        for (const auto& f : nonzero) small = small && *f.degree() <= kCommonFactorDegreeCap;
        if (small && std::holds_alternative<TriPoly>(common_factor(nonzero)))
            out.kind = ProjectiveZeroCount::Kind::Infinite;
        return out;
    }
    const Vec3 normal{f1.coefficient({1, 0, 0}), f1.coefficient({0, 1, 0}), f1.coefficient({0, 0, 1})};
    const auto [a, b] = detail::kernel_basis(normal);
    // v = s*a + t*b; dehomogenize at t = 1 (finite points) and check s-axis (t = 0).
    UniPoly g;
    bool all_vanish_at_a = true;
    for (std::size_t i = 1; i < nonzero.size(); ++i) {
        const TriPoly& F = nonzero[i];
        g = UniPoly::gcd(g, F.restrict(b, a));
        if (F(a) != 0) all_vanish_at_a = false;
    }
    if (nonzero.size() == 1) {
        // Only the linear form: its whole projective line.
        out.kind = ProjectiveZeroCount::Kind::Infinite;
        return out;
    }
    if (g.is_zero()) {
        out.kind = ProjectiveZeroCount::Kind::Infinite;
        return out;
    }
    out.kind = ProjectiveZeroCount::Kind::Finite;
    out.count = count_real_roots(g);
    for (const auto& r : isolate_real_roots(g))
        if (auto s = rational_root_in(g, r)) out.rational_zeros.push_back(b + *s * a);
    if (all_vanish_at_a) {
        ++out.count;
        out.rational_zeros.push_back(a);
    }
    return out;
}

}  // namespace incilab
