#pragma once

#include <array>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "incilab/geom.hpp"
#include "incilab/unipoly.hpp"

namespace incilab {

using Exponent = std::array<unsigned, 3>;

inline unsigned total_degree(const Exponent& e) { return e[0] + e[1] + e[2]; }

// Sparse polynomial in Q[x, y, z]. No zero coefficients are stored; the zero
// polynomial has no terms and degree std::nullopt. Terms are ordered by
// exponent lex order (x > y > z), so the last term is the lex-leading one.
class TriPoly {
public:
    using Terms = std::map<Exponent, Rational>;

    TriPoly() = default;
    explicit TriPoly(const Rational& c) {
        if (c != 0) terms_[{0, 0, 0}] = c;
    }
    TriPoly(long c) : TriPoly(Rational(c)) {}

    static TriPoly monomial(const Rational& c, Exponent e) {
        TriPoly p;
        if (c != 0) p.terms_[e] = c;
        return p;
    }
    static TriPoly variable(int i) {
        Exponent e{0, 0, 0};
        e[i] = 1;
        return monomial(1, e);
    }
    static TriPoly x() { return variable(0); }
    static TriPoly y() { return variable(1); }
    static TriPoly z() { return variable(2); }

    /// Linear form a*x + b*y + c*z + d.
    static TriPoly linear(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
        TriPoly p;
        p.add_term({1, 0, 0}, a);
        p.add_term({0, 1, 0}, b);
        p.add_term({0, 0, 1}, c);
        p.add_term({0, 0, 0}, d);
        return p;
    }
    static TriPoly from_plane(const Plane& pl) {
        return linear(Rational(pl.a()), Rational(pl.b()), Rational(pl.c()), Rational(pl.d()));
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{0, 0, 0}); }

    /// Total degree; std::nullopt is the zero polynomial's "-infinity".
    std::optional<unsigned> degree() const {
        if (terms_.empty()) return std::nullopt;
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }

    unsigned degree_in(int var) const {
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }

    bool contains_variable(int var) const { return degree_in(var) > 0; }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        const unsigned d = total_degree(terms_.begin()->first);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) != d) return false;
        return true;
    }

    TriPoly homogeneous_part(unsigned k) const {
        TriPoly p;
        for (const auto& [e, c] : terms_)
            if (total_degree(e) == k) p.terms_.emplace(e, c);
        return p;
    }

    Rational coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Exponent& e, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational operator()(const Point3& p) const {
        const unsigned d = degree().value_or(0);
        std::array<std::vector<Rational>, 3> pw;
        for (int i = 0; i < 3; ++i) {
            pw[i].resize(d + 1);
            pw[i][0] = 1;
            for (unsigned k = 1; k <= d; ++k) pw[i][k] = pw[i][k - 1] * p[i];
        }
        Rational acc = 0;
        for (const auto& [e, c] : terms_) acc += c * pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]];
        return acc;
    }

    TriPoly& operator+=(const TriPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    TriPoly& operator-=(const TriPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend TriPoly operator+(TriPoly a, const TriPoly& b) { return a += b; }
    friend TriPoly operator-(TriPoly a, const TriPoly& b) { return a -= b; }
    friend TriPoly operator-(const TriPoly& a) {
        TriPoly r;
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend TriPoly operator*(const TriPoly& a, const TriPoly& b) {
        TriPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
        return r;
    }
    friend TriPoly operator*(const Rational& s, const TriPoly& a) {
        TriPoly r;
        if (s == 0) return r;
        for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, s * c);
        return r;
    }
    TriPoly& operator*=(const TriPoly& o) { return *this = *this * o; }
    friend bool operator==(const TriPoly& a, const TriPoly& b) { return a.terms_ == b.terms_; }

    TriPoly pow(unsigned k) const {
        TriPoly r(1), base = *this;
        while (k) {
            if (k & 1u) r *= base;
            k >>= 1u;
            if (k) base *= base;
        }
        return r;
    }

    /// f(s_x, s_y, s_z) for polynomial substitutes.
    TriPoly substitute(const std::array<TriPoly, 3>& s) const {
        const unsigned d = degree().value_or(0);
        std::array<std::vector<TriPoly>, 3> pw;
        for (int i = 0; i < 3; ++i) {
            pw[i].reserve(d + 1);
            pw[i].emplace_back(1);
            for (unsigned k = 1; k <= d; ++k) pw[i].push_back(pw[i].back() * s[i]);
        }
        TriPoly r;
        for (const auto& [e, c] : terms_) r += c * (pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]]);
        return r;
    }

    /// g(v) = f(p + v).
    TriPoly translate(const Point3& p) const {
        return substitute({x() + TriPoly(p.x), y() + TriPoly(p.y), z() + TriPoly(p.z)});
    }

    /// q(t) = f(base + t * dir).
    UniPoly restrict(const Point3& base, const Vec3& dir) const {
        const unsigned d = degree().value_or(0);
        std::array<std::vector<UniPoly>, 3> pw;
        for (int i = 0; i < 3; ++i) {
            const UniPoly lin({base[i], dir[i]});
            pw[i].reserve(d + 1);
            pw[i].push_back(UniPoly::constant(1));
            for (unsigned k = 1; k <= d; ++k) pw[i].push_back(pw[i].back() * lin);
        }
        std::vector<Rational> acc(d + 1);
        for (const auto& [e, c] : terms_) {
            const UniPoly m = pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]];
            for (std::size_t i = 0; i < m.coefficients().size(); ++i) acc[i] += c * m.coefficients()[i];
        }
        return UniPoly(std::move(acc));
    }

    /// Lex-leading term (x > y > z). Precondition: nonzero.
    std::pair<Exponent, Rational> leading_term() const { return *terms_.rbegin(); }

    /// Multivariate division by a single divisor under lex order:
    /// *this = q * g + r, no term of r divisible by LT(g). With one divisor
    /// this is a Groebner reduction, so r == 0 iff g divides *this.
    std::pair<TriPoly, TriPoly> divmod(const TriPoly& g) const {
        if (g.is_zero()) throw InvalidArgument("TriPoly division by zero");
        const auto [lg_e, lg_c] = g.leading_term();
        TriPoly p = *this, q, r;
        while (!p.is_zero()) {
            const auto [e, c] = p.leading_term();
            if (e[0] >= lg_e[0] && e[1] >= lg_e[1] && e[2] >= lg_e[2]) {
                const TriPoly t = monomial(c / lg_c, {e[0] - lg_e[0], e[1] - lg_e[1], e[2] - lg_e[2]});
                q += t;
                p -= t * g;
            } else {
                r.add_term(e, c);
                p.terms_.erase(e);
            }
        }
        return {q, r};
    }

    bool divisible_by(const TriPoly& g) const { return divmod(g).second.is_zero(); }

    /// Coefficients with respect to one variable: *this = sum_k c_k * var^k,
    /// with c_k free of var.
    std::vector<TriPoly> coefficients_in(int var) const {
        std::vector<TriPoly> out(degree_in(var) + 1);
        for (const auto& [e, c] : terms_) {
            Exponent rest = e;
            rest[var] = 0;
            out[e[var]].terms_.emplace(rest, c);
        }
        return out;
    }

    static TriPoly from_coefficients_in(int var, const std::vector<TriPoly>& coeffs) {
        TriPoly r;
        for (unsigned k = 0; k < coeffs.size(); ++k)
            for (const auto& [e, c] : coeffs[k].terms_) {
                Exponent full = e;
                full[var] += k;
                r.add_term(full, c);
            }
        return r;
    }

    /// Scale to integer coefficients with gcd 1 and positive lex-leading
    /// coefficient. The zero polynomial is returned unchanged.
    TriPoly primitive() const {
        if (is_zero()) return *this;
        Integer den = 1, g = 0;
        for (const auto& [e, c] : terms_) den = lcm(den, c.get_den());
        for (const auto& [e, c] : terms_) g = gcd(g, Integer(c * den));
        if (terms_.rbegin()->second < 0) g = -g;
        Rational scale(den, g);
        scale.canonicalize();
        return scale * *this;
    }

private:
    Terms terms_;
};

inline std::string to_string(const TriPoly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    static const char* names[3] = {"x", "y", "z"};
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << '-';
        first = false;
        const Rational a = abs(c);
        const bool unit = (a == 1) && total_degree(e) > 0;
        if (!unit) os << to_string(a);
        bool need_star = !unit;
        for (int i = 0; i < 3; ++i) {
            if (e[i] == 0) continue;
            if (need_star) os << '*';
            os << names[i];
            if (e[i] > 1) os << '^' << e[i];
            need_star = true;
        }
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const TriPoly& f) { return os << to_string(f); }

}  // namespace incilab
