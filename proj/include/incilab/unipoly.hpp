#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "incilab/rational.hpp"

namespace incilab {

// Dense univariate polynomial over Q; coefficient i multiplies t^i.
// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    UniPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

    static UniPoly constant(const Rational& v) { return UniPoly({v}); }
    static UniPoly monomial(const Rational& v, std::size_t k) {
        std::vector<Rational> c(k + 1);
        c[k] = v;
        return UniPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    /// Degree; std::nullopt marks the zero polynomial (degree -infinity).
    std::optional<std::size_t> degree() const {
        if (c_.empty()) return std::nullopt;
        return c_.size() - 1;
    }
    const std::vector<Rational>& coefficients() const { return c_; }
    Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const Rational& leading() const { return c_.back(); }

    Rational operator()(const Rational& t) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    /// Sign of the polynomial at +infinity (or -infinity when negative_side).
    int sign_at_infinity(bool negative_side) const {
        if (c_.empty()) return 0;
        int s = sgn(c_.back());
        if (negative_side && (c_.size() - 1) % 2 == 1) s = -s;
        return s;
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
        return UniPoly(std::move(d));
    }

    UniPoly monic() const {
        if (c_.empty()) return {};
        std::vector<Rational> d(c_);
        const Rational lc = c_.back();
        for (auto& v : d) v /= lc;
        return UniPoly(std::move(d));
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coefficient(i) + b.coefficient(i);
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a) {
        std::vector<Rational> r(a.c_);
        for (auto& v : r) v = -v;
        return UniPoly(std::move(r));
    }
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(r));
    }
    friend UniPoly operator*(const Rational& s, const UniPoly& a) {
        std::vector<Rational> r(a.c_);
        for (auto& v : r) v *= s;
        return UniPoly(std::move(r));
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

    /// Euclidean division over Q: a = q*b + r with deg r < deg b.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
        if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
        if (a.c_.size() < b.c_.size()) return {UniPoly{}, a};
        std::vector<Rational> rem(a.c_);
        std::vector<Rational> quo(a.c_.size() - b.c_.size() + 1);
        const Rational& lb = b.c_.back();
        for (std::size_t k = quo.size(); k-- > 0;) {
            const Rational f = rem[k + b.c_.size() - 1] / lb;
            quo[k] = f;
            if (f == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] -= f * b.c_[j];
        }
        rem.resize(b.c_.size() - 1);
        return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
    }

    /// Monic greatest common divisor (zero if both are zero).
    static UniPoly gcd(UniPoly a, UniPoly b) {
        while (!b.is_zero()) {
            auto r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// p / gcd(p, p'): same distinct roots, all simple.
    UniPoly square_free() const {
        if (c_.size() <= 1) return monic();
        const UniPoly g = gcd(*this, derivative());
        return divmod(*this, g).first.monic();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

inline std::ostream& operator<<(std::ostream& os, const UniPoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (std::size_t i = p.coefficients().size(); i-- > 0;) {
        const Rational& c = p.coefficients()[i];
        if (c == 0) continue;
        if (!first) os << " + ";
        os << to_string(c);
        if (i > 0) os << "*t^" << i;
        first = false;
    }
    return os;
}

// Sturm chain of a square-free polynomial.
class SturmSequence {
public:
    explicit SturmSequence(const UniPoly& p) {
        chain_.push_back(p);
        chain_.push_back(p.derivative());
        while (!chain_.back().is_zero()) {
            auto r = UniPoly::divmod(chain_[chain_.size() - 2], chain_.back()).second;
            chain_.push_back(-r);
        }
        chain_.pop_back();
    }

    const std::vector<UniPoly>& chain() const { return chain_; }

    std::size_t sign_changes_at(const Rational& t) const {
        std::size_t changes = 0;
        int last = 0;
        for (const auto& q : chain_) {
            const int s = sgn(q(t));
            if (s == 0) continue;
            if (last != 0 && s != last) ++changes;
            last = s;
        }
        return changes;
    }

    std::size_t sign_changes_at_infinity(bool negative_side) const {
        std::size_t changes = 0;
        int last = 0;
        for (const auto& q : chain_) {
            const int s = q.sign_at_infinity(negative_side);
            if (s == 0) continue;
            if (last != 0 && s != last) ++changes;
            last = s;
        }
        return changes;
    }

    /// Distinct real roots in (a, b].
    std::size_t roots_in(const Rational& a, const Rational& b) const {
        return sign_changes_at(a) - sign_changes_at(b);
    }

    std::size_t total_roots() const { return sign_changes_at_infinity(true) - sign_changes_at_infinity(false); }

private:
    std::vector<UniPoly> chain_;
};

/// Number of distinct real roots of a nonzero polynomial.
inline std::size_t count_real_roots(const UniPoly& q) {
    if (q.is_zero()) throw InvalidArgument("count_real_roots: polynomial is identically zero");
    if (q.degree() == 0u) return 0;
    return SturmSequence(q.square_free()).total_roots();
}

// A real root localized exactly: either a known rational value (lo == hi) or
// an open interval (lo, hi) with rational, non-root endpoints holding exactly one root.
struct IsolatedRoot {
    Rational lo, hi;
    bool exact() const { return lo == hi; }
};

/// Cauchy bound: every real root lies in (-B, B).
inline Rational cauchy_root_bound(const UniPoly& q) {
    Rational m = 0;
    for (std::size_t i = 0; i + 1 < q.coefficients().size(); ++i) {
        Rational r = abs(q.coefficients()[i] / q.leading());
        if (r > m) m = r;
    }
    return m + 1;
}

/// Isolate every distinct real root into disjoint, increasing intervals.
inline std::vector<IsolatedRoot> isolate_real_roots(const UniPoly& q) {
    if (q.is_zero()) throw InvalidArgument("isolate_real_roots: polynomial is identically zero");
    std::vector<IsolatedRoot> out;
    if (q.degree() == 0u) return out;
    const UniPoly sf = q.square_free();
    const SturmSequence sturm(sf);
    const Rational bound = cauchy_root_bound(sf);

    struct Pending {
        Rational lo, hi;  // half-open (lo, hi], endpoints known non-roots except possibly hi
    };
    std::vector<Pending> stack{{-bound, bound}};
    while (!stack.empty()) {
        Pending cur = std::move(stack.back());
        stack.pop_back();
        const std::size_t count = sturm.roots_in(cur.lo, cur.hi);
        if (count == 0) continue;
        if (count == 1 && sf(cur.hi) != 0) {
            out.push_back({cur.lo, cur.hi});
            continue;
        }
        const Rational mid = (cur.lo + cur.hi) / 2;
        if (count == 1 && sf(cur.hi) == 0) {
            out.push_back({cur.hi, cur.hi});
            continue;
        }
        stack.push_back({mid, cur.hi});
        stack.push_back({cur.lo, mid});
    }
    // An interval's lower end may coincide with an exact root found on its
    // left; shrink it so both endpoints are non-roots.
    for (auto& r : out) {
        if (r.exact()) continue;
        while (sf(r.lo) == 0) {
            const Rational mid = (r.lo + r.hi) / 2;
            if (sf(mid) == 0) {
                r.lo = r.hi = mid;
                break;
            }
            if (sturm.roots_in(r.lo, mid) == 1)
                r.hi = mid;
            else
                r.lo = mid;
        }
    }
    std::sort(out.begin(), out.end(), [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.lo < b.lo; });
    return out;
}

/// The root isolated by r when it is rational. With integer coefficients a
/// rational root is k / a_n, so an interval narrower than 1 / a_n holds at
/// most one candidate.
inline std::optional<Rational> rational_root_in(const UniPoly& q, const IsolatedRoot& r) {
    if (r.exact()) return r.lo;
    const UniPoly sf = q.square_free();
    Integer den = 1;
    for (const auto& c : sf.coefficients()) den = lcm(den, c.get_den());
    const Rational lead = sf.leading() * Rational(den);
    const Integer an = abs(lead.get_num());
    const SturmSequence sturm(sf);
    Rational lo = r.lo, hi = r.hi;
    const Rational width = Rational(1) / Rational(an);
    while (hi - lo >= width) {
        const Rational mid = (lo + hi) / 2;
        if (sf(mid) == 0) return mid;
        if (sturm.roots_in(lo, mid) == 1)
            hi = mid;
        else
            lo = mid;
    }
    Rational cand(floor(lo * Rational(an)) + 1, an);
    cand.canonicalize();
    if (cand > lo && cand < hi && sf(cand) == 0) return cand;
    return std::nullopt;
}

/// One rational sample strictly inside each interval of R minus the real roots
/// of q (roots + 1 samples, in increasing order).
inline std::vector<Rational> sample_between_roots(const UniPoly& q) {
    const auto roots = isolate_real_roots(q);
    std::vector<Rational> samples;
    if (roots.empty()) {
        samples.emplace_back(0);
        return samples;
    }
    samples.push_back(roots.front().lo - 1);
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        const auto& a = roots[i];
        const auto& b = roots[i + 1];
        // a.hi <= b.lo; a.hi is a non-root unless a is exact or b sits on it.
        if (!a.exact() && !(b.exact() && b.lo == a.hi)) {
            samples.push_back(a.hi);
        } else if (a.exact()) {
            samples.push_back((a.hi + b.lo) / 2);
        } else {
            // Shrink a from above until its upper end is a non-root.
            const UniPoly sf = q.square_free();
            const SturmSequence sturm(sf);
            Rational lo = a.lo, hi = a.hi;
            for (;;) {
                const Rational mid = (lo + hi) / 2;
                if (sf(mid) == 0) {
                    samples.push_back((mid + b.lo) / 2);
                    break;
                }
                if (sturm.roots_in(lo, mid) == 1) {
                    samples.push_back(mid);
                    break;
                }
                lo = mid;
            }
        }
    }
    samples.push_back(roots.back().hi + 1);
    return samples;
}

}  // namespace incilab
