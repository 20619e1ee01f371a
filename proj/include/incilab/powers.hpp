#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "incilab/rational.hpp"

namespace incilab {

// Closed real interval [lo, hi] of long doubles, used wherever a bound value
// has no exact rational form. Every operation rounds outward.
struct Interval {
    long double lo = 0, hi = 0;

    static constexpr long double kSlack = 1e-17L;  // relative, ~2^-56 > a few ulps of the 64-bit mantissa

    static Interval around(long double v) {
        const long double e = std::fabs(v) * kSlack + std::numeric_limits<long double>::denorm_min();
        return {v - e, v + e};
    }
    static Interval point(const Rational& q) {
        const long double v = to_long_double(q);
        return around(v);
    }
    long double mid() const { return (lo + hi) / 2; }

    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r = {a.lo + b.lo, a.hi + b.hi};
        return widen(r);
    }
    // Both operands are nonnegative in every use here.
    friend Interval operator*(const Interval& a, const Interval& b) { return widen({a.lo * b.lo, a.hi * b.hi}); }
    friend Interval operator/(const Interval& a, const Interval& b) { return widen({a.lo / b.hi, a.hi / b.lo}); }

    static Interval widen(Interval r) {
        r.lo -= std::fabs(r.lo) * kSlack;
        r.hi += std::fabs(r.hi) * kSlack;
        return r;
    }
};

// A positive real of the form c * prod_p p^{e_p} with rational c > 0 and
// rational exponents on primes. Closed under products, quotients and
// rational powers; exact whenever the exponents are integral.
class PowerProduct {
public:
    PowerProduct() = default;

    static PowerProduct of(const Rational& v) {
        if (v <= 0) throw InvalidArgument("PowerProduct requires a positive value");
        PowerProduct r;
        r.add_factors(v.get_num(), 1);
        r.add_factors(v.get_den(), -1);
        return r;
    }
    static PowerProduct of(std::uint64_t v) { return of(Rational(static_cast<unsigned long>(v))); }

    const std::map<Integer, Rational, std::less<>>& exponents() const { return exp_; }

    PowerProduct pow(const Rational& e) const {
        PowerProduct r;
        if (e == 0) return r;
        for (const auto& [p, x] : exp_) r.exp_[p] = x * e;
        return r;
    }

    friend PowerProduct operator*(const PowerProduct& a, const PowerProduct& b) {
        PowerProduct r = a;
        for (const auto& [p, x] : b.exp_) r.bump(p, x);
        return r;
    }
    friend PowerProduct operator/(const PowerProduct& a, const PowerProduct& b) { return a * b.pow(-1); }
    friend bool operator==(const PowerProduct& a, const PowerProduct& b) { return a.exp_ == b.exp_; }

    bool is_one() const { return exp_.empty(); }

    /// Exact value when every exponent is an integer.
    std::optional<Rational> exact() const {
        Rational r = 1;
        for (const auto& [p, x] : exp_) {
            if (x.get_den() != 1) return std::nullopt;
            const long e = x.get_num().get_si();
            const Integer pe = incilab::pow(p, static_cast<unsigned long>(e < 0 ? -e : e));
            if (e > 0)
                r *= Rational(pe);
            else
                r /= Rational(pe);
        }
        return r;
    }

    /// Natural logarithm (approximate).
    long double log() const {
        long double acc = 0;
        for (const auto& [p, x] : exp_) acc += to_long_double(x) * std::log(to_long_double(Rational(p)));
        return acc;
    }

    Interval interval() const {
        if (auto e = exact()) return Interval::point(*e);
        // Each factor p^x carries its own rounding; widen accordingly.
        Interval r{1, 1};
        for (const auto& [p, x] : exp_) r = r * Interval::around(std::exp(to_long_double(x) * std::log(to_long_double(Rational(p)))));
        return Interval::widen(r);
    }

    long double approx() const {
        if (auto e = exact()) return to_long_double(*e);
        return std::exp(log());
    }

    /// Exact three-way comparison (sign of a - b).
    friend int compare(const PowerProduct& a, const PowerProduct& b) {
        const PowerProduct q = a / b;
        if (q.is_one()) return 0;
        Integer den_lcm = 1;
        for (const auto& [p, x] : q.exp_) den_lcm = lcm(den_lcm, x.get_den());
        // q^L = num / den with integer exponents; compare num with den.
        Integer num = 1, den = 1;
        double bits = 0;
        for (const auto& [p, x] : q.exp_) {
            const Rational scaled = x * Rational(den_lcm);
            bits += std::fabs(scaled.get_d()) * static_cast<double>(mpz_sizeinbase(p.get_mpz_t(), 2));
        }
        if (bits > 4e6) {
            const long double l = q.log();
            return l > 0 ? 1 : (l < 0 ? -1 : 0);
        }
        for (const auto& [p, x] : q.exp_) {
            const Rational scaled = x * Rational(den_lcm);
            const Integer e = scaled.get_num();
            if (e > 0)
                num *= incilab::pow(p, e.get_ui());
            else
                den *= incilab::pow(p, Integer(-e).get_ui());
        }
        return num > den ? 1 : (num < den ? -1 : 0);
    }
    friend bool operator<(const PowerProduct& a, const PowerProduct& b) { return compare(a, b) < 0; }
    friend bool operator<=(const PowerProduct& a, const PowerProduct& b) { return compare(a, b) <= 0; }

    /// log(a) / log(b) as an exact rational when the exponent vectors are
    /// proportional (b != 1).
    friend std::optional<Rational> log_ratio(const PowerProduct& a, const PowerProduct& b) {
        if (b.is_one()) return std::nullopt;
        const auto& [p0, x0] = *b.exp_.begin();
        auto it = a.exp_.find(p0);
        const Rational ratio = (it == a.exp_.end() ? Rational(0) : it->second) / x0;
        for (const auto& [p, x] : b.exp_) {
            auto ai = a.exp_.find(p);
            const Rational ax = ai == a.exp_.end() ? Rational(0) : ai->second;
            if (ax != ratio * x) return std::nullopt;
        }
        for (const auto& [p, x] : a.exp_)
            if (!b.exp_.count(p)) return std::nullopt;
        return ratio;
    }

    std::string to_string() const {
        if (exp_.empty()) return "1";
        std::string s;
        for (const auto& [p, x] : exp_) {
            if (!s.empty()) s += "*";
            s += p.get_str();
            if (x != 1) s += "^(" + incilab::to_string(x) + ")";
        }
        return s;
    }

private:
    void bump(const Integer& p, const Rational& x) {
        auto& slot = exp_[p];
        slot += x;
        if (slot == 0) exp_.erase(p);
    }

    void add_factors(Integer v, int sign) {
        for (unsigned long p = 2; Integer(p) * p <= v; p += (p == 2 ? 1 : 2)) {
            while (v % p == 0) {
                bump(Integer(p), sign);
                v /= p;
            }
        }
        if (v > 1) bump(v, sign);
    }

    std::map<Integer, Rational, std::less<>> exp_;
};

// A bound value: exact when it has a rational closed form, otherwise an
// outward-rounded interval.
struct Real {
    std::optional<Rational> exact;
    Interval range;

    static Real from(const PowerProduct& p) {
        Real r;
        r.exact = p.exact();
        r.range = p.interval();
        return r;
    }
    static Real from(const Rational& q) { return Real{q, Interval::point(q)}; }
    static Real from_interval(Interval i) { return Real{std::nullopt, i}; }

    long double value() const { return exact ? to_long_double(*exact) : range.mid(); }
    long double upper() const { return range.hi; }
    long double lower() const { return range.lo; }

    friend Real operator+(const Real& a, const Real& b) {
        Real r;
        if (a.exact && b.exact) r.exact = *a.exact + *b.exact;
        r.range = r.exact ? Interval::point(*r.exact) : a.range + b.range;
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r;
        if (a.exact && b.exact) r.exact = *a.exact * *b.exact;
        r.range = r.exact ? Interval::point(*r.exact) : a.range * b.range;
        return r;
    }
};

inline bool is_perfect_square(const Rational& q) {
    return q >= 0 && mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t());
}

inline Rational exact_sqrt(const Rational& q) {
    Integer a, b;
    mpz_sqrt(a.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(b.get_mpz_t(), q.get_den_mpz_t());
    Rational r(a, b);
    r.canonicalize();
    return r;
}

}  // namespace incilab
