#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "incilab/error.hpp"

namespace incilab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Serialize as "p/q", or "p" when q == 1.
inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Parse "p/q" or "p" (optional leading sign). The result is canonicalized.
inline Rational parse_rational(std::string_view text) {
    auto is_int = [](std::string_view s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto strip_plus = [](std::string_view s) {
        return (!s.empty() && s[0] == '+') ? s.substr(1) : s;
    };
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!is_int(num) || !is_int(den))
        throw ParseError("malformed rational '" + std::string(text) + "'");
    Integer n(std::string(strip_plus(num)));
    Integer d(std::string(strip_plus(den)));
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }

inline Rational pow(const Rational& base, unsigned long e) {
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    return r;
}

inline Integer pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer factorial(unsigned long k) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Integer ceil(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline long double to_long_double(const Rational& q) {
    // mpq_get_d loses range for huge values; go through mpf with ample bits.
    mpf_class f(q, 128);
    long exp = 0;
    const double mant = mpf_get_d_2exp(&exp, f.get_mpf_t());
    mpf_class rest = f;
    // Recover the extra bits beyond double precision.
    mpf_class hi(mant, 128);
    mpf_mul_2exp(hi.get_mpf_t(), hi.get_mpf_t(), static_cast<mp_bitcnt_t>(exp > 0 ? exp : 0));
    if (exp < 0) mpf_div_2exp(hi.get_mpf_t(), hi.get_mpf_t(), static_cast<mp_bitcnt_t>(-exp));
    rest -= hi;
    long double r = static_cast<long double>(mant);
    r = std::ldexp(r, static_cast<int>(exp));
    r += static_cast<long double>(rest.get_d());
    return r;
}

}  // namespace incilab
