#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcover {

using Rational = mpq_class;
using Integer = mpz_class;

inline Integer binomial(std::uint64_t n, std::int64_t k) {
    if (k < 0 || std::uint64_t(k) > n) return 0;
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, std::uint64_t(k));
    return out;
}

inline Integer factorial(std::uint64_t n) {
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

// 2^-e as an exact rational.
inline Rational pow2_inv(std::uint64_t e) {
    mpz_class d = 1;
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), e);
    return Rational(1, d);
}

inline Rational rational_pow(const Rational& x, unsigned e) {
    Rational out = 1;
    for (unsigned i = 0; i < e; ++i) out *= x;
    return out;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Accepts "p/q", "p", or a plain integer/decimal-free string.
inline Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

}  // namespace qcover
