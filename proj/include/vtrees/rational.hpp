#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vtrees {

// Exact arithmetic backing every coefficient in the library. GMP keeps the
// canonical-form invariant (den > 0, gcd(num, den) = 1) as long as inputs are
// canonical, which make_rational() guarantees.
using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(BigInt(num), BigInt(den));
}

inline BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

inline BigInt binomial_uint(unsigned n, unsigned k) {
    if (k > n) return 0;
    BigInt b = 1;
    for (unsigned i = 0; i < k; ++i) {
        b *= BigInt(n - i);
        b /= BigInt(i + 1);
    }
    return b;
}

// (x)^(k-falling) = x (x-1) ... (x-k+1), for arbitrary rational x.
inline Rational falling_factorial(const Rational& x, unsigned k) {
    Rational p = 1;
    for (unsigned i = 0; i < k; ++i) p *= x - Rational(static_cast<long>(i));
    return p;
}

// Generalised binomial coefficient binom(x, k) = (x)^(k-falling) / k!.
inline Rational gen_binomial(const Rational& x, unsigned k) {
    return falling_factorial(x, k) / Rational(factorial(k));
}

inline Rational pow_rational(const Rational& x, unsigned k) {
    Rational p = 1;
    for (unsigned i = 0; i < k; ++i) p *= x;
    return p;
}

inline double to_double(const Rational& r) { return r.get_d(); }

// "p/q" for non-integers, plain "p" otherwise.
inline std::string rational_to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace vtrees
