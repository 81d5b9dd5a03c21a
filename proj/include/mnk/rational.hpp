// Exact rational scalars on top of GMP.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mnk {

// Canonical exact rational: always in lowest terms, denominator > 0,
// zero represented as 0/1.  mpq_class maintains exactly these invariants
// once canonicalized, so it is used directly.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rat_pow(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    if (base == 0) {
        if (exp < 0) throw std::invalid_argument("zero to a negative power");
        return Rational(0);
    }
    mpz_class num = base.get_num();
    mpz_class den = base.get_den();
    if (exp < 0) {
        std::swap(num, den);
        if (den < 0) { den = -den; num = -num; }
        exp = -exp;
    }
    mpz_class rn, rd;
    mpz_pow_ui(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(exp));
    mpz_pow_ui(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(exp));
    Rational q(rn, rd);
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rational& q) {
    return q.get_str();
}

// FNV-1a over a byte string; stable across platforms, used for cache keys.
inline std::uint64_t fnv1a(const std::string& bytes, std::uint64_t seed = 1469598103934665603ULL) {
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace mnk
