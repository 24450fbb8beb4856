#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>

namespace ranklab {

/// Arbitrary-precision integer. Objective values live here: OneMax values are
/// small, BinaryValue values range up to 2^n - 1 and must stay exact.
using Int = mpz_class;

/// Exact rational. The oracle's monotone perturbation only ever adds +-2^n or
/// halves a sum, so every value it produces is dyadic; mpq keeps that exact.
using Rational = mpq_class;

inline Int pow2(std::size_t e) {
    Int r = 1;
    r <<= e;
    return r;
}

inline bool is_dyadic(const Rational& q) {
    // Denominator is a power of two iff it has a single set bit.
    return mpz_popcount(q.get_den().get_mpz_t()) == 1;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

}  // namespace ranklab
