#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "tdi/errors.hpp"

namespace tdi {

using Rational = mpq_class;
using BigInt = mpz_class;

inline BigInt bigint_pow(const BigInt& base, unsigned long exp) {
    BigInt out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
}

inline Rational rational_pow(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    if (base == 0) {
        if (exp < 0) throw DomainError("rational_pow: zero base with negative exponent");
        return Rational(0);
    }
    Rational out;
    unsigned long e = static_cast<unsigned long>(exp < 0 ? -exp : exp);
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
    out.canonicalize();
    if (exp < 0) out = 1 / out;
    return out;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

// Renders "num/den" with the denominator always explicit, e.g. "0/1", "-3/2".
inline std::string format_rational(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline BigInt bigint_from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    BigInt hi(static_cast<unsigned long>(u >> 64));
    BigInt out = (hi << 64) + static_cast<unsigned long>(u & 0xffffffffffffffffULL);
    return neg ? BigInt(-out) : out;
}

inline BigInt bigint_from_u64(std::uint64_t v) {
    return BigInt(static_cast<unsigned long>(v));
}

// Checked narrowing used where exact values must fit machine words.
inline std::int64_t to_i64_checked(const __int128& v, const char* context) {
    if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
        throw ArithmeticError(std::string(context) + ": value exceeds 64-bit range");
    return static_cast<std::int64_t>(v);
}

inline std::int64_t ipow_checked(std::int64_t base, unsigned exp, const char* context) {
    __int128 acc = 1;
    for (unsigned i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > static_cast<__int128>(INT64_MAX) || acc < static_cast<__int128>(INT64_MIN))
            throw ArithmeticError(std::string(context) + ": power exceeds 64-bit range");
    }
    return static_cast<std::int64_t>(acc);
}

}  // namespace tdi
