#pragma once

#include <random>

#include "tdi/families.hpp"
#include "tdi/polynomial.hpp"
#include "tdi/rational_matrix.hpp"

namespace tdi::test {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline std::int64_t rand_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline MultiIndex rand_multi_index(std::mt19937_64& rng, std::size_t dim, std::int32_t max_exp) {
    MultiIndex a(dim);
    for (std::size_t i = 0; i < dim; ++i)
        a[i] = static_cast<std::int32_t>(rand_int(rng, 0, max_exp));
    return a;
}

inline Rational rand_rational(std::mt19937_64& rng) {
    std::int64_t num = rand_int(rng, -9, 9);
    std::int64_t den = rand_int(rng, 1, 9);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Polynomial rand_polynomial(std::mt19937_64& rng, std::size_t dim, int max_terms = 5,
                                  std::int32_t max_exp = 3) {
    Polynomial p(dim);
    int terms = static_cast<int>(rand_int(rng, 0, max_terms));
    for (int i = 0; i < terms; ++i)
        p.add_term(rand_multi_index(rng, dim, max_exp), rand_rational(rng));
    return p;
}

inline std::vector<Rational> rand_point(std::mt19937_64& rng, std::size_t dim, std::int64_t lo,
                                        std::int64_t hi) {
    std::vector<Rational> out(dim);
    for (auto& c : out) c = Rational(rand_int(rng, lo, hi));
    return out;
}

// Conventional RREF shape check, independent of the production reduction.
inline bool is_conventional_rref(const RationalMatrix& m) {
    std::int64_t last_pivot = -1;
    bool seen_zero_row = false;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::int64_t pivot = -1;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0) {
                pivot = static_cast<std::int64_t>(j);
                break;
            }
        if (pivot < 0) {
            seen_zero_row = true;
            continue;
        }
        if (seen_zero_row) return false;                       // zero rows must trail
        if (pivot <= last_pivot) return false;                 // pivots strictly right
        if (m.at(i, static_cast<std::size_t>(pivot)) != 1) return false;
        for (std::size_t ii = 0; ii < m.rows(); ++ii)
            if (ii != i && m.at(ii, static_cast<std::size_t>(pivot)) != 0) return false;
        last_pivot = pivot;
    }
    return true;
}

inline FamilySpec vinogradov(std::int64_t k) {
    FamilySpec f;
    f.kind = FamilyKind::Vinogradov;
    f.k = k;
    return f;
}

inline FamilySpec parsell(std::int64_t d, std::int64_t k) {
    FamilySpec f;
    f.kind = FamilyKind::Parsell;
    f.d = d;
    f.k = k;
    return f;
}

inline FamilySpec akc(std::int64_t d, std::int64_t l) {
    FamilySpec f;
    f.kind = FamilyKind::Akc;
    f.d = d;
    f.l = l;
    return f;
}

inline FamilySpec binary(std::int64_t k1, std::int64_t k2) {
    FamilySpec f;
    f.kind = FamilyKind::Binary;
    f.k1 = k1;
    f.k2 = k2;
    return f;
}

// The four example systems exercised throughout the suites.
inline std::vector<FamilySpec> example_families() {
    return {vinogradov(2), vinogradov(3), parsell(2, 2), akc(2, 1)};
}

}  // namespace tdi::test
