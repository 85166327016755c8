#pragma once

#include <cstdint>
#include <vector>

#include "tdi/tdi_system.hpp"

namespace tdi {

// One instance of the level-(a,b) congruence system: count z_1..z_r in
// (1..p^{kb})^d with z_i congruent to xi mod p^a, signed value sums hitting m_j
// mod p^{k_j b}, and Jacobian not divisible by p^{(K-r)a+1}.
//
// Residues follow the 1..modulus convention: xi in 1..p^a, eta in 1..p^b,
// m_j in 1..p^{k_j b}.
struct CongruenceInstance {
    const TdiSystem* system = nullptr;
    SigmaMap sigma;
    std::vector<int> signs;           // entries +1/-1, length r
    std::int64_t p = 2;
    int a = 0;
    int b = 1;
    std::vector<std::int64_t> m;      // length r
    std::vector<std::int64_t> xi;     // length d
    std::vector<std::int64_t> eta;    // length d
};

// Counts for every target m at once (fixed signs, xi, eta): counts[key] with
// key the mixed-radix index of (m_1-1, ..., m_r-1) over moduli p^{k_j b},
// first component most significant.
struct CongruenceHistogram {
    std::vector<std::int64_t> moduli;    // p^{k_j b} per component
    std::vector<std::uint64_t> counts;   // dense, size prod(moduli)
    std::uint64_t admissible_tuples = 0; // tuples passing the range + Jacobian conditions

    std::size_t index_of(const std::vector<std::int64_t>& m) const;
};

CongruenceHistogram count_congruence_histogram(const TdiSystem& sys, const SigmaMap& sigma,
                                      const std::vector<int>& signs, std::int64_t p, int a, int b,
                                      const std::vector<std::int64_t>& xi,
                                      const std::vector<std::int64_t>& eta,
                                      std::uint64_t budget = 100'000'000, int threads = 0);

// One enumeration pass covering every sign vector; entry `mask` uses sign
// -1 at position i exactly when bit i of mask is set.
std::vector<CongruenceHistogram> count_congruence_histogram_all_signs(
    const TdiSystem& sys, const SigmaMap& sigma, std::int64_t p, int a, int b,
    const std::vector<std::int64_t>& xi, const std::vector<std::int64_t>& eta,
    std::uint64_t budget = 100'000'000, int threads = 0);

BigInt count_congruence_set(const CongruenceInstance& inst, std::uint64_t budget = 100'000'000,
               int threads = 0);

// k_1 ... k_r  *  p^{(kb-a)rd - K(b-a)}.
BigInt congruence_count_bound(const TdiSystem& sys, std::int64_t p, int a, int b);

// Simultaneous congruences f_j = 0 mod prime^level in t variables with the
// Jacobian coprime to the prime.
struct HenselInstance {
    std::vector<Polynomial> polys;  // t polynomials in t variables
    std::int64_t prime = 2;
    int level = 1;
};

BigInt hensel_count(const HenselInstance& inst, std::uint64_t budget = 100'000'000);

// Checks Delta(t z_1 + xi, ..., t z_r + xi) == t^{K-r} Delta(z_1, ..., z_r)
// exactly at the given arguments.
bool verify_delta_scaling(const TdiSystem& sys, const SigmaMap& sigma, const Rational& t,
                          const std::vector<std::vector<Rational>>& points,
                          const std::vector<Rational>& xi);

}  // namespace tdi
