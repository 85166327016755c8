#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "tdi/tdi_system.hpp"

namespace tdi {

// Frequency vector paired with its system; components reduced mod 1.
struct FrequencyVector {
    std::vector<double> alpha;

    static FrequencyVector reduced(std::vector<double> raw);
};

// Rational approximation point: q >= 1 and gcd(q, a_1, ..., a_r) = 1.
struct RationalPoint {
    std::int64_t q = 1;
    std::vector<std::int64_t> a;

    static RationalPoint reduced(std::int64_t q, std::vector<std::int64_t> a);
};

struct ArcLabel {
    bool major = false;
    double theta = 0;
    RationalPoint witness;  // meaningful when major
};

// f(alpha; X; F) = sum over 1 <= x <= X of e(sum alpha_j F_j(x)).
// Block-partitioned compensated summation; output independent of thread count.
std::complex<double> eval_f(const TdiSystem& sys, const std::vector<double>& alpha,
                            std::int64_t X, std::uint64_t budget = 1'000'000'000,
                            int threads = 0);

// S(q, a) = sum over 1 <= x <= q of e((a . F(x)) / q) with exact rational
// phases reduced mod 1 before the trig call.
std::complex<double> complete_sum_S(const TdiSystem& sys, std::int64_t q,
                                    const std::vector<std::int64_t>& a,
                                    std::uint64_t budget = 100'000'000, int threads = 0);

// v(beta) = integral over [0,X]^d of e(beta . F(gamma)), by tensor-product
// midpoint quadrature with `grid` points per axis. v(0) returns X^d exactly.
std::complex<double> oscillatory_v(const TdiSystem& sys, const std::vector<double>& beta,
                                   double X, std::int64_t grid,
                                   std::uint64_t budget = 100'000'000, int threads = 0);

// V(alpha; q, a) = q^{-d} S(q, a) v(alpha - a/q).
std::complex<double> major_arc_V(const TdiSystem& sys, const std::vector<double>& alpha,
                                 const RationalPoint& rp, double X, std::int64_t grid,
                                 std::uint64_t budget = 100'000'000, int threads = 0);

// Searches q = 1..floor(X^theta) for a box |q alpha_i - a_i| <= X^{theta-k_i}
// with (q, a) = 1; returns the smallest qualifying q as witness.
ArcLabel classify_arc(const TdiSystem& sys, const std::vector<double>& alpha, std::int64_t X,
                      double theta);

struct ApproxCertificate {
    std::int64_t q = 0;
    std::vector<std::int64_t> a;
    std::vector<double> errors;  // |q alpha_i - a_i|
};

// Least q <= Y_budget with |q alpha_i - a_i| <= Y_budget * X^{-k_i} for all i,
// if any: continued-fraction convergents per coordinate, lcm combination, then
// exhaustive confirmation of minimality.
std::optional<ApproxCertificate> rational_approx_search(const TdiSystem& sys,
                                                        const std::vector<double>& alpha,
                                                        std::int64_t X, std::int64_t Y_budget);

struct SingularSeriesResult {
    double value = 0;
    double last_increment = 0;  // contribution of q = Q_max, a tail heuristic
    double max_imag = 0;        // largest |imaginary part| seen, sanity only
};

// Truncation at q <= Q_max of sum_q sum_{(q,a)=1} q^{-sd} prod_j S(q, c_j ∘ a).
SingularSeriesResult truncated_singular_series(const TdiSystem& sys,
                                               const std::vector<std::vector<std::int64_t>>& coeffs,
                                               std::int64_t Q_max,
                                               std::uint64_t budget = 100'000'000);

}  // namespace tdi
