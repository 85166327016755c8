#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tdi/rational.hpp"

namespace tdi {

enum class HPolicy { Zero, Max, Custom };

// Parameters of the level-lowering iteration with s = r k blocks.
struct IterationParams {
    std::int64_t r = 2;
    std::int64_t k = 2;
    std::int64_t N = 1;
    HPolicy policy = HPolicy::Zero;
    std::vector<BigInt> custom_h;  // length N when policy == Custom

    std::int64_t s() const { return r * k; }
};

struct IterationStep {
    BigInt a, b, h;  // h is the choice made AT this step (last step's h unused)
    Rational psi, c, gamma;
};

// Dissection exponent N^{-1/2} (r/s)^{N+2}, held symbolically: the square
// root keeps it irrational so comparisons square both sides.
struct ThetaValue {
    BigInt N;
    Rational base;       // r/s
    std::int64_t expo;   // N + 2
    double value() const;
};

struct IterationTrace {
    IterationParams params;
    std::vector<IterationStep> steps;  // indices 0..N
    ThetaValue theta;
};

// Runs the recurrences a' = b, b' = k b + h, psi' = (s/r) psi + (s/r - 1) b,
// c' = (s/r)(c + 1), gamma' = (s/r) gamma + (2s - r + 1) h from
// a=0, b=1, psi=0, c=1, gamma=0, with h supplied by the policy.
IterationTrace run_iteration(const IterationParams& params);

struct ClosedFormReport {
    bool gamma_identity_ok = true;   // gamma_n == (2s-r+1)(b_n - (s/r)^n), must never fail
    bool c_bound_ok = true;          // c_n <= 3 (s/r)^n
    bool b_bound_ok = true;          // b_n^2 < N (s/r)^{2n}; may fail for adversarial policies
    bool psi_bound_ok = true;        // psi_n >= n(k-1)k^{n-1}
    std::vector<std::string> violations;
};

ClosedFormReport verify_closed_forms(const IterationTrace& trace);

// Final deficiency bound r k^4 / sqrt(N), exact when N is a perfect square;
// monotonicity comparisons square both sides.
struct EtaBound {
    BigInt numerator;  // r k^4
    BigInt N;

    bool is_exact() const;       // N a perfect square
    Rational exact_value() const;  // valid when is_exact()
    Rational squared() const;      // (r k^4)^2 / N, always exact
    double value() const;
};

EtaBound eta_bound(std::int64_t r, std::int64_t k, std::int64_t N);

}  // namespace tdi
