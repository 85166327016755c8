#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "tdi/congruence.hpp"
#include "tdi/tdi_system.hpp"

namespace tdi::ref {

// Straightforward single-threaded implementations, kept as oracles for the
// OpenMP kernels and as the baseline side of the benchmark target. They use
// plain ordered maps and direct definitions rather than the packed-key /
// substitution machinery of the production paths.

using ValueMap = std::map<std::vector<std::int64_t>, BigInt>;

ValueMap convolve(const ValueMap& a, const ValueMap& b);

// Distribution of sum_{i<=s} F(x_i), 1 <= x_i <= X, by repeated naive
// convolution.
ValueMap distribution(const TdiSystem& sys, int s, std::int64_t X);

// Plain serial sum with long double accumulators.
std::complex<double> eval_f(const TdiSystem& sys, const std::vector<double>& alpha,
                            std::int64_t X);

// Counts solutions of the congruence system directly from its definition:
// z ranges over 1..p^{kb} with the congruence-class, target and Jacobian
// conditions tested verbatim (no substitution shrink, no value tables).
BigInt congruence_count_by_definition(const CongruenceInstance& inst, std::uint64_t budget = 100'000'000);

}  // namespace tdi::ref
