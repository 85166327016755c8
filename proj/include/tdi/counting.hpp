#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdi/count_table.hpp"
#include "tdi/tdi_system.hpp"

namespace tdi {

enum class ConvStrategy {
    Auto,        // sequential when the final value box is dense-indexable, else doubling
    Doubling,    // dist(2s) = dist(s) * dist(s), dist(s+1) = dist(s) * dist(1)
    Sequential,  // s-1 convolutions with dist(1)
};

enum class BoxKind { Positive, Symmetric };

struct CountOptions {
    ConvStrategy strategy = ConvStrategy::Auto;
    ConvolveBudget budget;
    std::uint64_t base_points = std::uint64_t{1} << 22;  // lattice points tabulated for dist(1)
    int threads = 0;
};

// Distribution of sum_{i=1..s} F(x_i) over 1 <= x_i <= X. Total mass is X^{sd}.
CountTable value_distribution(const TdiSystem& sys, int s, std::int64_t X,
                              const CountOptions& options = {});

// Number of solutions of sum F(x_i) = sum F(y_i), 1 <= x, y <= X, via the
// squared-multiplicity identity.
BigInt count_Js(const TdiSystem& sys, int s, std::int64_t X, const CountOptions& options = {});

// Ground-truth oracle by direct tuple enumeration; refuses when X^{2sd}
// exceeds the budget.
BigInt count_Js_bruteforce(const TdiSystem& sys, int s, std::int64_t X,
                           std::uint64_t budget = 1'000'000'000);

// Solutions of sum_j c_{ij} F_i(x_j) = 0 with blocks x_j in the positive box
// 1..X or the symmetric box |x| <= X. coeffs is r x s with non-zero entries.
BigInt count_Ns_general(const TdiSystem& sys, const std::vector<std::vector<std::int64_t>>& coeffs,
                        std::int64_t X, BoxKind box, const CountOptions& options = {});

// r x s matrix with column j constant equal to c_per_block[j].
std::vector<std::vector<std::int64_t>> uniform_block_coeffs(
    std::size_t rank, const std::vector<std::int64_t>& c_per_block);

struct BoundTerm {
    std::string label;
    BigInt value;
    bool certified;  // certified terms satisfy count_Js >= value unconditionally
};

// Lower-bound witnesses: the diagonal count X^{sd}, the mean-square term
// X^{2sd-K} (reported, not certified: its constant is implicit), and
// X^{d-delta} * J_s(projection) for every orthogonal projection.
std::vector<BoundTerm> lower_bound_terms(const TdiSystem& sys, int s, std::int64_t X,
                                         const CountOptions& options = {});

struct FitResult {
    double slope = 0;
    double intercept = 0;
    double residual = 0;
    std::vector<std::pair<std::int64_t, BigInt>> samples;
};

// Least-squares slope of log(count) against log(X).
FitResult fit_exponent(const std::vector<std::pair<std::int64_t, BigInt>>& samples);

// Cardinality of the set of t-tuples from [1..A]^d all of whose r-sub-tuples
// (distinct indices, every arrangement) have vanishing Jacobian, over the
// rationals or modulo a prime.
BigInt count_singular_tuples(const TdiSystem& sys, const SigmaMap& sigma, int t, std::int64_t A,
                             std::optional<std::int64_t> prime = std::nullopt,
                             std::uint64_t budget = 100'000'000);

struct SolutionClass {
    bool diagonal = false;
    bool projected = false;
    bool subset_sum = false;
    bool generic = false;
    std::vector<std::vector<std::size_t>> partition;  // witness parts (1-based indices)
};

// Classifies a solution of sum_j c_j F(y_j) = 0. Throws InputError when the
// points do not satisfy the system, or when s > 12 (partition search bound).
SolutionClass classify_solution(const std::vector<std::vector<std::int64_t>>& points,
                                const TdiSystem& sys, const std::vector<std::int64_t>& c);

}  // namespace tdi
