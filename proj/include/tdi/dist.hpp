#pragma once

#include <cstdint>
#include <vector>

#include "tdi/rational.hpp"

namespace tdi {

// Sparse distribution of integer value vectors over an explicit bounding box.
//
// Support entries are stored as packed mixed-radix offsets into the box with
// the first component most significant, so ascending key order is ascending
// lexicographic order of the value vectors. Multiplicities are unsigned 64-bit
// words; callers guarantee the total mass fits (checked upstream), which
// bounds every cell.
struct Dist {
    std::size_t rank = 0;
    std::vector<std::int64_t> lo, hi;   // inclusive bounds per component
    std::vector<std::uint64_t> keys;    // sorted ascending, unique
    std::vector<std::uint64_t> counts;  // parallel to keys, all non-zero

    std::size_t size() const { return keys.size(); }
    unsigned __int128 volume() const;
    std::uint64_t mass() const;  // sum of counts; throws on 64-bit overflow

    std::vector<std::int64_t> strides() const;
    std::uint64_t pack(const std::vector<std::int64_t>& v) const;
    std::vector<std::int64_t> unpack(std::uint64_t key) const;
};

struct ConvolveBudget {
    std::uint64_t dense_cells = std::uint64_t{1} << 26;  // dense accumulator cells
    std::uint64_t pair_emits = std::uint64_t{1} << 24;   // sparse pair emissions
};

// Builds a distribution from raw value vectors (multiplicity 1 each; duplicates
// accumulate).
Dist make_dist(std::size_t rank, const std::vector<std::vector<std::int64_t>>& vectors);

// Exact sparse convolution: the distribution of u + v with u ~ a, v ~ b.
// Accumulates into a dense box when it fits the budget, otherwise emits and
// sorts key pairs; refuses with ResourceError when both budgets are exceeded.
// Output is identical for every thread count.
Dist convolve(const Dist& a, const Dist& b, const ConvolveBudget& budget = {}, int threads = 0);

}  // namespace tdi
