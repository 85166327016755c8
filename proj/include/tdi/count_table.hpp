#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tdi/dist.hpp"
#include "tdi/rational.hpp"

namespace tdi {

// Finite map from integer value vectors to exact multiplicities, sorted by
// ascending lexicographic order of the vectors. Zero multiplicities are never
// stored. Multiplicities are held in 64-bit words; the construction path
// verifies that the total mass fits, which bounds every entry, and the
// accessors expose them as big integers.
class CountTable {
public:
    CountTable(std::size_t rank, std::vector<std::int64_t> values_flat,
               std::vector<std::uint64_t> counts);

    static CountTable from_dist(const Dist& d);

    std::size_t rank() const { return rank_; }
    std::size_t size() const { return counts_.size(); }

    std::span<const std::int64_t> value(std::size_t i) const {
        return {values_.data() + i * rank_, rank_};
    }
    std::uint64_t count_u64(std::size_t i) const { return counts_[i]; }
    BigInt count(std::size_t i) const { return bigint_from_u64(counts_[i]); }

    BigInt total_mass() const;
    std::optional<std::size_t> find(std::span<const std::int64_t> v) const;
    BigInt multiplicity(std::span<const std::int64_t> v) const;

    // Sum of squared multiplicities: the solution count of the paired system.
    BigInt sum_of_squares() const;

    std::size_t max_count_index() const;

    // One line per entry: "v1,...,vr,count", ascending.
    std::string dump() const;

    bool operator==(const CountTable& o) const {
        return rank_ == o.rank_ && values_ == o.values_ && counts_ == o.counts_;
    }

private:
    std::size_t rank_;
    std::vector<std::int64_t> values_;  // row-major, stride rank_
    std::vector<std::uint64_t> counts_;
};

}  // namespace tdi
