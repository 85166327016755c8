#include "tdi/count_table.hpp"

#include <algorithm>
#include <sstream>

#include "tdi/errors.hpp"

namespace tdi {

CountTable::CountTable(std::size_t rank, std::vector<std::int64_t> values_flat,
                       std::vector<std::uint64_t> counts)
    : rank_(rank), values_(std::move(values_flat)), counts_(std::move(counts)) {
    if (rank_ == 0) throw DimensionError("CountTable: rank must be positive");
    if (values_.size() != counts_.size() * rank_)
        throw DimensionError("CountTable: values/counts shape mismatch");
    for (std::size_t i = 1; i < counts_.size(); ++i) {
        auto prev = value(i - 1), cur = value(i);
        if (!std::lexicographical_compare(prev.begin(), prev.end(), cur.begin(), cur.end()))
            throw DomainError("CountTable: rows not strictly ascending");
    }
    for (std::uint64_t c : counts_)
        if (c == 0) throw DomainError("CountTable: zero multiplicity stored");
}

CountTable CountTable::from_dist(const Dist& d) {
    std::vector<std::int64_t> values;
    values.reserve(d.size() * d.rank);
    for (std::uint64_t key : d.keys) {
        std::vector<std::int64_t> v = d.unpack(key);
        values.insert(values.end(), v.begin(), v.end());
    }
    return CountTable(d.rank, std::move(values), d.counts);
}

BigInt CountTable::total_mass() const {
    unsigned __int128 acc = 0;
    BigInt total(0);
    for (std::uint64_t c : counts_) {
        if (acc > (static_cast<unsigned __int128>(1) << 120)) {
            total += bigint_from_i128(static_cast<__int128>(acc));
            acc = 0;
        }
        acc += c;
    }
    total += bigint_from_i128(static_cast<__int128>(acc));
    return total;
}

std::optional<std::size_t> CountTable::find(std::span<const std::int64_t> v) const {
    if (v.size() != rank_) throw DimensionError("CountTable::find: length mismatch");
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        auto row = value(mid);
        if (std::lexicographical_compare(row.begin(), row.end(), v.begin(), v.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < size()) {
        auto row = value(lo);
        if (std::equal(row.begin(), row.end(), v.begin(), v.end())) return lo;
    }
    return std::nullopt;
}

BigInt CountTable::multiplicity(std::span<const std::int64_t> v) const {
    auto idx = find(v);
    return idx ? count(*idx) : BigInt(0);
}

BigInt CountTable::sum_of_squares() const {
    unsigned __int128 acc = 0;
    BigInt total(0);
    for (std::uint64_t c : counts_) {
        // c^2 < 2^126; flushing below 2^120 keeps acc + c^2 < 2^127.
        if (acc > (static_cast<unsigned __int128>(1) << 120)) {
            total += bigint_from_i128(static_cast<__int128>(acc));
            acc = 0;
        }
        acc += static_cast<unsigned __int128>(c) * c;
    }
    total += bigint_from_i128(static_cast<__int128>(acc));
    return total;
}

std::size_t CountTable::max_count_index() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < counts_.size(); ++i)
        if (counts_[i] > counts_[best]) best = i;
    return best;
}

std::string CountTable::dump() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < size(); ++i) {
        auto v = value(i);
        for (std::size_t j = 0; j < rank_; ++j) os << v[j] << ",";
        os << counts_[i] << "\n";
    }
    return os.str();
}

}  // namespace tdi
