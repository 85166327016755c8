#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "tdi/errors.hpp"

namespace tdi {

enum class Ordering { Less, Equal, Greater };

// Exponent vector of a monomial; doubles as the key type for sparse polynomials.
struct MultiIndex {
    std::vector<std::int32_t> e;

    MultiIndex() = default;
    explicit MultiIndex(std::size_t dim) : e(dim, 0) {}
    MultiIndex(std::initializer_list<std::int32_t> init) : e(init) {}

    std::size_t dimension() const { return e.size(); }
    std::int32_t operator[](std::size_t i) const { return e[i]; }
    std::int32_t& operator[](std::size_t i) { return e[i]; }

    std::int64_t total_degree() const {
        return std::accumulate(e.begin(), e.end(), std::int64_t{0});
    }

    bool operator==(const MultiIndex& o) const { return e == o.e; }
    bool operator!=(const MultiIndex& o) const { return e != o.e; }
};

// Compares from the last coordinate backward: a precedes b when a_i < b_i at the
// highest differing position.
inline Ordering colex_compare(const MultiIndex& a, const MultiIndex& b) {
    if (a.dimension() != b.dimension())
        throw DimensionError("colex_compare: length mismatch");
    for (std::size_t j = a.dimension(); j-- > 0;) {
        if (a.e[j] != b.e[j]) return a.e[j] < b.e[j] ? Ordering::Less : Ordering::Greater;
    }
    return Ordering::Equal;
}

struct ColexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        return colex_compare(a, b) == Ordering::Less;
    }
};

inline std::string to_string(const MultiIndex& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        if (i) s += ",";
        s += std::to_string(a.e[i]);
    }
    return s + ")";
}

}  // namespace tdi
