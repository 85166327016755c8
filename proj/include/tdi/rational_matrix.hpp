#pragma once

#include <cstddef>
#include <vector>

#include "tdi/rational.hpp"

namespace tdi {

// Dense matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {
        if (rows == 0 || cols == 0) throw DimensionError("RationalMatrix: empty shape");
    }

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    bool operator==(const RationalMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    RationalMatrix operator*(const RationalMatrix& o) const;

    // Flips row order and column order.
    RationalMatrix reversed() const;

    // Conventional reduced row-echelon form: columns scanned left to right, the
    // pivot is the first remaining row with a non-zero entry in the current
    // column; pivots normalized to 1 and their columns cleared.
    RationalMatrix rref() const;

    // Row reduction with pivots chosen from the highest colex column downward:
    // reversing rows and columns of the output yields a conventional RREF.
    RationalMatrix rref_inverted() const;

    std::size_t rank() const;

    Rational determinant() const;

    // Solves A x = b exactly; returns false when the system is inconsistent.
    // Free variables (rank-deficient A) are set to zero.
    bool solve(const std::vector<Rational>& b, std::vector<Rational>& x) const;

private:
    std::size_t rows_, cols_;
    std::vector<Rational> data_;
};

}  // namespace tdi
