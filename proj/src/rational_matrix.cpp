#include "tdi/rational_matrix.hpp"

namespace tdi {

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_) throw DimensionError("matrix multiply: shape mismatch");
    RationalMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) out.at(i, j) += a * o.at(k, j);
        }
    return out;
}

RationalMatrix RationalMatrix::reversed() const {
    RationalMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out.at(i, j) = at(rows_ - 1 - i, cols_ - 1 - j);
    return out;
}

RationalMatrix RationalMatrix::rref() const {
    RationalMatrix m = *this;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols_ && pivot_row < rows_; ++col) {
        std::size_t sel = pivot_row;
        while (sel < rows_ && m.at(sel, col) == 0) ++sel;
        if (sel == rows_) continue;
        if (sel != pivot_row)
            for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(sel, j), m.at(pivot_row, j));
        Rational inv = 1 / m.at(pivot_row, col);
        for (std::size_t j = col; j < cols_; ++j) m.at(pivot_row, j) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == pivot_row) continue;
            Rational f = m.at(i, col);
            if (f == 0) continue;
            for (std::size_t j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(pivot_row, j);
        }
        ++pivot_row;
    }
    return m;
}

RationalMatrix RationalMatrix::rref_inverted() const { return reversed().rref().reversed(); }

std::size_t RationalMatrix::rank() const {
    RationalMatrix r = rref();
    std::size_t rank = 0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (r.at(i, j) != 0) {
                ++rank;
                break;
            }
    return rank;
}

Rational RationalMatrix::determinant() const {
    if (rows_ != cols_) throw DimensionError("determinant: matrix not square");
    RationalMatrix m = *this;
    Rational det(1);
    for (std::size_t col = 0; col < cols_; ++col) {
        std::size_t sel = col;
        while (sel < rows_ && m.at(sel, col) == 0) ++sel;
        if (sel == rows_) return Rational(0);
        if (sel != col) {
            for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(sel, j), m.at(col, j));
            det = -det;
        }
        det *= m.at(col, col);
        Rational inv = 1 / m.at(col, col);
        for (std::size_t i = col + 1; i < rows_; ++i) {
            Rational f = m.at(i, col) * inv;
            if (f == 0) continue;
            for (std::size_t j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return det;
}

bool RationalMatrix::solve(const std::vector<Rational>& b, std::vector<Rational>& x) const {
    if (b.size() != rows_) throw DimensionError("solve: rhs length != rows");
    RationalMatrix aug(rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_) = b[i];
    }
    RationalMatrix r = aug.rref();
    x.assign(cols_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) {
        std::size_t lead = cols_ + 1;
        for (std::size_t j = 0; j <= cols_; ++j)
            if (r.at(i, j) != 0) {
                lead = j;
                break;
            }
        if (lead == cols_ + 1) continue;   // zero row
        if (lead == cols_) return false;   // 0 = nonzero
        x[lead] = r.at(i, cols_);
    }
    return true;
}

}  // namespace tdi
