#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdi/multi_index.hpp"
#include "tdi/rational.hpp"

namespace tdi {

// Sparse multivariate polynomial with exact rational coefficients.
//
// Terms are stored in ascending colex order of their exponent vectors, so equal
// polynomials iterate and serialize identically. Zero coefficients are never
// stored; the zero polynomial is an empty term map with an explicit dimension.
class Polynomial {
public:
    using TermMap = std::map<MultiIndex, Rational, ColexLess>;

    explicit Polynomial(std::size_t dimension) : dim_(dimension) {
        if (dimension == 0) throw DimensionError("Polynomial: dimension must be positive");
    }

    static Polynomial zero(std::size_t dimension) { return Polynomial(dimension); }
    static Polynomial constant(std::size_t dimension, const Rational& c);
    // The monomial c * z^a.
    static Polynomial monomial(const MultiIndex& a, const Rational& c);
    // The single variable z_axis (1-based) in the given ambient dimension.
    static Polynomial variable(std::size_t dimension, std::size_t axis);

    std::size_t dimension() const { return dim_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // Largest total degree among terms; -1 for the zero polynomial.
    std::int64_t degree() const;
    bool is_homogeneous() const;
    // Colex-largest exponent vector with a non-zero coefficient.
    const MultiIndex& leading_monomial() const;
    Rational leading_coefficient() const;

    Rational coefficient(const MultiIndex& a) const;
    void set_coefficient(const MultiIndex& a, const Rational& c);
    void add_term(const MultiIndex& a, const Rational& c);

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    Polynomial& operator+=(const Polynomial& o);
    bool operator==(const Polynomial& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial pow(unsigned exp) const;

    // Formal derivative with respect to z_axis (1-based).
    Polynomial partial_derivative(std::size_t axis) const;
    // p(x + xi), expanded exactly.
    Polynomial translate(const std::vector<Rational>& xi) const;
    // p(lambda * x); requires lambda != 0.
    Polynomial dilate(const Rational& lambda) const;
    Rational evaluate(const std::vector<Rational>& point) const;
    std::int64_t evaluate_i64(const std::vector<std::int64_t>& point) const;
    // Value mod `modulus` in 0..modulus-1; requires integer coefficients.
    std::int64_t evaluate_mod(const std::vector<std::int64_t>& point, std::int64_t modulus) const;
    double evaluate_double(const std::vector<double>& point) const;

    // Multiplies by the unique positive rational making the coefficients integers
    // of content 1 with positive leading (colex) coefficient.
    Polynomial primitive_integer_form() const;

    // Text format: terms "p/q * z1^a1 z2^a2" joined by " + ", ascending colex;
    // zero exponents omitted, the constant term is bare "p/q". Round-trips
    // bit-exactly through parse().
    std::string to_string() const;
    static Polynomial parse(const std::string& text, std::size_t dimension);

private:
    std::size_t dim_;
    TermMap terms_;

    void check_key(const MultiIndex& a) const {
        if (a.dimension() != dim_) throw DimensionError("Polynomial: key length != dimension");
    }
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

}  // namespace tdi
