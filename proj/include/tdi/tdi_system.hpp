#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tdi/polynomial.hpp"
#include "tdi/rational_matrix.hpp"

namespace tdi {

// An ordered tuple of reduced homogeneous forms closed under translation, with
// cached dimension d, rank r, per-form degrees k_j, degree k = max k_j and
// weight K = sum k_j.
struct TdiSystem {
    std::size_t dimension = 0;
    std::vector<Polynomial> forms;
    std::vector<std::int64_t> degrees;
    std::int64_t degree = 0;  // k
    std::int64_t weight = 0;  // K

    std::size_t rank() const { return forms.size(); }
};

// Assignment of a differentiation direction to each of the r point slots.
struct SigmaMap {
    std::vector<std::size_t> direction;  // 1-based, values in 1..d

    std::size_t size() const { return direction.size(); }
    std::size_t operator()(std::size_t i) const { return direction[i - 1]; }  // 1-based
};

struct SigmaWitness {
    SigmaMap sigma;
    std::vector<std::vector<Rational>> points;  // r rows of dimension d
    Rational delta_value;                       // non-zero by construction
};

// All exponent vectors a with 1 <= |a| <= max_degree, ascending colex.
std::vector<MultiIndex> monomial_basis(std::size_t dimension, std::int64_t max_degree);

// Span-reduces a set of homogeneous positive-degree forms to the canonical
// representative: rows of the inverted RREF of their coefficient matrix,
// scaled to integer content-1 with positive leading coefficient, ordered by
// (degree, colex of leading monomial).
TdiSystem reduce_forms(std::size_t dimension, const std::vector<Polynomial>& spanning);

// Closes the seeds under all partial derivatives, discards the degree-0
// remnants, and reduces the rest.
TdiSystem generate_from_seeds(const std::vector<Polynomial>& seeds);

// Solves F(x + xi) = C F(x) + c0 exactly as a polynomial identity and checks
// that C is lower unitriangular. Throws NotTdiError when no decomposition
// exists.
struct TranslationDecomposition {
    RationalMatrix C;
    std::vector<Rational> c0;
};
TranslationDecomposition verify_translation_invariance(const TdiSystem& sys,
                                                       const std::vector<std::int64_t>& xi);

// Sets the coordinates outside `indices` (1-based, strictly increasing) to
// zero and re-reduces; the result lives in dimension |indices|.
TdiSystem orthogonal_projection(const TdiSystem& sys, const std::vector<std::size_t>& indices);

// Jacobian determinant det( d_{sigma(i)} F_j (x_i) ), row i = point i.
Rational jacobian_delta(const TdiSystem& sys, const SigmaMap& sigma,
                        const std::vector<std::vector<Rational>>& points);

// Derives sigma from the colex-leading monomials of the inverted-RREF
// representative and certifies it with a grid-searched point set where the
// Jacobian does not vanish.
SigmaWitness find_sigma(const TdiSystem& sys);

// Coefficient matrix of the forms over monomial_basis(d, k); rank r exactly
// when the system is reduced.
RationalMatrix coefficient_matrix(const TdiSystem& sys);

}  // namespace tdi
