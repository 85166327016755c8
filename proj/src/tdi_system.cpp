#include "tdi/tdi_system.hpp"

#include <algorithm>
#include <set>

namespace tdi {

std::vector<MultiIndex> monomial_basis(std::size_t dimension, std::int64_t max_degree) {
    std::vector<MultiIndex> out;
    MultiIndex a(dimension);
    // Odometer over exponent vectors with entries summing to at most max_degree.
    while (true) {
        if (a.total_degree() >= 1) out.push_back(a);
        std::size_t i = 0;
        while (i < dimension) {
            a[i] += 1;
            if (a.total_degree() <= max_degree) break;
            a[i] = 0;
            ++i;
        }
        if (i == dimension) break;
    }
    std::sort(out.begin(), out.end(),
              [](const MultiIndex& x, const MultiIndex& y) { return ColexLess{}(x, y); });
    return out;
}

namespace {

RationalMatrix forms_to_matrix(const std::vector<Polynomial>& forms,
                               const std::vector<MultiIndex>& basis) {
    RationalMatrix m(forms.size(), basis.size());
    for (std::size_t i = 0; i < forms.size(); ++i) {
        for (const auto& [a, c] : forms[i].terms()) {
            auto it = std::lower_bound(basis.begin(), basis.end(), a,
                                       [](const MultiIndex& x, const MultiIndex& y) {
                                           return ColexLess{}(x, y);
                                       });
            if (it == basis.end() || !(*it == a))
                throw DomainError("forms_to_matrix: monomial outside basis");
            m.at(i, static_cast<std::size_t>(it - basis.begin())) = c;
        }
    }
    return m;
}

Polynomial row_to_form(const RationalMatrix& m, std::size_t row,
                       const std::vector<MultiIndex>& basis, std::size_t dimension) {
    Polynomial p(dimension);
    for (std::size_t j = 0; j < basis.size(); ++j)
        if (m.at(row, j) != 0) p.add_term(basis[j], m.at(row, j));
    return p;
}

void finalize_stats(TdiSystem& sys) {
    sys.degrees.clear();
    sys.degree = 0;
    sys.weight = 0;
    for (const auto& f : sys.forms) {
        std::int64_t kj = f.degree();
        sys.degrees.push_back(kj);
        sys.degree = std::max(sys.degree, kj);
        sys.weight += kj;
    }
}

}  // namespace

TdiSystem reduce_forms(std::size_t dimension, const std::vector<Polynomial>& spanning) {
    if (spanning.empty()) throw InputError("reduce_forms: no forms");
    std::int64_t max_deg = 0;
    for (const auto& f : spanning) {
        if (f.dimension() != dimension) throw DimensionError("reduce_forms: dimension mismatch");
        if (f.is_zero() || !f.is_homogeneous() || f.degree() < 1)
            throw InputError("reduce_forms: forms must be homogeneous of positive degree");
        max_deg = std::max(max_deg, f.degree());
    }
    std::vector<MultiIndex> basis = monomial_basis(dimension, max_deg);
    RationalMatrix reduced = forms_to_matrix(spanning, basis).rref_inverted();

    std::vector<Polynomial> forms;
    for (std::size_t i = 0; i < reduced.rows(); ++i) {
        Polynomial g = row_to_form(reduced, i, basis, dimension);
        if (g.is_zero()) continue;
        // The span is graded (every input form is homogeneous), so reduced
        // rows must come out homogeneous again.
        if (!g.is_homogeneous() || g.degree() < 1)
            throw CertificationError("reduce_forms: reduction left a non-homogeneous row");
        forms.push_back(g.primitive_integer_form());
    }
    if (forms.empty()) throw InputError("reduce_forms: span is trivial");

    // Inverted RREF orders rows by colex of leading monomial; refine to the
    // canonical (degree, leading colex) order.
    std::stable_sort(forms.begin(), forms.end(), [](const Polynomial& a, const Polynomial& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return ColexLess{}(a.leading_monomial(), b.leading_monomial());
    });

    TdiSystem sys;
    sys.dimension = dimension;
    sys.forms = std::move(forms);
    finalize_stats(sys);
    return sys;
}

TdiSystem generate_from_seeds(const std::vector<Polynomial>& seeds) {
    if (seeds.empty()) throw InputError("generate_from_seeds: no seeds");
    std::size_t dimension = seeds.front().dimension();
    for (const auto& s : seeds) {
        if (s.dimension() != dimension)
            throw DimensionError("generate_from_seeds: seeds in different dimensions");
        if (s.is_zero() || !s.is_homogeneous() || s.degree() < 1)
            throw InputError("generate_from_seeds: seeds must be homogeneous of positive degree");
    }

    // Closure under single partial derivatives. Scale is irrelevant for the
    // span, so dedup on the primitive form; this keeps the worklist linear in
    // the number of distinct derivative directions.
    std::vector<Polynomial> closure;
    std::set<std::string> seen;
    std::vector<Polynomial> work = seeds;
    while (!work.empty()) {
        Polynomial p = std::move(work.back());
        work.pop_back();
        if (p.is_zero() || p.degree() < 1) continue;
        Polynomial primitive = p.primitive_integer_form();
        if (!seen.insert(primitive.to_string()).second) continue;
        closure.push_back(primitive);
        for (std::size_t axis = 1; axis <= dimension; ++axis)
            work.push_back(primitive.partial_derivative(axis));
    }
    if (closure.empty()) throw InputError("generate_from_seeds: derivative span is trivial");

    TdiSystem sys = reduce_forms(dimension, closure);

    // Construction self-check: the result must decompose under a translation.
    verify_translation_invariance(sys, std::vector<std::int64_t>(dimension, 1));
    return sys;
}

TranslationDecomposition verify_translation_invariance(const TdiSystem& sys,
                                                       const std::vector<std::int64_t>& xi) {
    std::size_t d = sys.dimension, r = sys.rank();
    if (xi.size() != d) throw DimensionError("verify_translation_invariance: xi length != d");

    std::vector<Rational> shift(xi.begin(), xi.end());
    std::vector<MultiIndex> basis = monomial_basis(d, sys.degree);
    const std::size_t ncols = r + 1;  // constant column + one per form

    // Columns: [1, F_1, ..., F_r] over {constant} + basis monomials.
    RationalMatrix lhs(basis.size() + 1, ncols);
    lhs.at(0, 0) = 1;
    for (std::size_t j = 0; j < r; ++j)
        for (const auto& [a, c] : sys.forms[j].terms()) {
            auto it = std::lower_bound(
                basis.begin(), basis.end(), a,
                [](const MultiIndex& x, const MultiIndex& y) { return ColexLess{}(x, y); });
            lhs.at(1 + static_cast<std::size_t>(it - basis.begin()), 1 + j) = c;
        }

    RationalMatrix C(r, r);
    std::vector<Rational> c0(r);
    for (std::size_t j = 0; j < r; ++j) {
        Polynomial translated = sys.forms[j].translate(shift);
        std::vector<Rational> rhs(basis.size() + 1, Rational(0));
        for (const auto& [a, c] : translated.terms()) {
            if (a.total_degree() == 0) {
                rhs[0] = c;
                continue;
            }
            auto it = std::lower_bound(
                basis.begin(), basis.end(), a,
                [](const MultiIndex& x, const MultiIndex& y) { return ColexLess{}(x, y); });
            if (it == basis.end() || !(*it == a))
                throw NotTdiError("translated form leaves the monomial span");
            rhs[1 + static_cast<std::size_t>(it - basis.begin())] = c;
        }
        std::vector<Rational> coeffs;
        if (!lhs.solve(rhs, coeffs))
            throw NotTdiError("translated form is not a combination of the system plus constants");
        c0[j] = coeffs[0];
        for (std::size_t l = 0; l < r; ++l) C.at(j, l) = coeffs[1 + l];
    }

    for (std::size_t j = 0; j < r; ++j) {
        if (C.at(j, j) != 1) throw NotTdiError("translation matrix diagonal entry != 1");
        for (std::size_t l = j + 1; l < r; ++l)
            if (C.at(j, l) != 0) throw NotTdiError("translation matrix not lower triangular");
    }
    return TranslationDecomposition{std::move(C), std::move(c0)};
}

TdiSystem orthogonal_projection(const TdiSystem& sys, const std::vector<std::size_t>& indices) {
    std::size_t d = sys.dimension;
    if (indices.empty() || indices.size() >= d)
        throw InputError("orthogonal_projection: need 1 <= |indices| <= d-1");
    for (std::size_t l = 0; l < indices.size(); ++l) {
        if (indices[l] < 1 || indices[l] > d)
            throw InputError("orthogonal_projection: index out of range");
        if (l > 0 && indices[l] <= indices[l - 1])
            throw InputError("orthogonal_projection: indices must be strictly increasing");
    }

    std::size_t delta = indices.size();
    std::vector<Polynomial> projected;
    for (const auto& f : sys.forms) {
        Polynomial g(delta);
        for (const auto& [a, c] : f.terms()) {
            MultiIndex b(delta);
            bool survives = true;
            std::size_t l = 0;
            for (std::size_t m = 0; m < d && survives; ++m) {
                bool kept = l < delta && indices[l] == m + 1;
                if (kept) {
                    b[l++] = a[m];
                } else if (a[m] != 0) {
                    survives = false;
                }
            }
            if (survives) g.add_term(b, c);
        }
        if (!g.is_zero() && g.degree() >= 1) projected.push_back(g);
    }
    if (projected.empty())
        throw InputError("orthogonal_projection: projection is trivial");
    return reduce_forms(delta, projected);
}

Rational jacobian_delta(const TdiSystem& sys, const SigmaMap& sigma,
                        const std::vector<std::vector<Rational>>& points) {
    std::size_t r = sys.rank();
    if (sigma.size() != r) throw DimensionError("jacobian_delta: sigma size != rank");
    if (points.size() != r) throw DimensionError("jacobian_delta: need r points");
    for (const auto& p : points)
        if (p.size() != sys.dimension) throw DimensionError("jacobian_delta: point dimension");

    RationalMatrix m(r, r);
    for (std::size_t j = 0; j < r; ++j) {
        std::vector<Polynomial> partials;
        for (std::size_t axis = 1; axis <= sys.dimension; ++axis)
            partials.push_back(sys.forms[j].partial_derivative(axis));
        for (std::size_t i = 0; i < r; ++i)
            m.at(i, j) = partials[sigma(i + 1) - 1].evaluate(points[i]);
    }
    return m.determinant();
}

RationalMatrix coefficient_matrix(const TdiSystem& sys) {
    std::vector<MultiIndex> basis = monomial_basis(sys.dimension, sys.degree);
    return forms_to_matrix(sys.forms, basis);
}

SigmaWitness find_sigma(const TdiSystem& sys) {
    std::size_t d = sys.dimension, r = sys.rank();

    // Leading monomials of the inverted-RREF representative, ascending colex.
    std::vector<MultiIndex> basis = monomial_basis(d, sys.degree);
    RationalMatrix reduced = coefficient_matrix(sys).rref_inverted();
    std::vector<MultiIndex> leading;
    for (std::size_t i = 0; i < reduced.rows(); ++i) {
        for (std::size_t j = basis.size(); j-- > 0;) {
            if (reduced.at(i, j) != 0) {
                leading.push_back(basis[j]);
                break;
            }
        }
    }
    if (leading.size() != r) throw CertificationError("find_sigma: system is not reduced");

    SigmaMap sigma;
    for (const auto& b : leading) {
        std::size_t h = 0;
        while (h < d && b[h] == 0) ++h;
        if (h == d) throw CertificationError("find_sigma: constant leading monomial");
        sigma.direction.push_back(h + 1);
    }

    // Certify with the first grid point set where the Jacobian is non-zero,
    // doubling the grid bound up to 64.
    for (std::int64_t bound = 2; bound <= 64; bound *= 2) {
        std::vector<std::int64_t> odo(r * d, 1);
        while (true) {
            std::vector<std::vector<Rational>> points(r, std::vector<Rational>(d));
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t m = 0; m < d; ++m) points[i][m] = Rational(odo[i * d + m]);
            Rational delta = jacobian_delta(sys, sigma, points);
            if (delta != 0) return SigmaWitness{sigma, points, delta};
            std::size_t pos = 0;
            while (pos < odo.size()) {
                if (++odo[pos] <= bound) break;
                odo[pos] = 1;
                ++pos;
            }
            if (pos == odo.size()) break;
        }
    }
    throw CertificationError("find_sigma: witness search exhausted (grid bound 64)");
}

}  // namespace tdi
