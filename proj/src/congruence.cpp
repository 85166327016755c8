#include "tdi/congruence.hpp"

#include <omp.h>

#include <algorithm>

namespace tdi {

namespace {

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

// det over Z via fraction-free elimination, reduced mod `modulus`.
std::int64_t det_mod(std::vector<__int128> m, std::size_t n, std::int64_t modulus) {
    __int128 prev = 1;
    int sign = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && m[sel * n + col] == 0) ++sel;
        if (sel == n) return 0;
        if (sel != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m[sel * n + j], m[col * n + j]);
            sign = -sign;
        }
        for (std::size_t i = col + 1; i < n; ++i) {
            for (std::size_t j = col + 1; j < n; ++j)
                m[i * n + j] =
                    (m[i * n + j] * m[col * n + col] - m[i * n + col] * m[col * n + j]) / prev;
            m[i * n + col] = 0;
        }
        prev = m[col * n + col];
    }
    __int128 det = sign * m[(n - 1) * n + (n - 1)];
    std::int64_t out = static_cast<std::int64_t>(det % modulus);
    return out < 0 ? out + modulus : out;
}

void validate_congruence_args(const TdiSystem& sys, const SigmaMap& sigma,
                              const std::vector<int>& signs, std::int64_t p, int a, int b,
                              const std::vector<std::int64_t>& xi,
                              const std::vector<std::int64_t>& eta) {
    if (p < 2) throw DomainError("congruence: p must be at least 2");
    if (!(b > a && a >= 0)) throw InputError("congruence: need b > a >= 0");
    if (sigma.size() != sys.rank()) throw DimensionError("congruence: sigma size != rank");
    if (signs.size() != sys.rank()) throw DimensionError("congruence: signs length != rank");
    for (int s : signs)
        if (s != 1 && s != -1) throw InputError("congruence: signs must be +1 or -1");
    if (xi.size() != sys.dimension || eta.size() != sys.dimension)
        throw DimensionError("congruence: xi/eta length != dimension");
}

}  // namespace

std::size_t CongruenceHistogram::index_of(const std::vector<std::int64_t>& m) const {
    if (m.size() != moduli.size()) throw DimensionError("CongruenceHistogram: m length");
    std::size_t idx = 0;
    for (std::size_t j = 0; j < moduli.size(); ++j) {
        if (m[j] < 1 || m[j] > moduli[j])
            throw InputError("CongruenceHistogram: residue outside 1..modulus");
        idx = idx * static_cast<std::size_t>(moduli[j]) + static_cast<std::size_t>(m[j] - 1);
    }
    return idx;
}

namespace {

// Core enumeration shared by the single-sign and all-signs entry points: one
// pass over the r-tuples of grid cells, binning into one histogram per
// requested sign mask (bit i set = sign -1 at position i).
std::vector<CongruenceHistogram> histogram_core(const TdiSystem& sys, const SigmaMap& sigma,
                                                const std::vector<std::uint32_t>& masks,
                                                std::int64_t p, int a, int b,
                                                const std::vector<std::int64_t>& xi,
                                                const std::vector<std::int64_t>& eta,
                                                std::uint64_t budget, int threads) {
    const std::size_t d = sys.dimension;
    const std::size_t r = sys.rank();
    const std::int64_t k = sys.degree;
    const std::int64_t K = sys.weight;

    std::vector<std::int64_t> moduli(r);
    std::size_t hist_size = 1;
    for (std::size_t j = 0; j < r; ++j) {
        moduli[j] = ipow_checked(p, static_cast<unsigned>(sys.degrees[j] * b), "count_congruence_set moduli");
        unsigned __int128 next = static_cast<unsigned __int128>(hist_size) *
                                 static_cast<unsigned __int128>(moduli[j]);
        if (next > (std::uint64_t{1} << 22))
            throw BudgetError("count_congruence_histogram: target space too large");
        hist_size = static_cast<std::size_t>(next);
    }

    // Substitute z = xi + p^a (y-1): the range condition 1 <= z <= p^{kb}
    // together with z == xi mod p^a becomes y in 1..p^{kb-a} per coordinate.
    const std::int64_t grid_side = ipow_checked(p, static_cast<unsigned>(k * b - a), "count_congruence_set grid");
    unsigned __int128 tuple_count = 1;
    for (std::size_t i = 0; i < r * d; ++i) {
        tuple_count *= static_cast<unsigned __int128>(grid_side);
        if (tuple_count > budget)
            throw BudgetError("count_congruence_histogram: p^{(kb-a)rd} exceeds enumeration budget");
    }

    const std::int64_t pa = ipow_checked(p, static_cast<unsigned>(a), "count_congruence_set p^a");
    const std::int64_t delta_mod =
        ipow_checked(p, static_cast<unsigned>((K - r) * a + 1), "count_congruence_set delta modulus");

    // Per grid point g (a d-tuple of z coordinates): the residues of
    // F_j(z - eta) and of the directional partials entering the Jacobian.
    unsigned __int128 cells128 = 1;
    for (std::size_t m = 0; m < d; ++m) cells128 *= static_cast<unsigned __int128>(grid_side);
    if (cells128 > budget) throw BudgetError("count_congruence_histogram: grid exceeds budget");
    const std::size_t cells = static_cast<std::size_t>(cells128);

    std::vector<std::int64_t> values(cells * r);         // F_j(z - eta) mod p^{k_j b}
    std::vector<std::int64_t> partials(cells * d * r);   // d_l F_j(z) mod delta_mod
    {
        std::vector<std::vector<Polynomial>> ders(r);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t l = 1; l <= d; ++l)
                ders[j].push_back(sys.forms[j].partial_derivative(l));
        std::vector<std::int64_t> y(d, 1);
        for (std::size_t cell = 0; cell < cells; ++cell) {
            std::vector<std::int64_t> z(d), zm(d);
            for (std::size_t mcoord = 0; mcoord < d; ++mcoord) {
                z[mcoord] = xi[mcoord] + pa * (y[mcoord] - 1);
                zm[mcoord] = z[mcoord] - eta[mcoord];
            }
            for (std::size_t j = 0; j < r; ++j)
                values[cell * r + j] = sys.forms[j].evaluate_mod(zm, moduli[j]);
            for (std::size_t l = 0; l < d; ++l)
                for (std::size_t j = 0; j < r; ++j)
                    partials[(cell * d + l) * r + j] = ders[j][l].evaluate_mod(z, delta_mod);
            std::size_t i = 0;
            while (i < d) {
                if (++y[i] <= grid_side) break;
                y[i] = 1;
                ++i;
            }
        }
    }

    // Enumerate r-tuples of grid cells; the outermost point's cell index is
    // the parallel loop variable, and per-thread partial histograms merge in
    // fixed order (integer sums, so totals are thread-count independent).
    const int nthreads = resolve_threads(threads);
    const std::size_t nmasks = masks.size();
    std::vector<std::vector<std::uint64_t>> partial_hist(
        nthreads, std::vector<std::uint64_t>(nmasks * hist_size, 0));
    std::vector<std::uint64_t> partial_adm(nthreads, 0);

#pragma omp parallel for schedule(static) num_threads(nthreads)
    for (std::int64_t outer = 0; outer < static_cast<std::int64_t>(cells); ++outer) {
        const int tid = omp_get_thread_num();
        std::vector<std::uint64_t>& local = partial_hist[tid];
        std::vector<std::size_t> cell_idx(r, 0);
        cell_idx[r - 1] = static_cast<std::size_t>(outer);
        std::vector<__int128> jac(r * r);
        while (true) {
            // Jacobian row i draws direction sigma(i) at point i.
            for (std::size_t i = 0; i < r; ++i) {
                const std::int64_t* row = &partials[(cell_idx[i] * d + (sigma(i + 1) - 1)) * r];
                for (std::size_t j = 0; j < r; ++j) jac[i * r + j] = row[j];
            }
            if (det_mod(jac, r, delta_mod) != 0) {
                ++partial_adm[tid];
                for (std::size_t mi = 0; mi < nmasks; ++mi) {
                    const std::uint32_t mask = masks[mi];
                    std::size_t key = 0;
                    for (std::size_t j = 0; j < r; ++j) {
                        std::int64_t sum = 0;
                        for (std::size_t i = 0; i < r; ++i) {
                            std::int64_t v = values[cell_idx[i] * r + j];
                            sum += (mask >> i) & 1 ? -v : v;
                        }
                        sum %= moduli[j];
                        if (sum < 0) sum += moduli[j];
                        // Residue classes are keyed 1..modulus; 0 means modulus.
                        std::int64_t residue = sum == 0 ? moduli[j] : sum;
                        key = key * static_cast<std::size_t>(moduli[j]) +
                              static_cast<std::size_t>(residue - 1);
                    }
                    ++local[mi * hist_size + key];
                }
            }
            std::size_t i = 0;
            while (i < r - 1) {
                if (++cell_idx[i] < cells) break;
                cell_idx[i] = 0;
                ++i;
            }
            if (i == r - 1) break;
        }
    }

    std::vector<CongruenceHistogram> out(nmasks);
    for (std::size_t mi = 0; mi < nmasks; ++mi) {
        out[mi].moduli = moduli;
        out[mi].counts.assign(hist_size, 0);
    }
    for (int t = 0; t < nthreads; ++t) {
        for (std::size_t mi = 0; mi < nmasks; ++mi) {
            out[mi].admissible_tuples += partial_adm[t];
            for (std::size_t i = 0; i < hist_size; ++i)
                out[mi].counts[i] += partial_hist[t][mi * hist_size + i];
        }
    }
    return out;
}

}  // namespace

CongruenceHistogram count_congruence_histogram(const TdiSystem& sys, const SigmaMap& sigma,
                                      const std::vector<int>& signs, std::int64_t p, int a, int b,
                                      const std::vector<std::int64_t>& xi,
                                      const std::vector<std::int64_t>& eta, std::uint64_t budget,
                                      int threads) {
    validate_congruence_args(sys, sigma, signs, p, a, b, xi, eta);
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < signs.size(); ++i)
        if (signs[i] < 0) mask |= std::uint32_t{1} << i;
    return std::move(
        histogram_core(sys, sigma, {mask}, p, a, b, xi, eta, budget, threads).front());
}

std::vector<CongruenceHistogram> count_congruence_histogram_all_signs(
    const TdiSystem& sys, const SigmaMap& sigma, std::int64_t p, int a, int b,
    const std::vector<std::int64_t>& xi, const std::vector<std::int64_t>& eta,
    std::uint64_t budget, int threads) {
    std::vector<int> all_plus(sys.rank(), 1);
    validate_congruence_args(sys, sigma, all_plus, p, a, b, xi, eta);
    std::vector<std::uint32_t> masks;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << sys.rank()); ++mask)
        masks.push_back(mask);
    return histogram_core(sys, sigma, masks, p, a, b, xi, eta, budget, threads);
}

BigInt count_congruence_set(const CongruenceInstance& inst, std::uint64_t budget, int threads) {
    if (!inst.system) throw InputError("count_congruence_set: missing system");
    CongruenceHistogram hist =
        count_congruence_histogram(*inst.system, inst.sigma, inst.signs, inst.p, inst.a, inst.b, inst.xi,
                          inst.eta, budget, threads);
    return bigint_from_u64(hist.counts[hist.index_of(inst.m)]);
}

BigInt congruence_count_bound(const TdiSystem& sys, std::int64_t p, int a, int b) {
    if (p < 2) throw DomainError("congruence_count_bound: p must be at least 2");
    if (!(b > a && a >= 0)) throw InputError("congruence_count_bound: need b > a >= 0");
    BigInt coeff(1);
    for (std::int64_t kj : sys.degrees) coeff *= kj;
    std::int64_t exponent = (sys.degree * b - a) * static_cast<std::int64_t>(sys.rank()) *
                                static_cast<std::int64_t>(sys.dimension) -
                            sys.weight * (b - a);
    if (exponent < 0) throw ArithmeticError("congruence_count_bound: negative exponent");
    return coeff * bigint_pow(BigInt(p), static_cast<unsigned long>(exponent));
}

BigInt hensel_count(const HenselInstance& inst, std::uint64_t budget) {
    const std::size_t t = inst.polys.size();
    if (t == 0) throw InputError("hensel_count: no polynomials");
    if (inst.level < 1) throw InputError("hensel_count: level must be positive");
    if (inst.prime < 2) throw DomainError("hensel_count: prime must be at least 2");
    for (const auto& f : inst.polys)
        if (f.dimension() != t)
            throw DimensionError("hensel_count: polynomials must live in t variables");

    const std::int64_t modulus =
        ipow_checked(inst.prime, static_cast<unsigned>(inst.level), "hensel modulus");
    unsigned __int128 space = 1;
    for (std::size_t i = 0; i < t; ++i) {
        space *= static_cast<unsigned __int128>(modulus);
        if (space > budget) throw BudgetError("hensel_count: prime^{l t} exceeds budget");
    }

    std::vector<std::vector<Polynomial>> jac(t);
    for (std::size_t j = 0; j < t; ++j)
        for (std::size_t i = 1; i <= t; ++i)
            jac[j].push_back(inst.polys[j].partial_derivative(i));

    BigInt count(0);
    std::vector<std::int64_t> x(t, 1);
    while (true) {
        bool all_zero = true;
        for (std::size_t j = 0; j < t && all_zero; ++j)
            if (inst.polys[j].evaluate_mod(x, modulus) != 0) all_zero = false;
        if (all_zero) {
            std::vector<__int128> m(t * t);
            for (std::size_t i = 0; i < t; ++i)
                for (std::size_t j = 0; j < t; ++j)
                    m[i * t + j] = jac[j][i].evaluate_mod(x, inst.prime);
            if (det_mod(std::move(m), t, inst.prime) != 0) count += 1;
        }
        std::size_t i = 0;
        while (i < t) {
            if (++x[i] <= modulus) break;
            x[i] = 1;
            ++i;
        }
        if (i == t) break;
    }
    return count;
}

bool verify_delta_scaling(const TdiSystem& sys, const SigmaMap& sigma, const Rational& t,
                          const std::vector<std::vector<Rational>>& points,
                          const std::vector<Rational>& xi) {
    const std::size_t r = sys.rank();
    if (points.size() != r) throw DimensionError("verify_delta_scaling: need r points");
    std::vector<std::vector<Rational>> mapped(r, std::vector<Rational>(sys.dimension));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t m = 0; m < sys.dimension; ++m)
            mapped[i][m] = t * points[i][m] + xi[m];
    Rational lhs = jacobian_delta(sys, sigma, mapped);
    Rational rhs = rational_pow(t, sys.weight - static_cast<std::int64_t>(r)) *
                   jacobian_delta(sys, sigma, points);
    return lhs == rhs;
}

}  // namespace tdi
