#include "tdi/weyl.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tdi {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr std::size_t kBlock = 8192;  // fixed block size keeps reductions thread-count independent

int resolve_threads(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

double mod1(double t) {
    double f = t - std::floor(t);
    return f >= 1.0 ? f - 1.0 : f;
}

std::complex<double> unit_phase(double t) {
    double theta = kTwoPi * mod1(t);
    return {std::cos(theta), std::sin(theta)};
}

// Kahan-compensated sequential combination of per-block partial sums.
std::complex<double> combine_blocks(const std::vector<std::complex<double>>& partials) {
    double re = 0, im = 0, c_re = 0, c_im = 0;
    for (const auto& p : partials) {
        double y = p.real() - c_re;
        double t = re + y;
        c_re = (t - re) - y;
        re = t;
        y = p.imag() - c_im;
        t = im + y;
        c_im = (t - im) - y;
        im = t;
    }
    return {re, im};
}

void decode_lattice(std::uint64_t idx, std::int64_t side, std::size_t d,
                    std::vector<std::int64_t>& x) {
    for (std::size_t m = 0; m < d; ++m) {
        x[m] = 1 + static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(side));
        idx /= static_cast<std::uint64_t>(side);
    }
}

std::int64_t vector_gcd(std::int64_t q, const std::vector<std::int64_t>& a) {
    std::int64_t g = q;
    for (std::int64_t ai : a) g = std::gcd(g, ai < 0 ? -ai : ai);
    return g;
}

}  // namespace

FrequencyVector FrequencyVector::reduced(std::vector<double> raw) {
    for (double& t : raw) t = mod1(t);
    return FrequencyVector{std::move(raw)};
}

RationalPoint RationalPoint::reduced(std::int64_t q, std::vector<std::int64_t> a) {
    if (q < 1) throw InputError("RationalPoint: q must be positive");
    std::int64_t g = vector_gcd(q, a);
    if (g > 1) {
        q /= g;
        for (auto& ai : a) ai /= g;
    }
    return RationalPoint{q, std::move(a)};
}

std::complex<double> eval_f(const TdiSystem& sys, const std::vector<double>& alpha_raw,
                            std::int64_t X, std::uint64_t budget, int threads) {
    if (alpha_raw.size() != sys.rank()) throw DimensionError("eval_f: alpha length != rank");
    if (X < 1) throw InputError("eval_f: X must be positive");
    // Integer frequency shifts change phases by whole turns; reducing first
    // makes f exactly 1-periodic per coordinate.
    std::vector<double> alpha = alpha_raw;
    for (double& t : alpha) t = mod1(t);
    const std::size_t d = sys.dimension;
    unsigned __int128 total = 1;
    for (std::size_t m = 0; m < d; ++m) {
        total *= static_cast<unsigned __int128>(X);
        if (total > budget) throw BudgetError("eval_f: X^d exceeds summand budget");
    }
    const std::uint64_t n = static_cast<std::uint64_t>(total);
    const std::uint64_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<std::complex<double>> partials(nblocks);

#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
    for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(nblocks); ++blk) {
        const std::uint64_t begin = static_cast<std::uint64_t>(blk) * kBlock;
        const std::uint64_t end = std::min<std::uint64_t>(begin + kBlock, n);
        std::vector<std::int64_t> x(d);
        double re = 0, im = 0;
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            decode_lattice(idx, X, d, x);
            double t = 0;
            for (std::size_t j = 0; j < sys.rank(); ++j)
                t += mod1(alpha[j] * static_cast<double>(sys.forms[j].evaluate_i64(x)));
            std::complex<double> ph = unit_phase(t);
            re += ph.real();
            im += ph.imag();
        }
        partials[blk] = {re, im};
    }
    return combine_blocks(partials);
}

std::complex<double> complete_sum_S(const TdiSystem& sys, std::int64_t q,
                                    const std::vector<std::int64_t>& a, std::uint64_t budget,
                                    int threads) {
    if (q < 1) throw InputError("complete_sum_S: q must be positive");
    if (a.size() != sys.rank()) throw DimensionError("complete_sum_S: a length != rank");
    const std::size_t d = sys.dimension;
    unsigned __int128 total = 1;
    for (std::size_t m = 0; m < d; ++m) {
        total *= static_cast<unsigned __int128>(q);
        if (total > budget) throw BudgetError("complete_sum_S: q^d exceeds summand budget");
    }
    const std::uint64_t n = static_cast<std::uint64_t>(total);
    const std::uint64_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<std::complex<double>> partials(nblocks);

#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
    for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(nblocks); ++blk) {
        const std::uint64_t begin = static_cast<std::uint64_t>(blk) * kBlock;
        const std::uint64_t end = std::min<std::uint64_t>(begin + kBlock, n);
        std::vector<std::int64_t> x(d);
        double re = 0, im = 0;
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            decode_lattice(idx, q, d, x);
            // Exact rational phase: (a . F(x)) mod q over the integers.
            std::int64_t num = 0;
            for (std::size_t j = 0; j < sys.rank(); ++j) {
                __int128 term = static_cast<__int128>(a[j] % q) * sys.forms[j].evaluate_mod(x, q);
                num = static_cast<std::int64_t>((num + term) % q);
            }
            if (num < 0) num += q;
            std::complex<double> ph = unit_phase(static_cast<double>(num) / static_cast<double>(q));
            re += ph.real();
            im += ph.imag();
        }
        partials[blk] = {re, im};
    }
    return combine_blocks(partials);
}

std::complex<double> oscillatory_v(const TdiSystem& sys, const std::vector<double>& beta,
                                   double X, std::int64_t grid, std::uint64_t budget,
                                   int threads) {
    if (beta.size() != sys.rank()) throw DimensionError("oscillatory_v: beta length != rank");
    if (grid < 1) throw InputError("oscillatory_v: grid must be positive");
    if (!(X > 0)) throw InputError("oscillatory_v: X must be positive");
    const std::size_t d = sys.dimension;
    if (std::all_of(beta.begin(), beta.end(), [](double b) { return b == 0.0; }))
        return {std::pow(X, static_cast<double>(d)), 0.0};
    unsigned __int128 total = 1;
    for (std::size_t m = 0; m < d; ++m) {
        total *= static_cast<unsigned __int128>(grid);
        if (total > budget) throw BudgetError("oscillatory_v: grid^d exceeds budget");
    }
    const std::uint64_t n = static_cast<std::uint64_t>(total);
    const double h = X / static_cast<double>(grid);
    const double cellweight = std::pow(h, static_cast<double>(d));
    const std::uint64_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<std::complex<double>> partials(nblocks);

#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
    for (std::int64_t blk = 0; blk < static_cast<std::int64_t>(nblocks); ++blk) {
        const std::uint64_t begin = static_cast<std::uint64_t>(blk) * kBlock;
        const std::uint64_t end = std::min<std::uint64_t>(begin + kBlock, n);
        std::vector<double> gamma(d);
        double re = 0, im = 0;
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            std::uint64_t rest = idx;
            for (std::size_t m = 0; m < d; ++m) {
                gamma[m] = (static_cast<double>(rest % static_cast<std::uint64_t>(grid)) + 0.5) * h;
                rest /= static_cast<std::uint64_t>(grid);
            }
            double t = 0;
            for (std::size_t j = 0; j < sys.rank(); ++j)
                t += mod1(beta[j] * sys.forms[j].evaluate_double(gamma));
            std::complex<double> ph = unit_phase(t);
            re += ph.real();
            im += ph.imag();
        }
        partials[blk] = {re, im};
    }
    std::complex<double> sum = combine_blocks(partials);
    return sum * cellweight;
}

std::complex<double> major_arc_V(const TdiSystem& sys, const std::vector<double>& alpha,
                                 const RationalPoint& rp, double X, std::int64_t grid,
                                 std::uint64_t budget, int threads) {
    if (alpha.size() != sys.rank()) throw DimensionError("major_arc_V: alpha length != rank");
    if (rp.a.size() != sys.rank()) throw DimensionError("major_arc_V: witness length != rank");
    std::vector<double> beta(sys.rank());
    for (std::size_t j = 0; j < sys.rank(); ++j)
        beta[j] = alpha[j] - static_cast<double>(rp.a[j]) / static_cast<double>(rp.q);
    std::complex<double> S = complete_sum_S(sys, rp.q, rp.a, budget, threads);
    std::complex<double> v = oscillatory_v(sys, beta, X, grid, budget, threads);
    return S * v / std::pow(static_cast<double>(rp.q), static_cast<double>(sys.dimension));
}

ArcLabel classify_arc(const TdiSystem& sys, const std::vector<double>& alpha, std::int64_t X,
                      double theta) {
    if (alpha.size() != sys.rank()) throw DimensionError("classify_arc: alpha length != rank");
    if (!(theta > 0 && theta <= 1)) throw InputError("classify_arc: need 0 < theta <= 1");
    const std::int64_t q_max = static_cast<std::int64_t>(
        std::floor(std::pow(static_cast<double>(X), theta) + 1e-9));
    ArcLabel label;
    label.theta = theta;
    for (std::int64_t q = 1; q <= q_max; ++q) {
        std::vector<std::int64_t> a(sys.rank());
        bool inside = true;
        for (std::size_t j = 0; j < sys.rank() && inside; ++j) {
            a[j] = std::llround(static_cast<double>(q) * alpha[j]);
            double err = std::fabs(static_cast<double>(q) * alpha[j] - static_cast<double>(a[j]));
            double box = std::pow(static_cast<double>(X),
                                  theta - static_cast<double>(sys.degrees[j]));
            if (a[j] < 0 || a[j] > q || err > box) inside = false;
        }
        if (!inside) continue;
        if (vector_gcd(q, a) != 1) continue;  // the reduced point was already checked
        label.major = true;
        label.witness = RationalPoint{q, std::move(a)};
        return label;
    }
    return label;
}

namespace {

// Denominators of the continued-fraction convergents of t, capped at limit.
std::vector<std::int64_t> convergent_denominators(double t, std::int64_t limit) {
    std::vector<std::int64_t> out;
    double y = std::fabs(t);
    std::int64_t prev_den = 1, den = 0;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(y);
        if (fl > 1e18) break;
        std::int64_t a0 = static_cast<std::int64_t>(fl);
        __int128 next = static_cast<__int128>(a0) * den + prev_den;
        if (next > limit || next < 1) break;
        prev_den = den;
        den = static_cast<std::int64_t>(next);
        out.push_back(den);
        double frac = y - fl;
        if (frac < 1e-15) break;
        y = 1.0 / frac;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::optional<ApproxCertificate> rational_approx_search(const TdiSystem& sys,
                                                        const std::vector<double>& alpha,
                                                        std::int64_t X, std::int64_t Y_budget) {
    if (alpha.size() != sys.rank()) throw DimensionError("rational_approx_search: alpha length");
    if (Y_budget < 1) throw InputError("rational_approx_search: Y_budget must be >= 1");
    const std::size_t r = sys.rank();

    auto try_q = [&](std::int64_t q) -> std::optional<ApproxCertificate> {
        ApproxCertificate cert;
        cert.q = q;
        cert.a.resize(r);
        cert.errors.resize(r);
        for (std::size_t j = 0; j < r; ++j) {
            double qa = static_cast<double>(q) * alpha[j];
            cert.a[j] = std::llround(qa);
            cert.errors[j] = std::fabs(qa - static_cast<double>(cert.a[j]));
            double bound = static_cast<double>(Y_budget) *
                           std::pow(static_cast<double>(X), -static_cast<double>(sys.degrees[j]));
            if (cert.errors[j] > bound) return std::nullopt;
        }
        return cert;
    };

    // Convergent denominators per coordinate, lcm-combined across coordinates.
    std::int64_t best = Y_budget + 1;
    std::vector<std::int64_t> candidates{1};
    for (std::size_t j = 0; j < r; ++j) {
        std::vector<std::int64_t> dens = convergent_denominators(alpha[j], Y_budget);
        std::vector<std::int64_t> next = candidates;
        for (std::int64_t q0 : candidates)
            for (std::int64_t den : dens) {
                __int128 l = static_cast<__int128>(q0) / std::gcd(q0, den) * den;
                if (l <= Y_budget) next.push_back(static_cast<std::int64_t>(l));
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        candidates = std::move(next);
    }
    std::optional<ApproxCertificate> found;
    for (std::int64_t q : candidates) {
        if (q >= best) continue;
        if (auto cert = try_q(q)) {
            best = q;
            found = cert;
        }
    }
    // Exhaustive confirmation that no smaller q qualifies.
    for (std::int64_t q = 1; q < best && q <= Y_budget; ++q) {
        if (auto cert = try_q(q)) {
            found = cert;
            break;
        }
    }
    return found;
}

SingularSeriesResult truncated_singular_series(const TdiSystem& sys,
                                               const std::vector<std::vector<std::int64_t>>& coeffs,
                                               std::int64_t Q_max, std::uint64_t budget) {
    const std::size_t r = sys.rank();
    if (coeffs.size() != r) throw DimensionError("truncated_singular_series: coeffs rows != r");
    const std::size_t s = coeffs.front().size();
    if (s == 0) throw InputError("truncated_singular_series: no blocks");
    for (const auto& row : coeffs)
        if (row.size() != s) throw DimensionError("truncated_singular_series: ragged coeffs");
    if (Q_max < 1) throw InputError("truncated_singular_series: Q_max must be >= 1");

    SingularSeriesResult out;
    for (std::int64_t q = 1; q <= Q_max; ++q) {
        unsigned __int128 tuples = 1;
        for (std::size_t j = 0; j < r; ++j) {
            tuples *= static_cast<unsigned __int128>(q);
            if (tuples > budget)
                throw BudgetError("truncated_singular_series: q^r exceeds budget");
        }
        std::complex<double> q_total = 0;
        std::vector<std::int64_t> a(r, 1);
        while (true) {
            if (vector_gcd(q, a) == 1) {
                std::complex<double> prod = 1;
                for (std::size_t j = 0; j < s; ++j) {
                    std::vector<std::int64_t> weighted(r);
                    for (std::size_t i = 0; i < r; ++i) weighted[i] = coeffs[i][j] * a[i];
                    prod *= complete_sum_S(sys, q, weighted, budget);
                }
                q_total += prod;
            }
            std::size_t i = 0;
            while (i < r) {
                if (++a[i] <= q) break;
                a[i] = 1;
                ++i;
            }
            if (i == r) break;
        }
        double scale = std::pow(static_cast<double>(q),
                                -static_cast<double>(s) * static_cast<double>(sys.dimension));
        std::complex<double> increment = q_total * scale;
        out.value += increment.real();
        out.last_increment = increment.real();
        out.max_imag = std::max(out.max_imag, std::fabs(increment.imag()));
    }
    return out;
}

}  // namespace tdi
