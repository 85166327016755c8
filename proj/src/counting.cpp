#include "tdi/counting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace tdi {

namespace {

// All block value vectors F(x) (optionally weighted componentwise) for x in
// the positive box 1..X or the symmetric box -X..X.
std::vector<std::vector<std::int64_t>> tabulate_block(
    const TdiSystem& sys, std::int64_t X, BoxKind box,
    const std::vector<std::int64_t>* weights, std::uint64_t base_budget) {
    const std::size_t d = sys.dimension;
    const std::int64_t lo = box == BoxKind::Positive ? 1 : -X;
    const std::int64_t hi = X;
    const unsigned __int128 extent = static_cast<unsigned __int128>(hi - lo) + 1;
    unsigned __int128 npoints = 1;
    for (std::size_t i = 0; i < d; ++i) {
        npoints *= extent;
        if (npoints > base_budget)
            throw BudgetError("tabulate_block: lattice exceeds base-point budget");
    }

    std::vector<std::vector<std::int64_t>> out;
    out.reserve(static_cast<std::size_t>(npoints));
    std::vector<std::int64_t> x(d, lo);
    while (true) {
        std::vector<std::int64_t> v(sys.rank());
        for (std::size_t j = 0; j < sys.rank(); ++j) {
            __int128 value = sys.forms[j].evaluate_i64(x);
            if (weights) value *= (*weights)[j];
            v[j] = to_i64_checked(value, "tabulate_block");
        }
        out.push_back(std::move(v));
        std::size_t i = 0;
        while (i < d) {
            if (++x[i] <= hi) break;
            x[i] = lo;
            ++i;
        }
        if (i == d) break;
    }
    return out;
}

// Verifies s * d * log2(max coordinate magnitudes) stays inside 64-bit words:
// the total mass X^{sd} and every summed component must fit.
void check_overflow_budget(const TdiSystem& sys, int s, std::int64_t X, const Dist& base) {
    unsigned __int128 mass = 1;
    for (int i = 0; i < s; ++i) {
        for (std::size_t m = 0; m < sys.dimension; ++m) {
            mass *= static_cast<unsigned __int128>(X);
            if (mass >= (static_cast<unsigned __int128>(1) << 63))
                throw BudgetError("value_distribution: mass X^{sd} exceeds 64-bit budget");
        }
    }
    for (std::size_t j = 0; j < base.rank; ++j) {
        __int128 lo = static_cast<__int128>(base.lo[j]) * s;
        __int128 hi = static_cast<__int128>(base.hi[j]) * s;
        to_i64_checked(lo, "value_distribution component range");
        to_i64_checked(hi, "value_distribution component range");
    }
}

Dist fold_distribution(const Dist& base, int s, ConvStrategy strategy,
                       const ConvolveBudget& budget, int threads) {
    if (s == 1) return base;
    if (strategy == ConvStrategy::Auto) {
        // Final box volume decides: dense-indexable boxes favour the
        // sequential chain (small dist(1) side), sparse supports in huge boxes
        // favour doubling.
        unsigned __int128 vol = 1;
        bool dense = true;
        for (std::size_t j = 0; j < base.rank; ++j) {
            unsigned __int128 extent =
                static_cast<unsigned __int128>(base.hi[j] - base.lo[j]) * s + 1;
            vol *= extent;
            if (vol > budget.dense_cells) {
                dense = false;
                break;
            }
        }
        strategy = dense ? ConvStrategy::Sequential : ConvStrategy::Doubling;
    }
    if (strategy == ConvStrategy::Sequential) {
        Dist acc = base;
        for (int i = 2; i <= s; ++i) acc = convolve(acc, base, budget, threads);
        return acc;
    }
    // Doubling with memoized halves.
    std::map<int, Dist> memo;
    memo.emplace(1, base);
    std::function<const Dist&(int)> build = [&](int n) -> const Dist& {
        auto it = memo.find(n);
        if (it != memo.end()) return it->second;
        Dist d = (n % 2 == 0) ? convolve(build(n / 2), build(n / 2), budget, threads)
                              : convolve(build(n - 1), memo.at(1), budget, threads);
        return memo.emplace(n, std::move(d)).first->second;
    };
    return build(s);
}

std::vector<std::int64_t> zero_vector(std::size_t rank) {
    return std::vector<std::int64_t>(rank, 0);
}

}  // namespace

CountTable value_distribution(const TdiSystem& sys, int s, std::int64_t X,
                              const CountOptions& options) {
    if (s < 1) throw InputError("value_distribution: s must be positive");
    if (X < 1) throw InputError("value_distribution: X must be positive");
    auto vectors = tabulate_block(sys, X, BoxKind::Positive, nullptr, options.base_points);
    Dist base = make_dist(sys.rank(), vectors);
    check_overflow_budget(sys, s, X, base);
    Dist result = fold_distribution(base, s, options.strategy, options.budget, options.threads);
    return CountTable::from_dist(result);
}

BigInt count_Js(const TdiSystem& sys, int s, std::int64_t X, const CountOptions& options) {
    return value_distribution(sys, s, X, options).sum_of_squares();
}

BigInt count_Js_bruteforce(const TdiSystem& sys, int s, std::int64_t X, std::uint64_t budget) {
    if (s < 1 || X < 1) throw InputError("count_Js_bruteforce: s and X must be positive");
    const std::size_t d = sys.dimension;
    const std::size_t r = sys.rank();
    unsigned __int128 tuples = 1;
    for (int i = 0; i < 2 * s; ++i)
        for (std::size_t m = 0; m < d; ++m) {
            tuples *= static_cast<unsigned __int128>(X);
            if (tuples > budget)
                throw BudgetError("count_Js_bruteforce: X^{2sd} exceeds enumeration budget");
        }

    // Enumerate every s-block tuple once, collecting its value vector.
    const std::size_t coords = static_cast<std::size_t>(s) * d;
    std::vector<std::vector<std::int64_t>> side;
    std::vector<std::int64_t> x(coords, 1);
    while (true) {
        std::vector<std::int64_t> v(r, 0);
        for (int i = 0; i < s; ++i) {
            std::vector<std::int64_t> point(x.begin() + i * d, x.begin() + (i + 1) * d);
            for (std::size_t j = 0; j < r; ++j) {
                __int128 sum = static_cast<__int128>(v[j]) + sys.forms[j].evaluate_i64(point);
                v[j] = to_i64_checked(sum, "count_Js_bruteforce");
            }
        }
        side.push_back(std::move(v));
        std::size_t i = 0;
        while (i < coords) {
            if (++x[i] <= X) break;
            x[i] = 1;
            ++i;
        }
        if (i == coords) break;
    }
    std::sort(side.begin(), side.end());

    // Match the second side against the first by binary search.
    BigInt total(0);
    std::fill(x.begin(), x.end(), 1);
    while (true) {
        std::vector<std::int64_t> v(r, 0);
        for (int i = 0; i < s; ++i) {
            std::vector<std::int64_t> point(x.begin() + i * d, x.begin() + (i + 1) * d);
            for (std::size_t j = 0; j < r; ++j)
                v[j] += sys.forms[j].evaluate_i64(point);
        }
        auto range = std::equal_range(side.begin(), side.end(), v);
        total += static_cast<unsigned long>(range.second - range.first);
        std::size_t i = 0;
        while (i < coords) {
            if (++x[i] <= X) break;
            x[i] = 1;
            ++i;
        }
        if (i == coords) break;
    }
    return total;
}

std::vector<std::vector<std::int64_t>> uniform_block_coeffs(
    std::size_t rank, const std::vector<std::int64_t>& c_per_block) {
    std::vector<std::vector<std::int64_t>> coeffs(rank,
                                                  std::vector<std::int64_t>(c_per_block.size()));
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < c_per_block.size(); ++j) coeffs[i][j] = c_per_block[j];
    return coeffs;
}

BigInt count_Ns_general(const TdiSystem& sys, const std::vector<std::vector<std::int64_t>>& coeffs,
                        std::int64_t X, BoxKind box, const CountOptions& options) {
    const std::size_t r = sys.rank();
    if (coeffs.size() != r) throw DimensionError("count_Ns_general: coeffs must have r rows");
    const std::size_t s = coeffs.front().size();
    if (s == 0) throw InputError("count_Ns_general: no blocks");
    for (const auto& row : coeffs) {
        if (row.size() != s) throw DimensionError("count_Ns_general: ragged coefficient matrix");
        for (std::int64_t c : row)
            if (c == 0) throw InputError("count_Ns_general: zero coefficient");
    }

    std::optional<Dist> acc;
    for (std::size_t j = 0; j < s; ++j) {
        std::vector<std::int64_t> weights(r);
        for (std::size_t i = 0; i < r; ++i) weights[i] = coeffs[i][j];
        auto vectors = tabulate_block(sys, X, box, &weights, options.base_points);
        Dist block = make_dist(r, vectors);
        acc = acc ? convolve(*acc, block, options.budget, options.threads) : std::move(block);
    }
    return CountTable::from_dist(*acc).multiplicity(zero_vector(r));
}

std::vector<BoundTerm> lower_bound_terms(const TdiSystem& sys, int s, std::int64_t X,
                                         const CountOptions& options) {
    if (s < 1 || X < 1) throw InputError("lower_bound_terms: s and X must be positive");
    std::vector<BoundTerm> terms;
    const std::int64_t sd = static_cast<std::int64_t>(s) * sys.dimension;

    terms.push_back({"diagonal", bigint_pow(BigInt(X), static_cast<unsigned long>(sd)), true});

    std::int64_t mean_exp = 2 * sd - sys.weight;
    if (mean_exp >= 0)
        terms.push_back({"meansquare",
                         bigint_pow(BigInt(X), static_cast<unsigned long>(mean_exp)), false});

    // Chains of coordinate deletions give X^{d-delta} * J_s(projection) with
    // the explicit per-step factor X.
    const std::size_t d = sys.dimension;
    for (std::size_t mask = 1; d >= 2 && mask + 1 < (std::size_t{1} << d); ++mask) {
        std::vector<std::size_t> indices;
        for (std::size_t m = 0; m < d; ++m)
            if (mask & (std::size_t{1} << m)) indices.push_back(m + 1);
        std::size_t delta = indices.size();
        TdiSystem proj = orthogonal_projection(sys, indices);
        BigInt value = bigint_pow(BigInt(X), static_cast<unsigned long>(d - delta)) *
                       count_Js(proj, s, X, options);
        std::string label = "projection:";
        for (std::size_t l = 0; l < indices.size(); ++l)
            label += (l ? "," : "") + std::to_string(indices[l]);
        terms.push_back({label, value, true});
    }
    return terms;
}

FitResult fit_exponent(const std::vector<std::pair<std::int64_t, BigInt>>& samples) {
    if (samples.size() < 3) throw InputError("fit_exponent: need at least 3 samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].second <= 0) throw InputError("fit_exponent: counts must be positive");
        if (i > 0 && samples[i].first <= samples[i - 1].first)
            throw InputError("fit_exponent: X values must be strictly increasing");
    }
    const std::size_t n = samples.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = std::log(static_cast<double>(samples[i].first));
        ys[i] = std::log(samples[i].second.get_d());
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    FitResult fit;
    fit.samples = samples;
    double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

namespace {

// Integer Jacobian at integer points via fraction-free elimination; reduced
// modulo `prime` when given.
bool delta_vanishes(const TdiSystem& sys, const SigmaMap& sigma,
                    const std::vector<const std::vector<std::int64_t>*>& pts,
                    std::optional<std::int64_t> prime,
                    const std::vector<std::vector<Polynomial>>& partials) {
    const std::size_t r = sys.rank();
    std::vector<__int128> m(r * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            std::int64_t e = partials[j][sigma(i + 1) - 1].evaluate_i64(*pts[i]);
            m[i * r + j] = prime ? ((e % *prime) + *prime) % *prime : e;
        }
    if (prime) {
        // Gaussian elimination over F_p.
        const std::int64_t p = *prime;
        auto inv_mod = [&](std::int64_t a) {
            std::int64_t result = 1, base = a % p, e = p - 2;
            while (e) {
                if (e & 1) result = static_cast<__int128>(result) * base % p;
                base = static_cast<__int128>(base) * base % p;
                e >>= 1;
            }
            return result;
        };
        for (std::size_t col = 0; col < r; ++col) {
            std::size_t sel = col;
            while (sel < r && m[sel * r + col] % p == 0) ++sel;
            if (sel == r) return true;
            if (sel != col)
                for (std::size_t j = 0; j < r; ++j) std::swap(m[sel * r + j], m[col * r + j]);
            std::int64_t inv = inv_mod(static_cast<std::int64_t>(m[col * r + col] % p));
            for (std::size_t i = col + 1; i < r; ++i) {
                std::int64_t f =
                    static_cast<std::int64_t>(static_cast<__int128>(m[i * r + col] % p) * inv % p);
                for (std::size_t j = col; j < r; ++j) {
                    __int128 v = m[i * r + j] - static_cast<__int128>(f) * (m[col * r + j] % p);
                    m[i * r + j] = ((v % p) + p) % p;
                }
            }
        }
        return false;
    }
    // Bareiss fraction-free elimination over the integers.
    __int128 prev = 1;
    for (std::size_t col = 0; col < r; ++col) {
        std::size_t sel = col;
        while (sel < r && m[sel * r + col] == 0) ++sel;
        if (sel == r) return true;
        if (sel != col)
            for (std::size_t j = 0; j < r; ++j) std::swap(m[sel * r + j], m[col * r + j]);
        for (std::size_t i = col + 1; i < r; ++i) {
            for (std::size_t j = col + 1; j < r; ++j)
                m[i * r + j] =
                    (m[i * r + j] * m[col * r + col] - m[i * r + col] * m[col * r + j]) / prev;
            m[i * r + col] = 0;
        }
        prev = m[col * r + col];
    }
    return m[(r - 1) * r + (r - 1)] == 0;
}

}  // namespace

BigInt count_singular_tuples(const TdiSystem& sys, const SigmaMap& sigma, int t, std::int64_t A,
                             std::optional<std::int64_t> prime, std::uint64_t budget) {
    if (t < 1 || A < 1) throw InputError("count_singular_tuples: t and A must be positive");
    const std::size_t d = sys.dimension;
    const std::size_t r = sys.rank();
    unsigned __int128 total = 1;
    for (int i = 0; i < t; ++i)
        for (std::size_t m = 0; m < d; ++m) {
            total *= static_cast<unsigned __int128>(A);
            if (total > budget)
                throw BudgetError("count_singular_tuples: A^{td} exceeds enumeration budget");
        }
    if (static_cast<std::size_t>(t) < r)
        return bigint_from_i128(static_cast<__int128>(total));  // vacuous condition

    std::vector<std::vector<Polynomial>> partials(r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t axis = 1; axis <= d; ++axis)
            partials[j].push_back(sys.forms[j].partial_derivative(axis));

    // Ordered selections of r distinct indices from 1..t.
    std::vector<std::vector<std::size_t>> selections;
    std::vector<std::size_t> sel;
    std::vector<bool> used(t, false);
    std::function<void()> build = [&]() {
        if (sel.size() == r) {
            selections.push_back(sel);
            return;
        }
        for (std::size_t i = 0; i < static_cast<std::size_t>(t); ++i) {
            if (used[i]) continue;
            used[i] = true;
            sel.push_back(i);
            build();
            sel.pop_back();
            used[i] = false;
        }
    };
    build();

    BigInt count(0);
    std::vector<std::int64_t> odo(static_cast<std::size_t>(t) * d, 1);
    std::vector<std::vector<std::int64_t>> points(t, std::vector<std::int64_t>(d, 1));
    while (true) {
        for (int i = 0; i < t; ++i)
            for (std::size_t m = 0; m < d; ++m) points[i][m] = odo[i * d + m];
        bool all_vanish = true;
        for (const auto& selection : selections) {
            std::vector<const std::vector<std::int64_t>*> pts;
            for (std::size_t idx : selection) pts.push_back(&points[idx]);
            if (!delta_vanishes(sys, sigma, pts, prime, partials)) {
                all_vanish = false;
                break;
            }
        }
        if (all_vanish) count += 1;
        std::size_t pos = 0;
        while (pos < odo.size()) {
            if (++odo[pos] <= A) break;
            odo[pos] = 1;
            ++pos;
        }
        if (pos == odo.size()) break;
    }
    return count;
}

SolutionClass classify_solution(const std::vector<std::vector<std::int64_t>>& points,
                                const TdiSystem& sys, const std::vector<std::int64_t>& c) {
    const std::size_t s = points.size();
    const std::size_t d = sys.dimension;
    const std::size_t r = sys.rank();
    if (s == 0) throw InputError("classify_solution: no points");
    if (c.size() != s) throw InputError("classify_solution: coefficient length != s");
    for (const auto& p : points)
        if (p.size() != d) throw DimensionError("classify_solution: point dimension");

    // Per-point weighted value vectors c_u * F(y_u).
    std::vector<std::vector<__int128>> w(s, std::vector<__int128>(r));
    for (std::size_t u = 0; u < s; ++u)
        for (std::size_t j = 0; j < r; ++j)
            w[u][j] = static_cast<__int128>(c[u]) * sys.forms[j].evaluate_i64(points[u]);

    for (std::size_t j = 0; j < r; ++j) {
        __int128 sum = 0;
        for (std::size_t u = 0; u < s; ++u) sum += w[u][j];
        if (sum != 0) throw InputError("classify_solution: points do not satisfy the system");
    }

    SolutionClass out;
    out.diagonal = std::all_of(points.begin(), points.end(),
                               [&](const auto& p) { return p == points[0]; });

    // Projected: the differences y_u - y_1 span a proper subspace of Q^d.
    if (s == 1) {
        out.projected = true;  // translate of the zero subspace
    } else {
        RationalMatrix diff(s - 1, d);
        for (std::size_t u = 1; u < s; ++u)
            for (std::size_t m = 0; m < d; ++m)
                diff.at(u - 1, m) = Rational(points[u][m] - points[0][m]);
        out.projected = diff.rank() < d;
    }

    // Subset-sum: restricted-growth-string enumeration of partitions into at
    // least two parts; only exact zero tests, no value pruning.
    if (s > 12) throw InputError("classify_solution: partition search limited to s <= 12");
    if (s >= 2) {
        std::vector<std::size_t> rgs(s, 0);
        while (true) {
            std::size_t nparts = *std::max_element(rgs.begin(), rgs.end()) + 1;
            if (nparts >= 2) {
                bool ok = true;
                for (std::size_t part = 0; part < nparts && ok; ++part) {
                    for (std::size_t j = 0; j < r && ok; ++j) {
                        __int128 sum = 0;
                        for (std::size_t u = 0; u < s; ++u)
                            if (rgs[u] == part) sum += w[u][j];
                        if (sum != 0) ok = false;
                    }
                }
                if (ok) {
                    out.subset_sum = true;
                    out.partition.assign(nparts, {});
                    for (std::size_t u = 0; u < s; ++u) out.partition[rgs[u]].push_back(u + 1);
                    break;
                }
            }
            // Next restricted growth string.
            std::size_t i = s;
            while (i-- > 1) {
                std::size_t prefix_max = *std::max_element(rgs.begin(), rgs.begin() + i);
                if (rgs[i] <= prefix_max) {
                    ++rgs[i];
                    std::fill(rgs.begin() + i + 1, rgs.end(), 0);
                    break;
                }
                if (i == 1) {
                    i = 0;
                    break;
                }
            }
            if (i == 0) break;
        }
    }

    out.generic = !out.diagonal && !out.projected && !out.subset_sum;
    return out;
}

}  // namespace tdi
