#include <doctest.h>

#include <cmath>
#include <complex>

#include "tdi/counting.hpp"
#include "tdi/reference.hpp"
#include "tdi/weyl.hpp"
#include "test_helpers.hpp"

using namespace tdi;

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<double> rand_alpha(std::mt19937_64& rng, std::size_t r) {
    std::vector<double> a(r);
    for (double& x : a) x = uniform01(rng);
    return a;
}

}  // namespace

TEST_CASE("eval_f basics") {
    TdiSystem vin2 = generate_family(test::vinogradov(2));
    CHECK(std::abs(eval_f(vin2, {0.0, 0.0}, 17) - std::complex<double>(17, 0)) < 1e-9);

    // Single linear form at alpha = 1/2: alternating signs cancel over even X.
    TdiSystem lin = generate_family(test::vinogradov(1));
    CHECK(std::abs(eval_f(lin, {0.5}, 10)) < 1e-9);

    auto rng = test::make_rng(83);
    for (int iter = 0; iter < 1000; ++iter) {
        std::vector<double> alpha = rand_alpha(rng, 2);
        CHECK(std::abs(eval_f(vin2, alpha, 9)) <= 9.0 + 1e-9);
    }
}

TEST_CASE("eval_f symmetries and thread independence") {
    auto rng = test::make_rng(89);
    TdiSystem vin2 = generate_family(test::vinogradov(2));
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<double> alpha = rand_alpha(rng, 2);
        std::vector<double> neg = {-alpha[0], -alpha[1]};
        std::complex<double> f = eval_f(vin2, alpha, 23);
        CHECK(std::abs(eval_f(vin2, neg, 23) - std::conj(f)) < 1e-8);
    }
    // Shift exactness needs alpha + 1 representable, so use 40-bit mantissas.
    std::vector<double> alpha = {std::ldexp(static_cast<double>(rng() >> 24), -40),
                                 std::ldexp(static_cast<double>(rng() >> 24), -40)};
    std::complex<double> base = eval_f(vin2, alpha, 50);
    CHECK(eval_f(vin2, {alpha[0] + 1.0, alpha[1]}, 50) == base);  // integer phase shifts
    CHECK(eval_f(vin2, {alpha[0], alpha[1] + 2.0}, 50) == base);
    CHECK(eval_f(vin2, alpha, 50, 1'000'000'000, 1) ==
          eval_f(vin2, alpha, 50, 1'000'000'000, 4));
    CHECK(std::abs(base - ref::eval_f(vin2, alpha, 50)) < 1e-8);
}

TEST_CASE("complete_sum_S worked examples") {
    TdiSystem lin = generate_family(test::vinogradov(1));
    CHECK(std::abs(complete_sum_S(lin, 1, {0}) - std::complex<double>(1, 0)) < 1e-12);
    CHECK(std::abs(complete_sum_S(lin, 2, {1})) < 1e-12);  // e(1/2) + e(1) = 0

    auto rng = test::make_rng(97);
    TdiSystem vin2 = generate_family(test::vinogradov(2));
    for (std::int64_t q = 1; q <= 12; ++q) {
        std::vector<std::int64_t> a = {test::rand_int(rng, 0, q), test::rand_int(rng, 0, q)};
        CHECK(std::abs(complete_sum_S(vin2, q, a)) <= static_cast<double>(q) + 1e-9);
    }
}

TEST_CASE("oscillatory_v quadrature") {
    TdiSystem lin = generate_family(test::vinogradov(1));
    CHECK(oscillatory_v(lin, {0.0}, 13.0, 100) == std::complex<double>(13.0, 0.0));

    // Closed form for d = 1: integral of e(b gamma) over [0, X].
    const double two_pi = 6.283185307179586476925286766559;
    for (double b : {0.05, 0.11, -0.07}) {
        double X = 18.0;  // |b| X <= 2
        std::complex<double> quad = oscillatory_v(lin, {b}, X, 10000);
        std::complex<double> i(0, 1);
        std::complex<double> closed =
            (std::exp(i * (two_pi * b * X)) - 1.0) / (i * two_pi * b);
        CHECK(std::abs(quad - closed) < 1e-6 * std::abs(closed));
        std::complex<double> conj_side = oscillatory_v(lin, {-b}, X, 10000);
        CHECK(std::abs(conj_side - std::conj(quad)) < 1e-9 * X);
    }
}

TEST_CASE("major_arc_V at the rational point") {
    TdiSystem vin2 = generate_family(test::vinogradov(2));
    RationalPoint rp = RationalPoint::reduced(3, {1, 2});
    std::vector<double> alpha = {1.0 / 3.0, 2.0 / 3.0};
    std::complex<double> V = major_arc_V(vin2, alpha, rp, 30.0, 64);
    std::complex<double> expect =
        complete_sum_S(vin2, 3, {1, 2}) * std::pow(30.0, 1.0) / 3.0;  // v(0) = X^d
    CHECK(std::abs(V - expect) < 1e-9 * std::abs(expect) + 1e-9);

    // q = 1, a = 0, alpha = 0: V = X and |f - V| is bounded by a constant in X.
    for (std::int64_t X : {50, 100}) {
        std::complex<double> f = eval_f(vin2, {0.0, 0.0}, X);
        std::complex<double> V0 = major_arc_V(vin2, {0.0, 0.0}, RationalPoint::reduced(1, {0, 0}),
                                              static_cast<double>(X), 64);
        CHECK(std::abs(f - V0) <= 2.0);
    }
}

TEST_CASE("classify_arc") {
    TdiSystem vin2 = generate_family(test::vinogradov(2));
    ArcLabel zero = classify_arc(vin2, {0.0, 0.0}, 64, 0.5);
    CHECK(zero.major);
    CHECK(zero.witness.q == 1);

    ArcLabel rational = classify_arc(vin2, {0.25, 0.5}, 64, 0.5);
    CHECK(rational.major);
    CHECK(rational.witness.q <= 4);
    // Verify the witness box inequalities directly.
    for (std::size_t j = 0; j < 2; ++j) {
        double err = std::fabs(rational.witness.q * (j == 0 ? 0.25 : 0.5) -
                               static_cast<double>(rational.witness.a[j]));
        CHECK(err <= std::pow(64.0, 0.5 - static_cast<double>(vin2.degrees[j])));
    }

    // Golden-ratio-style offsets stay minor: far from every q <= X^theta box.
    ArcLabel bad = classify_arc(vin2, {0.6180339887498949, 0.7071067811865476}, 64, 0.25);
    CHECK(!bad.major);
}

TEST_CASE("classify_arc witness verified exhaustively") {
    auto rng = test::make_rng(101);
    TdiSystem vin2 = generate_family(test::vinogradov(2));
    const std::int64_t X = 32;
    const double theta = 0.4;
    const std::int64_t q_max = static_cast<std::int64_t>(std::floor(std::pow(32.0, 0.4) + 1e-9));
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<double> alpha = rand_alpha(rng, 2);
        ArcLabel label = classify_arc(vin2, alpha, X, theta);
        // Independent exhaustive re-check of membership.
        bool inside_any = false;
        for (std::int64_t q = 1; q <= q_max && !inside_any; ++q) {
            bool inside = true;
            std::vector<std::int64_t> a(2);
            for (std::size_t j = 0; j < 2 && inside; ++j) {
                a[j] = std::llround(q * alpha[j]);
                double err = std::fabs(q * alpha[j] - static_cast<double>(a[j]));
                if (a[j] < 0 || a[j] > q ||
                    err > std::pow(static_cast<double>(X),
                                   theta - static_cast<double>(vin2.degrees[j])))
                    inside = false;
            }
            std::int64_t g = q;
            for (std::int64_t ai : a) g = std::gcd(g, ai < 0 ? -ai : ai);
            if (inside && g == 1) inside_any = true;
        }
        CHECK(label.major == inside_any);
    }
}

TEST_CASE("rational_approx_search") {
    TdiSystem vin2 = generate_family(test::vinogradov(2));

    // Exactly rational input: all errors vanish.
    auto exact = rational_approx_search(vin2, {0.25, 0.75}, 100, 20);
    REQUIRE(exact.has_value());
    CHECK(exact->q == 4);
    CHECK(exact->errors[0] == 0.0);
    CHECK(exact->errors[1] == 0.0);

    // Near-rational pair with denominators 3 and 7: least common q is 21.
    auto mixed = rational_approx_search(vin2, {1.0 / 3.0 + 1e-9, 1.0 / 7.0}, 1000, 50);
    REQUIRE(mixed.has_value());
    CHECK(mixed->q == 21);
    CHECK(mixed->errors[0] < 1e-6);
    CHECK(mixed->errors[1] < 1e-6);

    // Budget 1 only allows q = 1, which generic frequencies fail.
    CHECK(!rational_approx_search(vin2, {0.37, 0.61}, 1000, 1).has_value());
}

TEST_CASE("truncated_singular_series") {
    // Single linear form, c = (1, -1): the complete sum vanishes for every
    // q >= 2 with (a, q) = 1, so the truncation is exactly the q = 1 term.
    // That matches the solution density of x = y, which is 1 per class.
    TdiSystem lin = generate_family(test::vinogradov(1));
    auto coeffs = uniform_block_coeffs(1, {1, -1});
    SingularSeriesResult q1 = truncated_singular_series(lin, coeffs, 1);
    CHECK(q1.value == doctest::Approx(1.0).epsilon(1e-12));
    SingularSeriesResult q8 = truncated_singular_series(lin, coeffs, 8);
    CHECK(q8.max_imag < 1e-9);
    CHECK(q8.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::fabs(q8.last_increment) < 1e-12);

    // Quadratic system: the paired sums |S(q, a)|^2 contribute positively, so
    // the truncation strictly exceeds the q = 1 term and stays real.
    TdiSystem vin2 = generate_family(test::vinogradov(2));
    auto paired = uniform_block_coeffs(2, {1, -1});
    SingularSeriesResult v1 = truncated_singular_series(vin2, paired, 1);
    SingularSeriesResult v8 = truncated_singular_series(vin2, paired, 8);
    CHECK(v1.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v8.value > v1.value + 0.01);
    CHECK(v8.max_imag < 1e-9);
}

TEST_CASE("random minor-arc frequencies show visible cancellation") {
    // Qualitative check: away from every rational box the phase sum loses at
    // least a tenth of the trivial bound.
    auto rng = test::make_rng(107);
    for (const FamilySpec& fam : test::example_families()) {
        TdiSystem sys = generate_family(fam);
        const std::int64_t X = 32;
        const double trivial = std::pow(static_cast<double>(X),
                                        static_cast<double>(sys.dimension));
        int sampled = 0;
        while (sampled < 10) {
            std::vector<double> alpha = rand_alpha(rng, sys.rank());
            if (classify_arc(sys, alpha, X, 0.25).major) continue;
            CHECK(std::abs(eval_f(sys, alpha, X)) <= 0.9 * trivial);
            ++sampled;
        }
    }
}

TEST_CASE("orthogonality: quadrature of |f|^{2s} equals the exact count") {
    // Midpoint quadrature integrates the trigonometric polynomial exactly once
    // the per-axis grid exceeds the frequency range 2 s max|F_j|.
    TdiSystem vin2 = generate_family(test::vinogradov(2));
    for (int s : {1, 2}) {
        for (std::int64_t X : {2, 3, 4}) {
            std::int64_t g1 = 2 * s * X + 1;
            std::int64_t g2 = 2 * s * X * X + 1;
            double sum = 0;
            for (std::int64_t i = 0; i < g1; ++i) {
                for (std::int64_t j = 0; j < g2; ++j) {
                    std::vector<double> alpha = {
                        (static_cast<double>(i) + 0.5) / static_cast<double>(g1),
                        (static_cast<double>(j) + 0.5) / static_cast<double>(g2)};
                    double m = std::abs(eval_f(vin2, alpha, X));
                    sum += std::pow(m, 2.0 * s);
                }
            }
            sum /= static_cast<double>(g1) * static_cast<double>(g2);
            BigInt expect = count_Js(vin2, s, X);
            CHECK(std::fabs(sum - expect.get_d()) < 0.5);
            CHECK(BigInt(static_cast<long>(std::llround(sum))) == expect);
        }
    }
}
