#include <doctest.h>

#include "tdi/iteration.hpp"
#include "test_helpers.hpp"

using namespace tdi;

namespace {

IterationParams params_for(std::int64_t r, std::int64_t k, std::int64_t N, HPolicy policy) {
    IterationParams p;
    p.r = r;
    p.k = k;
    p.N = N;
    p.policy = policy;
    return p;
}

}  // namespace

TEST_CASE("zero policy gives pure powers and vanishing gamma") {
    IterationTrace trace = run_iteration(params_for(2, 2, 10, HPolicy::Zero));
    BigInt pow(1);
    for (std::size_t n = 0; n < trace.steps.size(); ++n) {
        CHECK(trace.steps[n].b == pow);
        CHECK(trace.steps[n].gamma == 0);
        pow *= 2;
    }
    CHECK(trace.steps[1].a == 1);
    CHECK(trace.steps[2].a == 2);
}

TEST_CASE("single max step from the start") {
    // r=2, k=2 (s=4), h0 = (k-1) b0 = 1: b1 = 3 and gamma1 = (2s-r+1)(b1 - s/r).
    IterationParams p = params_for(2, 2, 1, HPolicy::Custom);
    p.custom_h = {BigInt(1)};
    IterationTrace trace = run_iteration(p);
    CHECK(trace.steps[1].b == 3);
    CHECK(trace.steps[1].gamma == Rational(7));
    CHECK(trace.steps[1].c == Rational(4));  // c1 = (s/r)(c0+1) = 2k
}

TEST_CASE("h outside its bound is rejected") {
    IterationParams p = params_for(2, 2, 1, HPolicy::Custom);
    p.custom_h = {BigInt(2)};  // exceeds (k-1) b0 = 1
    CHECK_THROWS_AS(run_iteration(p), InputError);
    IterationParams q = params_for(2, 2, 2, HPolicy::Custom);
    q.custom_h = {BigInt(0)};  // wrong length
    CHECK_THROWS_AS(run_iteration(q), InputError);
    CHECK_THROWS_AS(run_iteration(params_for(1, 2, 2, HPolicy::Zero)), InputError);
}

TEST_CASE("closed forms hold for the max policy") {
    IterationTrace trace = run_iteration(params_for(3, 3, 20, HPolicy::Max));
    ClosedFormReport report = verify_closed_forms(trace);
    CHECK(report.gamma_identity_ok);
    CHECK(report.c_bound_ok);
    CHECK(report.psi_bound_ok);
    // Max policy: b_{n+1} = (2k-1) b_n.
    BigInt expect(1);
    for (std::size_t n = 0; n < trace.steps.size(); ++n) {
        CHECK(trace.steps[n].b == expect);
        expect *= 2 * 3 - 1;
    }
}

TEST_CASE("psi grows at least like n (k-1) k^{n-1} for the zero policy") {
    IterationTrace trace = run_iteration(params_for(2, 3, 15, HPolicy::Zero));
    ClosedFormReport report = verify_closed_forms(trace);
    CHECK(report.psi_bound_ok);
    CHECK(report.gamma_identity_ok);
}

TEST_CASE("randomized policies keep the policy-independent identities") {
    auto rng = test::make_rng(103);
    for (int run = 0; run < 50; ++run) {
        std::int64_t r = test::rand_int(rng, 2, 4);
        std::int64_t k = test::rand_int(rng, 2, 4);
        std::int64_t N = test::rand_int(rng, 1, 30);
        IterationParams p = params_for(r, k, N, HPolicy::Custom);
        BigInt b(1);
        for (std::int64_t n = 0; n < N; ++n) {
            BigInt h_max = BigInt(k - 1) * b;
            BigInt h = BigInt(test::rand_int(rng, 0, 1000)) % (h_max + 1);
            p.custom_h.push_back(h);
            b = k * b + h;
        }
        IterationTrace trace = run_iteration(p);
        ClosedFormReport report = verify_closed_forms(trace);
        CHECK(report.gamma_identity_ok);  // must never fail
        CHECK(report.c_bound_ok);
        // b_n >= k^n whenever h_n >= 0.
        BigInt floor_pow(1);
        for (const IterationStep& st : trace.steps) {
            CHECK(st.b >= floor_pow);
            floor_pow *= k;
        }
    }
}

TEST_CASE("eta_bound worked examples") {
    EtaBound b224 = eta_bound(2, 2, 4);
    CHECK(b224.is_exact());
    CHECK(b224.exact_value() == Rational(16));

    EtaBound big = eta_bound(3, 3, 1'000'000);
    CHECK(big.is_exact());
    CHECK(big.exact_value() == Rational(243, 1000));
    CHECK(big.value() == doctest::Approx(0.243).epsilon(1e-12));
}

TEST_CASE("eta_bound scales like 1/sqrt(N)") {
    // Quadrupling N halves the bound; doubling divides the square by 2.
    EtaBound base = eta_bound(2, 3, 7);
    EtaBound quad = eta_bound(2, 3, 28);
    CHECK(quad.squared() * 4 == base.squared());

    Rational prev_sq = eta_bound(4, 2, 1).squared();
    for (std::int64_t N = 2; N <= 64; N *= 2) {
        Rational sq = eta_bound(4, 2, N).squared();
        CHECK(sq * 2 == prev_sq);
        prev_sq = sq;
    }
}

TEST_CASE("theta rendering") {
    IterationTrace trace = run_iteration(params_for(2, 2, 4, HPolicy::Zero));
    CHECK(trace.theta.N == 4);
    CHECK(trace.theta.base == Rational(1, 2));
    CHECK(trace.theta.expo == 6);
    CHECK(trace.theta.value() == doctest::Approx(std::pow(0.5, 6) / 2.0).epsilon(1e-12));
}
