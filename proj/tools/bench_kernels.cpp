// Compares the OpenMP kernels against their serial reference implementations,
// both for correctness spot checks and wall-clock timing.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "tdi/congruence.hpp"
#include "tdi/counting.hpp"
#include "tdi/families.hpp"
#include "tdi/reference.hpp"
#include "tdi/weyl.hpp"

using h_clock = std::chrono::steady_clock;

namespace {

double ms_since(h_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(h_clock::now() - t0).count();
}

void bench_distribution(bool smoke) {
    tdi::FamilySpec f;
    f.kind = tdi::FamilyKind::Vinogradov;
    f.k = 2;
    tdi::TdiSystem sys = tdi::generate_family(f);
    const int s = smoke ? 3 : 5;
    const std::int64_t X = smoke ? 8 : 40;

    auto t0 = h_clock::now();
    tdi::ref::ValueMap ref = tdi::ref::distribution(sys, s, X);
    double ref_ms = ms_since(t0);

    tdi::CountOptions opts;
    opts.threads = 1;
    t0 = h_clock::now();
    tdi::CountTable serial = tdi::value_distribution(sys, s, X, opts);
    double serial_ms = ms_since(t0);

    opts.threads = omp_get_max_threads();
    t0 = h_clock::now();
    tdi::CountTable parallel = tdi::value_distribution(sys, s, X, opts);
    double parallel_ms = ms_since(t0);

    bool ok = serial == parallel && serial.size() == ref.size();
    std::size_t i = 0;
    for (const auto& [v, c] : ref) {
        if (!ok) break;
        auto row = serial.value(i);
        ok = std::equal(row.begin(), row.end(), v.begin()) && serial.count(i) == c;
        ++i;
    }
    std::printf("%-28s ref %10.2f ms   engine(1thr) %10.2f ms   engine(%dthr) %10.2f ms   %s\n",
                "value_distribution", ref_ms, serial_ms, omp_get_max_threads(), parallel_ms,
                ok ? "MATCH" : "MISMATCH");
}

void bench_eval_f(bool smoke) {
    tdi::FamilySpec f;
    f.kind = tdi::FamilyKind::Parsell;
    f.d = 2;
    f.k = 2;
    tdi::TdiSystem sys = tdi::generate_family(f);
    const std::int64_t X = smoke ? 40 : 700;
    std::vector<double> alpha = {0.11, 0.237, 0.5441, 0.901, 0.037};

    auto t0 = h_clock::now();
    std::complex<double> ref = tdi::ref::eval_f(sys, alpha, X);
    double ref_ms = ms_since(t0);

    t0 = h_clock::now();
    std::complex<double> serial = tdi::eval_f(sys, alpha, X, 1'000'000'000, 1);
    double serial_ms = ms_since(t0);

    t0 = h_clock::now();
    std::complex<double> parallel =
        tdi::eval_f(sys, alpha, X, 1'000'000'000, omp_get_max_threads());
    double parallel_ms = ms_since(t0);

    bool ok = serial == parallel && std::abs(serial - ref) < 1e-6 * static_cast<double>(X * X);
    std::printf("%-28s ref %10.2f ms   engine(1thr) %10.2f ms   engine(%dthr) %10.2f ms   %s\n",
                "eval_f", ref_ms, serial_ms, omp_get_max_threads(), parallel_ms,
                ok ? "MATCH" : "MISMATCH");
}

void bench_congruence(bool smoke) {
    tdi::FamilySpec f;
    f.kind = tdi::FamilyKind::Vinogradov;
    f.k = smoke ? 2 : 3;
    tdi::TdiSystem sys = tdi::generate_family(f);
    tdi::SigmaWitness witness = tdi::find_sigma(sys);
    const std::int64_t p = smoke ? 3 : 5;
    std::vector<int> signs(sys.rank(), 1);
    std::vector<std::int64_t> xi(sys.dimension, 1), eta(sys.dimension, 0);

    tdi::CongruenceInstance inst;
    inst.system = &sys;
    inst.sigma = witness.sigma;
    inst.signs = signs;
    inst.p = p;
    inst.a = 0;
    inst.b = 1;
    inst.m.assign(sys.rank(), 1);
    for (std::size_t j = 0; j < sys.rank(); ++j)
        inst.m[j] = tdi::ipow_checked(p, static_cast<unsigned>(sys.degrees[j]), "bench");
    inst.xi = xi;
    inst.eta = eta;

    auto t0 = h_clock::now();
    tdi::BigInt ref = tdi::ref::congruence_count_by_definition(inst);
    double ref_ms = ms_since(t0);

    t0 = h_clock::now();
    tdi::CongruenceHistogram serial =
        tdi::count_congruence_histogram(sys, witness.sigma, signs, p, 0, 1, xi, eta, 100'000'000, 1);
    double serial_ms = ms_since(t0);

    t0 = h_clock::now();
    tdi::CongruenceHistogram parallel = tdi::count_congruence_histogram(
        sys, witness.sigma, signs, p, 0, 1, xi, eta, 100'000'000, omp_get_max_threads());
    double parallel_ms = ms_since(t0);

    bool ok = serial.counts == parallel.counts &&
              tdi::bigint_from_u64(serial.counts[serial.index_of(inst.m)]) == ref;
    std::printf("%-28s ref %10.2f ms   engine(1thr) %10.2f ms   engine(%dthr) %10.2f ms   %s\n",
                "congruence_histogram", ref_ms, serial_ms, omp_get_max_threads(), parallel_ms,
                ok ? "MATCH" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    bool smoke = argc > 1 && std::strcmp(argv[1], "--smoke") == 0;
    std::printf("threads available: %d\n", omp_get_max_threads());
    bench_distribution(smoke);
    bench_eval_f(smoke);
    bench_congruence(smoke);
    return 0;
}
