#include "tdi/iteration.hpp"

#include <cmath>

#include "tdi/errors.hpp"

namespace tdi {

double ThetaValue::value() const {
    return std::pow(base.get_d(), static_cast<double>(expo)) / std::sqrt(N.get_d());
}

IterationTrace run_iteration(const IterationParams& params) {
    if (params.r < 2) throw InputError("run_iteration: r must be at least 2");
    if (params.k < 2) throw InputError("run_iteration: k must be at least 2");
    if (params.N < 1) throw InputError("run_iteration: N must be positive");
    if (params.policy == HPolicy::Custom &&
        params.custom_h.size() != static_cast<std::size_t>(params.N))
        throw InputError("run_iteration: custom policy needs exactly N values");

    Rational ratio(params.s(), params.r);  // s/r = k
    ratio.canonicalize();
    const Rational gamma_coeff(2 * params.s() - params.r + 1);

    Rational theta_base(params.r, params.s());
    theta_base.canonicalize();
    IterationTrace trace;
    trace.params = params;
    trace.theta = ThetaValue{BigInt(params.N), theta_base, params.N + 2};

    IterationStep step;
    step.a = 0;
    step.b = 1;
    step.psi = 0;
    step.c = 1;
    step.gamma = 0;
    for (std::int64_t n = 0; n < params.N; ++n) {
        BigInt h_max = BigInt(params.k - 1) * step.b;
        switch (params.policy) {
            case HPolicy::Zero: step.h = 0; break;
            case HPolicy::Max: step.h = h_max; break;
            case HPolicy::Custom: step.h = params.custom_h[static_cast<std::size_t>(n)]; break;
        }
        if (step.h < 0 || step.h > h_max)
            throw InputError("run_iteration: h_n outside 0..(k-1)b_n at step " + std::to_string(n));
        trace.steps.push_back(step);

        IterationStep next;
        next.a = step.b;
        next.b = params.k * step.b + step.h;
        next.psi = ratio * step.psi + (ratio - 1) * Rational(step.b);
        next.c = ratio * (step.c + 1);
        next.gamma = ratio * step.gamma + gamma_coeff * Rational(step.h);
        next.h = 0;
        step = next;
    }
    trace.steps.push_back(step);
    return trace;
}

ClosedFormReport verify_closed_forms(const IterationTrace& trace) {
    const IterationParams& p = trace.params;
    Rational ratio(p.s(), p.r);
    ratio.canonicalize();
    const Rational gamma_coeff(2 * p.s() - p.r + 1);
    ClosedFormReport report;

    Rational ratio_pow(1);
    for (std::size_t n = 0; n < trace.steps.size(); ++n) {
        const IterationStep& step = trace.steps[n];
        Rational expected_gamma = gamma_coeff * (Rational(step.b) - ratio_pow);
        if (step.gamma != expected_gamma) {
            report.gamma_identity_ok = false;
            report.violations.push_back("gamma closed form fails at step " + std::to_string(n));
        }
        if (step.c > 3 * ratio_pow) {
            report.c_bound_ok = false;
            report.violations.push_back("c bound fails at step " + std::to_string(n));
        }
        // b_n < sqrt(N) (s/r)^n, compared on squares to stay exact.
        Rational lhs = Rational(step.b) * Rational(step.b);
        Rational rhs = Rational(p.N) * ratio_pow * ratio_pow;
        if (!(lhs < rhs)) {
            report.b_bound_ok = false;
            report.violations.push_back("b growth bound fails at step " + std::to_string(n));
        }
        // psi_n >= n (k-1) k^{n-1}.
        if (n >= 1) {
            BigInt floor_bound = BigInt(n) * (p.k - 1) *
                                 bigint_pow(BigInt(p.k), static_cast<unsigned long>(n - 1));
            if (step.psi < Rational(floor_bound)) {
                report.psi_bound_ok = false;
                report.violations.push_back("psi lower bound fails at step " + std::to_string(n));
            }
        }
        ratio_pow *= ratio;
    }
    return report;
}

bool EtaBound::is_exact() const {
    return mpz_perfect_square_p(N.get_mpz_t()) != 0;
}

Rational EtaBound::exact_value() const {
    if (!is_exact()) throw DomainError("EtaBound: N is not a perfect square");
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), N.get_mpz_t());
    Rational out(numerator, root);
    out.canonicalize();
    return out;
}

Rational EtaBound::squared() const {
    Rational out(numerator * numerator, N);
    out.canonicalize();
    return out;
}

double EtaBound::value() const { return numerator.get_d() / std::sqrt(N.get_d()); }

EtaBound eta_bound(std::int64_t r, std::int64_t k, std::int64_t N) {
    if (r < 1 || k < 1 || N < 1) throw InputError("eta_bound: arguments must be positive");
    return EtaBound{BigInt(r) * bigint_pow(BigInt(k), 4), BigInt(N)};
}

}  // namespace tdi
