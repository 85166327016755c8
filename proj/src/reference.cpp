#include "tdi/reference.hpp"

#include <cmath>

namespace tdi::ref {

ValueMap convolve(const ValueMap& a, const ValueMap& b) {
    ValueMap out;
    for (const auto& [u, cu] : a)
        for (const auto& [v, cv] : b) {
            std::vector<std::int64_t> w(u.size());
            for (std::size_t j = 0; j < u.size(); ++j) w[j] = u[j] + v[j];
            out[w] += cu * cv;
        }
    return out;
}

ValueMap distribution(const TdiSystem& sys, int s, std::int64_t X) {
    ValueMap base;
    std::vector<std::int64_t> x(sys.dimension, 1);
    while (true) {
        std::vector<std::int64_t> v(sys.rank());
        for (std::size_t j = 0; j < sys.rank(); ++j) v[j] = sys.forms[j].evaluate_i64(x);
        base[v] += 1;
        std::size_t i = 0;
        while (i < sys.dimension) {
            if (++x[i] <= X) break;
            x[i] = 1;
            ++i;
        }
        if (i == sys.dimension) break;
    }
    ValueMap acc = base;
    for (int i = 2; i <= s; ++i) acc = convolve(acc, base);
    return acc;
}

std::complex<double> eval_f(const TdiSystem& sys, const std::vector<double>& alpha,
                            std::int64_t X) {
    const long double two_pi = 6.283185307179586476925286766559L;
    long double re = 0, im = 0;
    std::vector<std::int64_t> x(sys.dimension, 1);
    while (true) {
        long double t = 0;
        for (std::size_t j = 0; j < sys.rank(); ++j) {
            long double phase = static_cast<long double>(alpha[j]) *
                                static_cast<long double>(sys.forms[j].evaluate_i64(x));
            t += phase - std::floor(phase);
        }
        re += std::cos(two_pi * t);
        im += std::sin(two_pi * t);
        std::size_t i = 0;
        while (i < sys.dimension) {
            if (++x[i] <= X) break;
            x[i] = 1;
            ++i;
        }
        if (i == sys.dimension) break;
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

BigInt congruence_count_by_definition(const CongruenceInstance& inst, std::uint64_t budget) {
    const TdiSystem& sys = *inst.system;
    const std::size_t d = sys.dimension;
    const std::size_t r = sys.rank();
    const std::int64_t side = ipow_checked(inst.p, static_cast<unsigned>(sys.degree * inst.b),
                                           "congruence_count_by_definition side");
    unsigned __int128 space = 1;
    for (std::size_t i = 0; i < r * d; ++i) {
        space *= static_cast<unsigned __int128>(side);
        if (space > budget) throw BudgetError("congruence_count_by_definition: space exceeds budget");
    }
    const std::int64_t pa = ipow_checked(inst.p, static_cast<unsigned>(inst.a), "p^a");
    const std::int64_t delta_mod = ipow_checked(
        inst.p,
        static_cast<unsigned>((sys.weight - static_cast<std::int64_t>(r)) * inst.a + 1),
        "delta mod");
    std::vector<std::int64_t> moduli(r);
    for (std::size_t j = 0; j < r; ++j)
        moduli[j] =
            ipow_checked(inst.p, static_cast<unsigned>(sys.degrees[j] * inst.b), "moduli");

    std::vector<std::vector<Polynomial>> ders(r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t l = 1; l <= d; ++l) ders[j].push_back(sys.forms[j].partial_derivative(l));

    BigInt count(0);
    std::vector<std::int64_t> z(r * d, 1);
    while (true) {
        bool ok = true;
        // Congruence-class condition z_i == xi mod p^a.
        for (std::size_t i = 0; i < r && ok; ++i)
            for (std::size_t m = 0; m < d && ok; ++m)
                if ((z[i * d + m] - inst.xi[m]) % pa != 0) ok = false;
        // Target condition on the signed sums.
        for (std::size_t j = 0; j < r && ok; ++j) {
            __int128 sum = 0;
            for (std::size_t i = 0; i < r; ++i) {
                std::vector<std::int64_t> shifted(d);
                for (std::size_t m = 0; m < d; ++m) shifted[m] = z[i * d + m] - inst.eta[m];
                sum += static_cast<__int128>(inst.signs[i]) *
                       sys.forms[j].evaluate_i64(shifted);
            }
            __int128 target = sum - inst.m[j];
            if (target % moduli[j] != 0) ok = false;
        }
        // Jacobian condition.
        if (ok) {
            RationalMatrix jac(r, r);
            for (std::size_t i = 0; i < r; ++i) {
                std::vector<Rational> point(d);
                for (std::size_t m = 0; m < d; ++m) point[m] = Rational(z[i * d + m]);
                for (std::size_t j = 0; j < r; ++j)
                    jac.at(i, j) = ders[j][inst.sigma(i + 1) - 1].evaluate(point);
            }
            Rational det = jac.determinant();
            BigInt num = det.get_num();
            if (det.get_den() != 1) ok = false;
            if (ok && mpz_divisible_ui_p(num.get_mpz_t(),
                                         static_cast<unsigned long>(delta_mod)))
                ok = false;
        }
        if (ok) count += 1;
        std::size_t i = 0;
        while (i < r * d) {
            if (++z[i] <= side) break;
            z[i] = 1;
            ++i;
        }
        if (i == r * d) break;
    }
    return count;
}

}  // namespace tdi::ref
