#include "tdi/families.hpp"

#include <sstream>

namespace tdi {

std::string FamilySpec::name() const {
    switch (kind) {
        case FamilyKind::Vinogradov: return "vinogradov";
        case FamilyKind::Parsell: return "parsell";
        case FamilyKind::Akc: return "akc";
        case FamilyKind::Binary: return "binary";
    }
    return "?";
}

std::string FamilySpec::params() const {
    std::ostringstream os;
    switch (kind) {
        case FamilyKind::Vinogradov: os << "k=" << k; break;
        case FamilyKind::Parsell: os << "d=" << d << " k=" << k; break;
        case FamilyKind::Akc: os << "d=" << d << " l=" << l; break;
        case FamilyKind::Binary: os << "k1=" << k1 << " k2=" << k2; break;
    }
    return os.str();
}

std::size_t FamilySpec::dimension() const {
    switch (kind) {
        case FamilyKind::Vinogradov: return 1;
        case FamilyKind::Parsell: return static_cast<std::size_t>(d);
        case FamilyKind::Akc: return static_cast<std::size_t>(d);
        case FamilyKind::Binary: return 2;
    }
    return 0;
}

FamilySpec FamilySpec::parse(const std::string& text) {
    std::istringstream is(text);
    std::string name;
    is >> name;
    FamilySpec spec;
    if (name == "vinogradov") spec.kind = FamilyKind::Vinogradov;
    else if (name == "parsell") spec.kind = FamilyKind::Parsell;
    else if (name == "akc") spec.kind = FamilyKind::Akc;
    else if (name == "binary") spec.kind = FamilyKind::Binary;
    else throw ParseError("unknown family '" + name + "'");

    std::string kv;
    while (is >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw ParseError("family parameter needs key=value: " + kv);
        std::string key = kv.substr(0, eq);
        std::int64_t value = std::stoll(kv.substr(eq + 1));
        if (value < 1) throw ParseError("family parameter must be positive: " + kv);
        if (key == "d") spec.d = value;
        else if (key == "k") spec.k = value;
        else if (key == "l") spec.l = value;
        else if (key == "k1") spec.k1 = value;
        else if (key == "k2") spec.k2 = value;
        else throw ParseError("unknown family parameter '" + key + "'");
    }
    return spec;
}

SystemStats closed_form_stats(const FamilySpec& f) {
    SystemStats out;
    switch (f.kind) {
        case FamilyKind::Vinogradov: {
            out.rank = f.k;
            out.weight = BigInt(f.k) * (f.k + 1) / 2;
            break;
        }
        case FamilyKind::Parsell: {
            // r = binom(k+d, d) - 1 and K = (d/(d+1)) (r+1) k.
            unsigned long k = static_cast<unsigned long>(f.k);
            unsigned long d = static_cast<unsigned long>(f.d);
            BigInt rp1 = binomial(k + d, d);
            out.rank = rp1 - 1;
            BigInt num = BigInt(f.d) * rp1 * f.k;
            if (num % (f.d + 1) != 0)
                throw ArithmeticError("closed_form_stats: weight formula not integral");
            out.weight = num / (f.d + 1);
            break;
        }
        case FamilyKind::Akc: {
            // r = (l+1)^d - 1 and K = d l (l+1)^d / 2.
            BigInt lp1 = bigint_pow(BigInt(f.l + 1), static_cast<unsigned long>(f.d));
            out.rank = lp1 - 1;
            BigInt num = BigInt(f.d) * f.l * lp1;
            if (num % 2 != 0) throw ArithmeticError("closed_form_stats: weight formula not integral");
            out.weight = num / 2;
            break;
        }
        case FamilyKind::Binary: {
            // r = (k1+1)(k2+1) - 1 and K = (k1+k2)(k1+1)(k2+1) / 2.
            BigInt prod = BigInt(f.k1 + 1) * (f.k2 + 1);
            out.rank = prod - 1;
            BigInt num = BigInt(f.k1 + f.k2) * prod;
            if (num % 2 != 0) throw ArithmeticError("closed_form_stats: weight formula not integral");
            out.weight = num / 2;
            break;
        }
    }
    return out;
}

std::vector<Polynomial> family_seeds(const FamilySpec& f) {
    std::vector<Polynomial> seeds;
    switch (f.kind) {
        case FamilyKind::Vinogradov: {
            MultiIndex a(1);
            a[0] = static_cast<std::int32_t>(f.k);
            seeds.push_back(Polynomial::monomial(a, Rational(1)));
            break;
        }
        case FamilyKind::Parsell: {
            // All monomials of total degree exactly k in d variables.
            std::size_t d = static_cast<std::size_t>(f.d);
            MultiIndex a(d);
            a[0] = static_cast<std::int32_t>(f.k);
            while (true) {
                if (a.total_degree() == f.k) seeds.push_back(Polynomial::monomial(a, Rational(1)));
                std::size_t i = 0;
                while (i < d) {
                    a[i] += 1;
                    if (a.total_degree() <= f.k) break;
                    a[i] = 0;
                    ++i;
                }
                if (i == d) break;
            }
            break;
        }
        case FamilyKind::Akc: {
            MultiIndex a(static_cast<std::size_t>(f.d));
            for (std::size_t i = 0; i < a.dimension(); ++i) a[i] = static_cast<std::int32_t>(f.l);
            seeds.push_back(Polynomial::monomial(a, Rational(1)));
            break;
        }
        case FamilyKind::Binary: {
            MultiIndex a(2);
            a[0] = static_cast<std::int32_t>(f.k1);
            a[1] = static_cast<std::int32_t>(f.k2);
            seeds.push_back(Polynomial::monomial(a, Rational(1)));
            break;
        }
    }
    return seeds;
}

TdiSystem generate_family(const FamilySpec& f) { return generate_from_seeds(family_seeds(f)); }

}  // namespace tdi
