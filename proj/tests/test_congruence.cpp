#include <doctest.h>

#include "tdi/congruence.hpp"
#include "tdi/reference.hpp"
#include "test_helpers.hpp"

using namespace tdi;

namespace {

CongruenceInstance make_instance(const TdiSystem& sys, const SigmaMap& sigma,
                                 std::vector<int> signs, std::int64_t p, int a, int b,
                                 std::vector<std::int64_t> m) {
    CongruenceInstance inst;
    inst.system = &sys;
    inst.sigma = sigma;
    inst.signs = std::move(signs);
    inst.p = p;
    inst.a = a;
    inst.b = b;
    inst.m = std::move(m);
    inst.xi.assign(sys.dimension, 1);
    inst.eta.assign(sys.dimension, 0);
    return inst;
}

}  // namespace

TEST_CASE("count_congruence_set agrees with the definitional enumeration") {
    auto rng = test::make_rng(71);
    for (const FamilySpec& fam : {test::vinogradov(2), test::akc(2, 1)}) {
        TdiSystem sys = generate_family(fam);
        SigmaWitness w = find_sigma(sys);
        for (std::int64_t p : {2, 3}) {
            for (int iter = 0; iter < 4; ++iter) {
                std::vector<int> signs(sys.rank());
                for (auto& s : signs) s = test::rand_int(rng, 0, 1) ? 1 : -1;
                std::vector<std::int64_t> m(sys.rank());
                for (std::size_t j = 0; j < sys.rank(); ++j) {
                    std::int64_t mod = ipow_checked(p, static_cast<unsigned>(sys.degrees[j]), "t");
                    m[j] = test::rand_int(rng, 1, mod);
                }
                CongruenceInstance inst = make_instance(sys, w.sigma, signs, p, 0, 1, m);
                for (auto& e : inst.eta) e = test::rand_int(rng, 0, p - 1);
                CHECK(count_congruence_set(inst) == ref::congruence_count_by_definition(inst));
            }
        }
    }
}

TEST_CASE("count_congruence_set: frozen values for the quadratic system at p=3") {
    // z1, z2 in 1..9 with 2(z2 - z1) nonzero mod 3. For the zero target
    // (z1 + z2 == 0 mod 3, z1^2 + z2^2 == 0 mod 9) the residue classes force
    // z1^2 + z2^2 == 2 mod 3, so no pair qualifies. For target (1, 1) the
    // admissible pairs are (z1, z2) in {3,6,9} x {1} and {1} x {3,6,9}.
    TdiSystem vin2 = generate_family(test::vinogradov(2));
    SigmaWitness w = find_sigma(vin2);
    CongruenceInstance zero_target = make_instance(vin2, w.sigma, {1, 1}, 3, 0, 1, {3, 9});
    CHECK(count_congruence_set(zero_target) == ref::congruence_count_by_definition(zero_target));
    CHECK(count_congruence_set(zero_target) == 0);

    CongruenceInstance one_target = make_instance(vin2, w.sigma, {1, 1}, 3, 0, 1, {1, 1});
    CHECK(count_congruence_set(one_target) == ref::congruence_count_by_definition(one_target));
    CHECK(count_congruence_set(one_target) == 6);
}

TEST_CASE("count_congruence_set at level a = 1 matches the definition") {
    // Exercises the congruence-class substitution z = xi + p^a (y-1) with a
    // real class constraint and the stronger Jacobian modulus p^{(K-r)a+1}.
    auto rng = test::make_rng(113);
    TdiSystem vin2 = generate_family(test::vinogradov(2));
    SigmaWitness w = find_sigma(vin2);
    for (std::int64_t p : {2, 3}) {
        for (std::int64_t xi = 1; xi <= p; ++xi) {
            for (int iter = 0; iter < 3; ++iter) {
                CongruenceInstance inst;
                inst.system = &vin2;
                inst.sigma = w.sigma;
                inst.signs = {test::rand_int(rng, 0, 1) ? 1 : -1,
                              test::rand_int(rng, 0, 1) ? 1 : -1};
                inst.p = p;
                inst.a = 1;
                inst.b = 2;
                std::int64_t m1_mod = p * p;          // p^{k_1 b}
                std::int64_t m2_mod = p * p * p * p;  // p^{k_2 b}
                inst.m = {test::rand_int(rng, 1, m1_mod), test::rand_int(rng, 1, m2_mod)};
                inst.xi = {xi};
                inst.eta = {test::rand_int(rng, 0, p * p - 1)};
                CHECK(count_congruence_set(inst) == ref::congruence_count_by_definition(inst));
            }
        }
    }
}

TEST_CASE("histogram partitions the admissible set") {
    TdiSystem vin2 = generate_family(test::vinogradov(2));
    SigmaWitness w = find_sigma(vin2);
    for (std::int64_t p : {2, 3, 5}) {
        CongruenceHistogram hist = count_congruence_histogram(vin2, w.sigma, {1, -1}, p, 0, 1, {1}, {0});
        std::uint64_t total = 0;
        for (std::uint64_t c : hist.counts) total += c;
        CHECK(total == hist.admissible_tuples);
    }
}

TEST_CASE("identically singular reduction kills every count") {
    // At p = 2 the quadratic-system Jacobian 2(z2 - z1) is divisible by 2
    // everywhere, so no tuple is admissible and all counts vanish.
    TdiSystem vin2 = generate_family(test::vinogradov(2));
    SigmaWitness w = find_sigma(vin2);
    CongruenceHistogram hist = count_congruence_histogram(vin2, w.sigma, {1, 1}, 2, 0, 1, {1}, {0});
    CHECK(hist.admissible_tuples == 0);
    for (std::uint64_t c : hist.counts) CHECK(c == 0);
}

TEST_CASE("congruence_count_bound worked examples") {
    TdiSystem vin2 = generate_family(test::vinogradov(2));
    CHECK(congruence_count_bound(vin2, 3, 0, 1) == 6);  // 1*2 * 3^{4-3}

    TdiSystem akc21 = generate_family(test::akc(2, 1));
    CHECK(congruence_count_bound(akc21, 2, 0, 1) == 512);  // 1*1*2 * 2^{12-4}

    // The exponent stays non-negative over the family grid at (a,b) = (0,1)
    // and (1,2).
    for (const FamilySpec& fam : test::example_families()) {
        TdiSystem sys = generate_family(fam);
        CHECK_NOTHROW(congruence_count_bound(sys, 2, 0, 1));
        CHECK_NOTHROW(congruence_count_bound(sys, 2, 1, 2));
    }
}

TEST_CASE("bound holds over an enumerable sweep") {
    auto rng = test::make_rng(127);
    for (const FamilySpec& fam : {test::vinogradov(2), test::vinogradov(3), test::akc(2, 1)}) {
        TdiSystem sys = generate_family(fam);
        SigmaWitness w = find_sigma(sys);
        for (std::int64_t p : {2, 3}) {
            BigInt bound = congruence_count_bound(sys, p, 0, 1);
            std::vector<std::int64_t> zero_eta(sys.dimension, 0);
            std::vector<std::int64_t> random_eta(sys.dimension);
            for (auto& e : random_eta) e = test::rand_int(rng, 0, 3 * p);
            for (const auto& eta : {zero_eta, random_eta}) {
                auto hists = count_congruence_histogram_all_signs(
                    sys, w.sigma, p, 0, 1, std::vector<std::int64_t>(sys.dimension, 1), eta);
                for (const auto& hist : hists)
                    for (std::uint64_t c : hist.counts) CHECK(bigint_from_u64(c) <= bound);
            }
        }
    }
}

TEST_CASE("count_congruence_set is invariant under consistent (eta, m) translation") {
    // Shifting eta by p^b w multiplies into the targets through the
    // translation matrix: m'_j = sum_l C_{jl}(-p^b w) m_l + (sum_i sign_i) c0_j.
    auto rng = test::make_rng(73);
    int checked = 0;
    for (const FamilySpec& fam : {test::vinogradov(2), test::vinogradov(3), test::akc(2, 1)}) {
        TdiSystem sys = generate_family(fam);
        SigmaWitness w = find_sigma(sys);
        const std::size_t r = sys.rank();
        const std::size_t d = sys.dimension;
        for (std::int64_t p : {2, 3}) {
            const int b = 1;
            std::int64_t pb = p;
            for (int iter = 0; iter < 2; ++iter) {
                std::vector<int> signs(r);
                int sign_sum = 0;
                for (auto& s : signs) {
                    s = test::rand_int(rng, 0, 1) ? 1 : -1;
                    sign_sum += s;
                }
                std::vector<std::int64_t> m(r), moduli(r);
                for (std::size_t j = 0; j < r; ++j) {
                    moduli[j] = ipow_checked(p, static_cast<unsigned>(sys.degrees[j] * b), "t");
                    m[j] = test::rand_int(rng, 1, moduli[j]);
                }
                std::vector<std::int64_t> eta(d), shift_w(d);
                for (auto& e : eta) e = test::rand_int(rng, 0, p - 1);
                for (auto& v : shift_w) v = test::rand_int(rng, 1, 2);

                CongruenceInstance base = make_instance(sys, w.sigma, signs, p, 0, b, m);
                base.eta = eta;

                // Transformed instance: eta' = eta + p^b w and m' through the
                // decomposition at shift -p^b w.
                std::vector<std::int64_t> neg_shift(d);
                for (std::size_t i = 0; i < d; ++i) neg_shift[i] = -pb * shift_w[i];
                TranslationDecomposition dec = verify_translation_invariance(sys, neg_shift);
                CongruenceInstance moved = base;
                for (std::size_t i = 0; i < d; ++i) moved.eta[i] = eta[i] + pb * shift_w[i];
                for (std::size_t j = 0; j < r; ++j) {
                    Rational acc = Rational(sign_sum) * dec.c0[j];
                    for (std::size_t l = 0; l < r; ++l) acc += dec.C.at(j, l) * Rational(m[l]);
                    REQUIRE(acc.get_den() == 1);
                    std::int64_t v = static_cast<std::int64_t>(
                        mpz_fdiv_ui(acc.get_num().get_mpz_t(),
                                    static_cast<unsigned long>(moduli[j])));
                    moved.m[j] = v == 0 ? moduli[j] : v;
                }
                CHECK(count_congruence_set(base) == count_congruence_set(moved));
                ++checked;
            }
        }
    }
    CHECK(checked >= 12);
}

TEST_CASE("hensel_count worked examples") {
    // x^2 - 1 mod 3^2: roots 1 and 8, derivative 2x coprime to 3.
    HenselInstance sq;
    sq.polys = {Polynomial::parse("1/1 * z1^2 - 1/1", 1)};
    sq.prime = 3;
    sq.level = 2;
    CHECK(hensel_count(sq) == 2);

    // x^2: the only root is singular.
    HenselInstance singular;
    singular.polys = {Polynomial::parse("1/1 * z1^2", 1)};
    singular.prime = 5;
    singular.level = 1;
    CHECK(hensel_count(singular) == 0);

    // Linear: one root, unit Jacobian.
    HenselInstance lin;
    lin.polys = {Polynomial::parse("1/1 * z1^1", 1)};
    lin.prime = 5;
    lin.level = 3;
    CHECK(hensel_count(lin) == 1);
}

TEST_CASE("hensel_count stays below the degree product on a manifest") {
    struct Entry {
        std::vector<std::string> polys;
        std::int64_t prime;
        int level;
    };
    // 20+ instances mixing univariate and multivariate systems.
    std::vector<Entry> manifest;
    for (std::int64_t p : {2, 3, 5}) {
        manifest.push_back({{"1/1 * z1^2 - 1/1"}, p, 1});
        manifest.push_back({{"1/1 * z1^2 - 1/1"}, p, 2});
        manifest.push_back({{"1/1 * z1^3 - 1/1 * z1^1"}, p, 1});
        manifest.push_back({{"1/1 * z1^2 + 1/1 * z1^1 + 1/1"}, p, 2});
        manifest.push_back({{"1/1 * z1^1 + 1/1 * z2^1", "1/1 * z1^1 * z2^1 - 1/1"}, p, 1});
        manifest.push_back({{"1/1 * z1^2 + 1/1 * z2^2 - 1/1", "1/1 * z1^1 - 1/1 * z2^1"}, p, 1});
        manifest.push_back({{"1/1 * z1^2 - 1/1 * z2^1", "1/1 * z2^2 - 1/1 * z1^1"}, p, 2});
    }
    int checked = 0;
    for (const Entry& e : manifest) {
        HenselInstance inst;
        std::size_t t = e.polys.size();
        for (const std::string& s : e.polys) inst.polys.push_back(Polynomial::parse(s, t));
        inst.prime = e.prime;
        inst.level = e.level;
        BigInt degree_product(1);
        for (const auto& f : inst.polys) degree_product *= f.degree();
        CHECK(hensel_count(inst) <= degree_product);
        ++checked;
    }
    CHECK(checked >= 20);
}

TEST_CASE("budget refusals") {
    TdiSystem par22 = generate_family(test::parsell(2, 2));
    SigmaWitness w = find_sigma(par22);
    // 3^20 tuples exceeds the default enumeration budget.
    CHECK_THROWS_AS(count_congruence_histogram(par22, w.sigma, std::vector<int>(5, 1), 3, 0, 1,
                                               {1, 1}, {0, 0}),
                    BudgetError);

    HenselInstance big;
    big.polys = {Polynomial::parse("1/1 * z1^2 - 1/1", 1)};
    big.prime = 1009;
    big.level = 3;
    CHECK_THROWS_AS(hensel_count(big), BudgetError);
}

TEST_CASE("verify_delta_scaling") {
    auto rng = test::make_rng(79);
    for (const FamilySpec& fam : test::example_families()) {
        TdiSystem sys = generate_family(fam);
        SigmaWitness w = find_sigma(sys);
        const std::size_t r = sys.rank();
        const std::size_t d = sys.dimension;

        // t = 1 is pure translation invariance; t = 0 degenerates to zero on
        // both sides when r >= 2.
        std::vector<std::vector<Rational>> pts;
        for (std::size_t i = 0; i < r; ++i) pts.push_back(test::rand_point(rng, d, -4, 4));
        CHECK(verify_delta_scaling(sys, w.sigma, Rational(1), pts,
                                   test::rand_point(rng, d, -4, 4)));
        CHECK(verify_delta_scaling(sys, w.sigma, Rational(0), pts,
                                   test::rand_point(rng, d, -4, 4)));

        for (int iter = 0; iter < 100; ++iter) {
            std::vector<std::vector<Rational>> points;
            for (std::size_t i = 0; i < r; ++i)
                points.push_back(test::rand_point(rng, d, -5, 5));
            Rational t(test::rand_int(rng, -3, 3));
            if (t == 0) t = Rational(2);
            CHECK(verify_delta_scaling(sys, w.sigma, t, points, test::rand_point(rng, d, -5, 5)));
        }
    }
}
