#include "tdi/polynomial.hpp"

#include <cctype>
#include <sstream>

namespace tdi {

Polynomial Polynomial::constant(std::size_t dimension, const Rational& c) {
    Polynomial p(dimension);
    p.add_term(MultiIndex(dimension), c);
    return p;
}

Polynomial Polynomial::monomial(const MultiIndex& a, const Rational& c) {
    Polynomial p(a.dimension());
    p.add_term(a, c);
    return p;
}

Polynomial Polynomial::variable(std::size_t dimension, std::size_t axis) {
    if (axis < 1 || axis > dimension) throw DimensionError("variable: axis out of range");
    MultiIndex a(dimension);
    a[axis - 1] = 1;
    return monomial(a, Rational(1));
}

std::int64_t Polynomial::degree() const {
    std::int64_t deg = -1;
    for (const auto& [a, c] : terms_) deg = std::max(deg, a.total_degree());
    return deg;
}

bool Polynomial::is_homogeneous() const {
    if (terms_.empty()) return true;
    std::int64_t deg = terms_.begin()->first.total_degree();
    for (const auto& [a, c] : terms_)
        if (a.total_degree() != deg) return false;
    return true;
}

const MultiIndex& Polynomial::leading_monomial() const {
    if (terms_.empty()) throw DomainError("leading_monomial: zero polynomial");
    return terms_.rbegin()->first;
}

Rational Polynomial::leading_coefficient() const {
    if (terms_.empty()) return Rational(0);
    return terms_.rbegin()->second;
}

Rational Polynomial::coefficient(const MultiIndex& a) const {
    check_key(a);
    auto it = terms_.find(a);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::set_coefficient(const MultiIndex& a, const Rational& c) {
    check_key(a);
    if (c == 0)
        terms_.erase(a);
    else
        terms_[a] = c;
}

void Polynomial::add_term(const MultiIndex& a, const Rational& c) {
    check_key(a);
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(a, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial out(dim_);
    for (const auto& [a, c] : terms_) out.terms_.emplace(a, -c);
    return out;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (dim_ != o.dim_) throw DimensionError("Polynomial+: dimension mismatch");
    Polynomial out = *this;
    for (const auto& [a, c] : o.terms_) out.add_term(a, c);
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (dim_ != o.dim_) throw DimensionError("Polynomial+=: dimension mismatch");
    for (const auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (dim_ != o.dim_) throw DimensionError("Polynomial*: dimension mismatch");
    Polynomial out(dim_);
    for (const auto& [a, ca] : terms_) {
        for (const auto& [b, cb] : o.terms_) {
            MultiIndex ab(dim_);
            for (std::size_t i = 0; i < dim_; ++i) ab[i] = a[i] + b[i];
            out.add_term(ab, ca * cb);
        }
    }
    return out;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial out(dim_);
    if (c == 0) return out;
    for (const auto& [a, ca] : terms_) out.terms_.emplace(a, ca * c);
    return out;
}

Polynomial Polynomial::pow(unsigned exp) const {
    Polynomial out = constant(dim_, Rational(1));
    for (unsigned i = 0; i < exp; ++i) out = out * *this;
    return out;
}

Polynomial Polynomial::partial_derivative(std::size_t axis) const {
    if (axis < 1 || axis > dim_) throw DimensionError("partial_derivative: axis out of range");
    Polynomial out(dim_);
    for (const auto& [a, c] : terms_) {
        if (a[axis - 1] == 0) continue;
        MultiIndex b = a;
        b[axis - 1] -= 1;
        out.add_term(b, c * Rational(a[axis - 1]));
    }
    return out;
}

Polynomial Polynomial::translate(const std::vector<Rational>& xi) const {
    if (xi.size() != dim_) throw DimensionError("translate: offset length != dimension");
    Polynomial out(dim_);
    for (const auto& [a, c] : terms_) {
        // Expand c * prod_i (x_i + xi_i)^{a_i} one factor at a time.
        Polynomial term = constant(dim_, c);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (a[i] == 0) continue;
            Polynomial factor(dim_);
            for (std::int32_t j = 0; j <= a[i]; ++j) {
                MultiIndex m(dim_);
                m[i] = j;
                factor.add_term(m, Rational(binomial(a[i], j)) *
                                       rational_pow(xi[i], a[i] - j));
            }
            term = term * factor;
        }
        out += term;
    }
    return out;
}

Polynomial Polynomial::dilate(const Rational& lambda) const {
    if (lambda == 0) throw DomainError("dilate: zero dilation factor");
    Polynomial out(dim_);
    for (const auto& [a, c] : terms_)
        out.terms_.emplace(a, c * rational_pow(lambda, a.total_degree()));
    return out;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
    if (point.size() != dim_) throw DimensionError("evaluate: point length != dimension");
    Rational sum(0);
    for (const auto& [a, c] : terms_) {
        Rational v = c;
        for (std::size_t i = 0; i < dim_; ++i)
            if (a[i]) v *= rational_pow(point[i], a[i]);
        sum += v;
    }
    return sum;
}

std::int64_t Polynomial::evaluate_i64(const std::vector<std::int64_t>& point) const {
    if (point.size() != dim_) throw DimensionError("evaluate_i64: point length != dimension");
    __int128 sum = 0;
    for (const auto& [a, c] : terms_) {
        if (c.get_den() != 1)
            throw ArithmeticError("evaluate_i64: non-integer coefficient");
        if (!c.get_num().fits_slong_p())
            throw ArithmeticError("evaluate_i64: coefficient exceeds machine range");
        __int128 v = static_cast<__int128>(c.get_num().get_si());
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::int32_t j = 0; j < a[i]; ++j) {
                v *= point[i];
                if (v > static_cast<__int128>(INT64_MAX) * 4 ||
                    v < static_cast<__int128>(INT64_MIN) * 4)
                    throw ArithmeticError("evaluate_i64: intermediate overflow");
            }
        sum += v;
    }
    return to_i64_checked(sum, "evaluate_i64");
}

std::int64_t Polynomial::evaluate_mod(const std::vector<std::int64_t>& point,
                                      std::int64_t modulus) const {
    if (point.size() != dim_) throw DimensionError("evaluate_mod: point length != dimension");
    if (modulus < 1) throw DomainError("evaluate_mod: modulus must be positive");
    auto norm = [&](__int128 v) {
        std::int64_t m = static_cast<std::int64_t>(v % modulus);
        return m < 0 ? m + modulus : m;
    };
    std::int64_t sum = 0;
    for (const auto& [a, c] : terms_) {
        if (c.get_den() != 1) throw ArithmeticError("evaluate_mod: non-integer coefficient");
        std::int64_t v = norm(mpz_fdiv_ui(c.get_num().get_mpz_t(),
                                          static_cast<unsigned long>(modulus)));
        for (std::size_t i = 0; i < dim_; ++i) {
            std::int64_t base = norm(point[i]);
            for (std::int32_t j = 0; j < a[i]; ++j)
                v = norm(static_cast<__int128>(v) * base);
        }
        sum = norm(static_cast<__int128>(sum) + v);
    }
    return sum;
}

double Polynomial::evaluate_double(const std::vector<double>& point) const {
    if (point.size() != dim_) throw DimensionError("evaluate_double: point length != dimension");
    double sum = 0;
    for (const auto& [a, c] : terms_) {
        double v = c.get_d();
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::int32_t j = 0; j < a[i]; ++j) v *= point[i];
        sum += v;
    }
    return sum;
}

Polynomial Polynomial::primitive_integer_form() const {
    if (terms_.empty()) return *this;
    BigInt den_lcm(1), num_gcd(0);
    for (const auto& [a, c] : terms_) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (leading_coefficient() < 0) scale = -scale;
    return *this * scale;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0/1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << format_rational(c);
        for (std::size_t i = 0; i < dim_; ++i)
            if (a[i]) os << " * z" << (i + 1) << "^" << a[i];
    }
    return os.str();
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("polynomial: " + what + " at offset " + std::to_string(pos));
    }
    long integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            fail("expected integer");
        return std::stol(s.substr(start, pos - start));
    }
    BigInt big_integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) fail("expected integer");
        return BigInt(s.substr(start, pos - start));
    }
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text, std::size_t dimension) {
    Polynomial out(dimension);
    Cursor cur{text};
    bool negate_next = false;
    while (true) {
        BigInt num = cur.big_integer();
        BigInt den(1);
        if (cur.eat('/')) {
            den = cur.big_integer();
            if (den == 0) cur.fail("zero denominator");
        }
        Rational c(num, den);
        c.canonicalize();
        if (negate_next) c = -c;
        MultiIndex a(dimension);
        while (cur.eat('*')) {
            cur.skip_ws();
            if (cur.pos >= text.size() || text[cur.pos] != 'z') cur.fail("expected variable");
            ++cur.pos;
            long var = cur.integer();
            if (var < 1 || static_cast<std::size_t>(var) > dimension)
                cur.fail("variable index out of range");
            long exp = 1;
            if (cur.eat('^')) exp = cur.integer();
            if (exp < 0) cur.fail("negative exponent");
            a[var - 1] += static_cast<std::int32_t>(exp);
        }
        // Allow bare juxtaposed variables after the first '*': "3/1 * z1^2 z2".
        cur.skip_ws();
        while (cur.pos < text.size() && text[cur.pos] == 'z') {
            ++cur.pos;
            long var = cur.integer();
            if (var < 1 || static_cast<std::size_t>(var) > dimension)
                cur.fail("variable index out of range");
            long exp = 1;
            if (cur.eat('^')) exp = cur.integer();
            if (exp < 0) cur.fail("negative exponent");
            a[var - 1] += static_cast<std::int32_t>(exp);
            cur.skip_ws();
        }
        out.add_term(a, c);
        if (cur.done()) break;
        if (cur.eat('+')) {
            negate_next = false;
        } else if (cur.eat('-')) {
            negate_next = true;
        } else {
            cur.fail("expected '+' or '-'");
        }
    }
    return out;
}

}  // namespace tdi
