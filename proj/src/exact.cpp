#include "warpqm/exact.hpp"

#include "warpqm/errors.hpp"

#include <numeric>
#include <sstream>

namespace warpqm {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0 || sgn(q.get_den()) == 0) {
        throw InvalidArgument("not a rational literal: '" + text + "'");
    }
    q.canonicalize();
    return q;
}

Exponent::Exponent(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InvalidArgument("exponent with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num_ = g == 0 ? 0 : num / g;
    den_ = g == 0 ? 1 : den / g;
    if (num_ == 0) den_ = 1;
}

Exponent Exponent::from_rational(const Rational& q) {
    if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p()) {
        throw InvalidArgument("exponent out of range: " + q.get_str());
    }
    return Exponent(q.get_num().get_si(), q.get_den().get_si());
}

Exponent operator+(Exponent a, Exponent b) { return Exponent(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_); }
Exponent operator-(Exponent a, Exponent b) { return Exponent(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_); }
Exponent operator*(Exponent a, Exponent b) { return Exponent(a.num_ * b.num_, a.den_ * b.den_); }

std::strong_ordering operator<=>(const Exponent& a, const Exponent& b) {
    // denominators are positive, so cross-multiplication preserves order
    return a.num_ * b.den_ <=> b.num_ * a.den_;
}

std::string Exponent::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Complex& Complex::operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
}

Complex& Complex::operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

Complex& Complex::operator*=(const Complex& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Complex operator/(const Complex& a, const Complex& b) {
    const Rational norm = b.re * b.re + b.im * b.im;
    if (sgn(norm) == 0) throw InvalidArgument("division by zero");
    Complex num = a * b.conj();
    return {num.re / norm, num.im / norm};
}

std::string Complex::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Complex& c) {
    if (c.is_real()) return os << c.re.get_str();
    if (sgn(c.re) == 0) return os << c.im.get_str() << "*i";
    os << c.re.get_str() << (sgn(c.im) < 0 ? "-" : "+") << Rational(abs(c.im)).get_str() << "*i";
    return os;
}

Complex minus_i_power(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, -1};
        case 2: return {-1, 0};
        default: return {0, 1};
    }
}

namespace {

bool exact_integer_root(const Integer& z, unsigned n, Integer& out) {
    if (sgn(z) < 0) {
        if (n % 2 == 0) return false;
        Integer pos = -z;
        if (!exact_integer_root(pos, n, out)) return false;
        out = -out;
        return true;
    }
    return mpz_root(out.get_mpz_t(), z.get_mpz_t(), n) != 0;
}

}  // namespace

bool exact_root(const Rational& q, unsigned n, Rational& out) {
    if (n == 1) {
        out = q;
        return true;
    }
    Integer num, den;
    if (!exact_integer_root(q.get_num(), n, num)) return false;
    if (!exact_integer_root(q.get_den(), n, den)) return false;
    out = Rational(num, den);
    out.canonicalize();
    return true;
}

bool exact_power(const Rational& q, const Exponent& e, Rational& out) {
    if (e.is_zero()) {
        out = 1;
        return true;
    }
    if (sgn(q) == 0) {
        if (e.num() < 0) throw SingularPointError("zero raised to a negative power");
        out = 0;
        return true;
    }
    Rational root;
    if (!exact_root(q, static_cast<unsigned>(e.den()), root)) return false;
    const std::int64_t k = e.num() < 0 ? -e.num() : e.num();
    Rational p = 1;
    for (std::int64_t i = 0; i < k; ++i) p *= root;
    out = e.num() < 0 ? Rational(1 / p) : p;
    return true;
}

}  // namespace warpqm
