#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace warpqm {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

/// Small exact rational used for the exponents of r and rho.
class Exponent {
public:
    constexpr Exponent() = default;
    Exponent(std::int64_t num, std::int64_t den = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    bool is_even_integer() const { return den_ == 1 && num_ % 2 == 0; }
    Rational to_rational() const { return Rational(Integer(static_cast<long>(num_)), Integer(static_cast<long>(den_))); }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    static Exponent from_rational(const Rational& q);

    friend Exponent operator+(Exponent a, Exponent b);
    friend Exponent operator-(Exponent a, Exponent b);
    friend Exponent operator*(Exponent a, Exponent b);
    Exponent operator-() const { return Exponent(-num_, den_); }

    friend bool operator==(const Exponent&, const Exponent&) = default;
    friend std::strong_ordering operator<=>(const Exponent& a, const Exponent& b);

    std::string str() const;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Gaussian rational a + b i with exact parts.
struct Complex {
    Rational re;
    Rational im;

    Complex() = default;
    Complex(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
    Complex(long r) : re(r), im(0) {}

    static Complex imaginary_unit() { return {0, 1}; }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }
    Complex conj() const { return {re, -im}; }

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
    friend Complex operator/(const Complex& a, const Complex& b);
    Complex operator-() const { return {-re, -im}; }

    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

    std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const Complex& c);

/// (-i)^n
Complex minus_i_power(int n);

/// Exact rational root: returns true and sets out = q^(1/n) when it is rational.
bool exact_root(const Rational& q, unsigned n, Rational& out);

/// Exact rational power q^(num/den); false when the result is irrational.
bool exact_power(const Rational& q, const Exponent& e, Rational& out);

}  // namespace warpqm
