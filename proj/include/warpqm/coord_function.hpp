#pragma once

#include "warpqm/exact.hpp"

#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace warpqm {

/// Spatial axis, 0-based: X1 -> 0, X2 -> 1, X3 -> 2.
using Axis = int;
inline constexpr int kDim = 3;

/// Product of named physical constants with integer exponents, sorted by name.
class ConstMonomial {
public:
    ConstMonomial() = default;
    static ConstMonomial symbol(const std::string& name, int power = 1);

    const std::vector<std::pair<std::string, int>>& factors() const { return factors_; }
    bool empty() const { return factors_.empty(); }
    int degree_of(const std::string& name) const;

    ConstMonomial operator*(const ConstMonomial& o) const;
    ConstMonomial inverse() const;
    ConstMonomial pow(int k) const;

    friend bool operator==(const ConstMonomial&, const ConstMonomial&) = default;
    friend auto operator<=>(const ConstMonomial&, const ConstMonomial&) = default;

private:
    std::vector<std::pair<std::string, int>> factors_;
};

/// Structural key of one CoordFunction term: constants * x1^a1 x2^a2 x3^a3 * r^p * rho^q.
struct Monomial {
    ConstMonomial constants;
    std::array<int, kDim> x{0, 0, 0};
    Exponent r;
    Exponent rho;

    bool is_coordinate_free() const { return x == std::array<int, kDim>{0, 0, 0} && r.is_zero() && rho.is_zero(); }
    Monomial operator*(const Monomial& o) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// A SymbolicScalar: exact Gaussian-rational coefficient times a constant monomial.
struct SymbolicScalar {
    Complex coefficient{1};
    ConstMonomial constants;
};

/// Finite sum of exact terms c * x^a * r^p * rho^q with r = |x| and rho = sqrt(x2^2 + x3^2).
/// Terms with equal structure are merged and zero terms are dropped, so the map is canonical
/// up to algebraic identities between r, rho and the polynomial part, which are never applied.
class CoordFunction {
public:
    using TermMap = std::map<Monomial, Complex>;

    CoordFunction() = default;
    CoordFunction(const Complex& c);
    CoordFunction(long c) : CoordFunction(Complex(c)) {}
    CoordFunction(const SymbolicScalar& s);

    static CoordFunction zero() { return {}; }
    static CoordFunction one() { return CoordFunction(Complex(1)); }
    static CoordFunction constant(const Complex& c) { return CoordFunction(c); }
    static CoordFunction symbol(const std::string& name, int power = 1);
    static CoordFunction coordinate(Axis axis);
    static CoordFunction r_power(Exponent p);
    static CoordFunction rho_power(Exponent q);
    static CoordFunction term(const Complex& c, Monomial m);

    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    /// No dependence on X (constants allowed).
    bool is_constant() const;
    /// Exactly a rational number (no constants, no coordinates).
    bool is_number() const;
    bool is_real() const;

    CoordFunction& operator+=(const CoordFunction& o);
    CoordFunction& operator-=(const CoordFunction& o);
    CoordFunction& operator*=(const CoordFunction& o);
    friend CoordFunction operator+(CoordFunction a, const CoordFunction& b) { return a += b; }
    friend CoordFunction operator-(CoordFunction a, const CoordFunction& b) { return a -= b; }
    friend CoordFunction operator*(const CoordFunction& a, const CoordFunction& b);
    CoordFunction operator-() const;

    CoordFunction scaled(const Complex& c) const;
    CoordFunction conj() const;
    CoordFunction pow(unsigned k) const;

    /// Inverse of a single-term function without polynomial x-factors.
    CoordFunction inverse_monomial() const;

    /// Exact partial derivative with respect to X_{axis+1}.
    CoordFunction partial(Axis axis) const;

    /// Total exponent of the given constants in a term.
    static int grade(const Monomial& m, const std::set<std::string>& names);
    /// Drops every term whose combined degree in `names` is >= `min_dropped_degree`.
    CoordFunction truncated(const std::set<std::string>& names, int min_dropped_degree) const;

    /// Names of the constants appearing anywhere.
    std::set<std::string> constant_names() const;

    friend bool operator==(const CoordFunction&, const CoordFunction&) = default;

private:
    void add_term(const Monomial& m, const Complex& c);
    TermMap terms_;
};

CoordFunction partial_derivative(const CoordFunction& f, Axis axis);

}  // namespace warpqm
