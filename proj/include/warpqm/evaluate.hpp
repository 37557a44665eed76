#pragma once

#include "warpqm/operator_expr.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>

namespace warpqm {

using ConstantMap = std::map<std::string, Rational>;
using NumericConstants = std::map<std::string, double>;

struct Point {
    std::array<Rational, kDim> x;
};

/// Exact value of f at a rational point. Throws SingularPointError at r = 0 or rho = 0 when a
/// negative power is present, UnboundConstantError for a missing constant, and InexactValueError
/// when a fractional power of r or rho is irrational at that point.
Complex evaluate(const CoordFunction& f, const Point& point, const ConstantMap& constants);

/// Evaluates a normal-ordered operator with the momenta replaced by commuting placeholders.
/// Only meaningful for comparing normal forms; the equality oracle applies it per coefficient.
Complex evaluate(const OperatorExpr& a, const Point& point, const std::array<Rational, kDim>& momentum,
                 const ConstantMap& constants);

/// Double-precision evaluation used by the grid discretization.
std::complex<double> evaluate_numeric(const CoordFunction& f, const std::array<double, kDim>& x,
                                      const NumericConstants& constants);

struct EqualityOptions {
    std::size_t samples = 24;
    std::uint64_t seed = 0x5eed'c0de'2024ULL;
};

struct Comparison {
    bool equal = false;
    /// Settled by the normal forms alone.
    bool structural = false;
    /// Some sample needed high-precision floating point (tolerance 1e-30 relative).
    bool approximate = false;
    std::size_t samples = 0;
};

/// Authoritative equality: structural match of the normal forms, otherwise every momentum
/// coefficient of a - b must vanish at `samples` random rational points with random rational
/// constants. Points are built so that r and rho powers stay rational whenever possible.
Comparison compare(const OperatorExpr& a, const OperatorExpr& b, const EqualityOptions& options = {});
Comparison compare(const CoordFunction& a, const CoordFunction& b, const EqualityOptions& options = {});

bool equals(const OperatorExpr& a, const OperatorExpr& b, const EqualityOptions& options = {});
bool equals(const CoordFunction& a, const CoordFunction& b, const EqualityOptions& options = {});

/// Zero test through the same oracle.
bool is_zero_function(const CoordFunction& f, const EqualityOptions& options = {});

}  // namespace warpqm
