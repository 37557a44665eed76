#pragma once

#include "warpqm/coord_function.hpp"

#include <array>
#include <map>

namespace warpqm {

/// Multi-index (k1,k2,k3) standing for the right factor P1^k1 P2^k2 P3^k3.
struct MomentumMonomial {
    std::array<int, kDim> k{0, 0, 0};

    int degree() const { return k[0] + k[1] + k[2]; }
    static MomentumMonomial unit(Axis axis);
    MomentumMonomial operator+(const MomentumMonomial& o) const;

    friend bool operator==(const MomentumMonomial&, const MomentumMonomial&) = default;
    friend auto operator<=>(const MomentumMonomial&, const MomentumMonomial&) = default;
};

/// Normal-ordered element of the Heisenberg algebra over CoordFunction coefficients:
/// sum_k f_k(X) P^k with every coordinate factor left of every momentum factor.
///
/// Convention: P_j = -i d/dx_j, hence [X_j, P_k] = i delta_jk and [P_j, f(X)] = -i d_j f.
class OperatorExpr {
public:
    using TermMap = std::map<MomentumMonomial, CoordFunction>;

    OperatorExpr() = default;
    OperatorExpr(const CoordFunction& f);
    OperatorExpr(const Complex& c) : OperatorExpr(CoordFunction(c)) {}
    OperatorExpr(long c) : OperatorExpr(CoordFunction(c)) {}

    static OperatorExpr identity() { return OperatorExpr(CoordFunction::one()); }
    static OperatorExpr position(Axis axis) { return OperatorExpr(CoordFunction::coordinate(axis)); }
    static OperatorExpr momentum(Axis axis);
    static OperatorExpr term(const CoordFunction& f, const MomentumMonomial& k);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Highest total momentum degree (0 for pure coordinate functions, -1 for zero).
    int momentum_degree() const;
    /// Coefficient of P^k (zero when absent).
    CoordFunction coefficient(const MomentumMonomial& k) const;
    /// The P^0 part.
    CoordFunction coordinate_part() const { return coefficient({}); }

    OperatorExpr& operator+=(const OperatorExpr& o);
    OperatorExpr& operator-=(const OperatorExpr& o);
    friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
    friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
    OperatorExpr operator-() const;
    friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b);

    OperatorExpr scaled(const Complex& c) const;
    /// Left multiplication by a coordinate function (no reordering needed).
    OperatorExpr left_multiplied(const CoordFunction& f) const;
    OperatorExpr pow(unsigned k) const;

    /// Applies `fn` to every coefficient; used for grading and truncation.
    template <typename Fn>
    OperatorExpr map_coefficients(Fn fn) const {
        OperatorExpr out;
        for (const auto& [k, f] : terms_) out.add_term(k, fn(f));
        return out;
    }

    std::set<std::string> constant_names() const;

    friend bool operator==(const OperatorExpr&, const OperatorExpr&) = default;

private:
    void add_term(const MomentumMonomial& k, const CoordFunction& f);
    TermMap terms_;
};

OperatorExpr multiply(const OperatorExpr& a, const OperatorExpr& b);
OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b);
OperatorExpr anticommutator(const OperatorExpr& a, const OperatorExpr& b);
OperatorExpr adjoint(const OperatorExpr& a);

/// Free Hamiltonian (P1^2 + P2^2 + P3^2) / (2m).
OperatorExpr free_hamiltonian();

}  // namespace warpqm
