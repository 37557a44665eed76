#pragma once

#include "warpqm/operator_expr.hpp"

#include <random>

namespace warpqm {

/// Random normal-ordered expressions for property tests. Exponents of r and rho are chosen so
/// that the equality oracle can always evaluate exactly.
class RandomExpr {
public:
    explicit RandomExpr(std::uint64_t seed) : rng_(seed) {}

    long integer(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

    Rational rational() {
        Rational q(integer(-6, 6), integer(1, 4));
        q.canonicalize();
        return q;
    }

    Complex coefficient() {
        Complex c(rational(), integer(0, 2) == 0 ? rational() : Rational(0));
        return c.is_zero() ? Complex(1) : c;
    }

    Monomial monomial() {
        static const Exponent r_choices[] = {Exponent(0), Exponent(0), Exponent(-1), Exponent(1), Exponent(-2),
                                             Exponent(-1, 2), Exponent(3, 2)};
        static const Exponent rho_choices[] = {Exponent(0), Exponent(0), Exponent(0), Exponent(-1), Exponent(1),
                                               Exponent(-2)};
        static const char* names[] = {"e", "m", "B"};
        Monomial m;
        for (auto& a : m.x) a = static_cast<int>(integer(0, 2));
        m.r = r_choices[integer(0, 6)];
        m.rho = rho_choices[integer(0, 5)];
        if (integer(0, 2) == 0) m.constants = ConstMonomial::symbol(names[integer(0, 2)], static_cast<int>(integer(-1, 2)));
        return m;
    }

    CoordFunction function(int max_terms = 2) {
        CoordFunction f;
        const long n = integer(1, max_terms);
        for (long t = 0; t < n; ++t) f += CoordFunction::term(coefficient(), monomial());
        return f;
    }

    MomentumMonomial momentum(int max_degree) {
        MomentumMonomial k;
        const long d = integer(0, max_degree);
        for (long s = 0; s < d; ++s) k.k[integer(0, 2)] += 1;
        return k;
    }

    OperatorExpr expr(int max_terms = 2, int max_degree = 2) {
        OperatorExpr e;
        const long n = integer(1, max_terms);
        for (long t = 0; t < n; ++t) e += OperatorExpr::term(function(), momentum(max_degree));
        return e;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace warpqm
