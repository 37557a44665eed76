#include <doctest.h>

#include "support/random_expr.hpp"
#include "warpqm/errors.hpp"
#include "warpqm/evaluate.hpp"
#include "warpqm/parser.hpp"
#include "warpqm/serialize.hpp"

using namespace warpqm;

namespace {

OperatorExpr X(Axis a) { return OperatorExpr::position(a); }
OperatorExpr P(Axis a) { return OperatorExpr::momentum(a); }
const Complex I = Complex::imaginary_unit();

Point at(long a, long b, long c) { return Point{{Rational(a), Rational(b), Rational(c)}}; }

}  // namespace

TEST_CASE("parse keeps momentum squares") {
    const OperatorExpr e = parse("P1*P1 + P2*P2 + P3*P3");
    CHECK(e.terms().size() == 3);
    for (Axis j = 0; j < kDim; ++j) {
        MomentumMonomial k;
        k.k[j] = 2;
        CHECK(e.coefficient(k) == CoordFunction::one());
    }
}

TEST_CASE("parse normal-orders P1*X1") {
    CHECK(parse("P1*X1") == X(0) * P(0) - OperatorExpr(I));
    CHECK(parse("P1*X1") == X(0) * P(0) + parse("-i"));
}

TEST_CASE("parse X1*r^-3 is a single term") {
    const OperatorExpr e = parse("X1*r^-3");
    REQUIRE(e.terms().size() == 1);
    const CoordFunction f = e.coordinate_part();
    REQUIRE(f.size() == 1);
    const auto& [m, c] = *f.terms().begin();
    CHECK(m.x == std::array<int, 3>{1, 0, 0});
    CHECK(m.r == Exponent(-3));
    CHECK(c == Complex(1));
}

TEST_CASE("parse errors carry positions") {
    try {
        parse("X1 + * P2");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 5);
    }
    try {
        parse("X1 + Y7");
        FAIL("no error");
    } catch (const UnknownSymbolError& e) {
        CHECK(e.position() == 5);
    }
    CHECK_THROWS_AS(parse("(X1 + P1"), ParseError);
    CHECK_THROWS_AS(parse("P1 / X1"), ParseError);
    CHECK_THROWS_AS(parse("X1^(1/2)"), ParseError);
    CHECK_THROWS_AS(parse("P1 $ 2"), ParseError);
}

TEST_CASE("parse rational exponents and division") {
    CHECK(parse("r^(-3/2)") == OperatorExpr(CoordFunction::r_power(Exponent(-3, 2))));
    CHECK(parse("r^-3/2") == parse("r^(-3/2)"));
    CHECK(parse("e^2/r") == parse("e^2*r^-1"));
    CHECK(parse("X1^2/3") == parse("(1/3)*X1^2"));
    CHECK(parse("X2/rho^2") == OperatorExpr(CoordFunction::coordinate(1) * CoordFunction::rho_power(Exponent(-2))));
    CHECK(parse("1/(2*m)") == OperatorExpr(CoordFunction::symbol("m", -1).scaled(Complex(Rational(1, 2)))));
    CHECK(parse("(e*B)^-1") == parse("e^-1*B^-1"));
    CHECK_THROWS_AS(parse("q*X1"), UnknownSymbolError);
    ParseOptions opts;
    opts.constants.insert("q");
    CHECK_NOTHROW(parse("q*X1", opts));
}

TEST_CASE("multiply reorders P_j past r^-n") {
    for (const Exponent n : {Exponent(1), Exponent(3, 2), Exponent(2), Exponent(-1)}) {
        const OperatorExpr rn(CoordFunction::r_power(-n));
        for (Axis j = 0; j < kDim; ++j) {
            // P_j r^-n = r^-n P_j + i n x_j r^-(n+2)
            const OperatorExpr expected =
                rn * P(j) + OperatorExpr((CoordFunction::coordinate(j) * CoordFunction::r_power(-n - Exponent(2)))
                                             .scaled(I * Complex(n.to_rational())));
            CHECK(P(j) * rn == expected);
        }
    }
    const OperatorExpr a = parse("X1*P2 + r^-1*P3^2");
    CHECK(OperatorExpr::identity() * a == a);
    CHECK(a * OperatorExpr::identity() == a);
}

TEST_CASE("commutators of the generators") {
    for (Axis i = 0; i < kDim; ++i) {
        for (Axis j = 0; j < kDim; ++j) {
            CHECK(commutator(X(i), X(j)).is_zero());
            CHECK(commutator(P(i), P(j)).is_zero());
            CHECK(commutator(X(i), P(j)) == (i == j ? OperatorExpr(I) : OperatorExpr()));
        }
    }
}

TEST_CASE("commutator of P_j with X_k / r^n") {
    for (const Exponent n : {Exponent(1), Exponent(3, 2), Exponent(2)}) {
        const CoordFunction rn = CoordFunction::r_power(-n);
        for (Axis j = 0; j < kDim; ++j) {
            for (Axis k = 0; k < kDim; ++k) {
                // -i (delta_jk - n x_k x_j r^-2) r^-n
                CoordFunction inner = CoordFunction(j == k ? 1 : 0) -
                                      (CoordFunction::coordinate(k) * CoordFunction::coordinate(j) *
                                       CoordFunction::r_power(Exponent(-2)))
                                          .scaled(Complex(n.to_rational()));
                const OperatorExpr expected((inner * rn).scaled(-I));
                CHECK(equals(commutator(P(j), OperatorExpr(CoordFunction::coordinate(k) * rn)), expected));
            }
        }
    }
}

TEST_CASE("anticommutator") {
    // P1 X1 = X1 P1 - i, hence {X1, P1} = 2 X1 P1 - i
    CHECK(anticommutator(X(0), P(0)) == (X(0) * P(0)).scaled(Complex(2)) - OperatorExpr(I));
    CHECK(anticommutator(parse("X2*P1^2"), OperatorExpr()).is_zero());
}

TEST_CASE("adjoint") {
    CHECK(adjoint(X(0) * P(0)) == X(0) * P(0) - OperatorExpr(I));
    CHECK(adjoint(free_hamiltonian()) == free_hamiltonian());
    CHECK(adjoint(P(0).scaled(I)) == P(0).scaled(-I));
}

TEST_CASE("partial derivatives") {
    CHECK(CoordFunction::r_power(Exponent(-1)).partial(0) ==
          -(CoordFunction::coordinate(0) * CoordFunction::r_power(Exponent(-3))));
    CHECK(CoordFunction::rho_power(Exponent(-2)).partial(0).is_zero());
    const CoordFunction f = CoordFunction::coordinate(1) * CoordFunction::rho_power(Exponent(-2));
    const CoordFunction expected = CoordFunction::rho_power(Exponent(-2)) -
                                   (CoordFunction::coordinate(1).pow(2) * CoordFunction::rho_power(Exponent(-4)))
                                       .scaled(Complex(2));
    CHECK(f.partial(1) == expected);
    CHECK(partial_derivative(f, 2) == f.partial(2));
}

TEST_CASE("equality oracle") {
    const CoordFunction x2 = CoordFunction::coordinate(1), x3 = CoordFunction::coordinate(2);
    const CoordFunction rho2 = CoordFunction::rho_power(Exponent(-2));
    const Comparison c = compare(x2 * x2 * rho2 + x3 * x3 * rho2, CoordFunction::one());
    CHECK(c.equal);
    CHECK_FALSE(c.structural);
    CHECK_FALSE(c.approximate);
    CHECK(c.samples >= 20);
    CHECK_FALSE(equals(P(0), P(1)));
    CHECK(equals(free_hamiltonian(), parse("(1/2)*m^-1*(P1^2 + P2^2 + P3^2)")));
    CHECK(compare(free_hamiltonian(), parse("1/(2*m)*(P1*P1 + P2*P2 + P3*P3)")).structural);
    // r^2 = x.x with a half-integer r power and a non-integer rho power together
    const CoordFunction r2 = parse_function("X1^2 + X2^2 + X3^2");
    CHECK(equals(r2 * CoordFunction::r_power(Exponent(-3, 2)), CoordFunction::r_power(Exponent(1, 2))));
    CHECK_FALSE(equals(r2 * CoordFunction::r_power(Exponent(-3, 2)), CoordFunction::r_power(Exponent(-1, 2))));
    CHECK(equals(parse_function("(X2^2+X3^2)*rho^(-1/3)"), parse_function("rho^(5/3)")));
    const Comparison mixed =
        compare(parse_function("rho^(2/3)*r^(1/3)*(X2^2+X3^2)"), parse_function("rho^(8/3)*r^(1/3)"));
    CHECK(mixed.equal);
    CHECK(mixed.approximate);
    CHECK_FALSE(equals(parse_function("rho^(2/3)*r^(1/3)"), parse_function("rho^(2/3)*r^(1/3)*(1 + 10^-20*X1)")));
}

TEST_CASE("evaluate") {
    CHECK(evaluate(CoordFunction::r_power(Exponent(-1)), at(3, 4, 0), {}) == Complex(Rational(1, 5)));
    CHECK(evaluate(CoordFunction::coordinate(0), at(2, 0, 0), {}) == Complex(2));
    CHECK_THROWS_AS(evaluate(CoordFunction::r_power(Exponent(-1)), at(0, 0, 0), {}), SingularPointError);
    CHECK_THROWS_AS(evaluate(CoordFunction::symbol("m"), at(1, 1, 1), {}), UnboundConstantError);
    CHECK_THROWS_AS(evaluate(CoordFunction::r_power(Exponent(1)), at(1, 1, 0), {}), InexactValueError);
    CHECK(evaluate(parse("X1*P2 + m*P3^2"), at(2, 0, 0), {Rational(0), Rational(3), Rational(5)},
                   {{"m", Rational(1, 5)}}) == Complex(11));
    const auto v = evaluate_numeric(CoordFunction::r_power(Exponent(-1)), {3.0, 4.0, 0.0}, {});
    CHECK(v.real() == doctest::Approx(0.2));
}

TEST_CASE("print and parse round trip") {
    testing::RandomExpr gen(7);
    for (int t = 0; t < 300; ++t) {
        const OperatorExpr a = gen.expr(3, 2);
        CAPTURE(to_string(a));
        CHECK(parse(to_string(a)) == a);
    }
    CHECK(to_string(OperatorExpr()) == "0");
    CHECK(to_string(parse("X1*r^(-3/2)")) == "X1*r^(-3/2)");
}

TEST_CASE("json round trip") {
    testing::RandomExpr gen(11);
    for (int t = 0; t < 100; ++t) {
        const OperatorExpr a = gen.expr(3, 2);
        const Json j = to_json(a);
        CHECK(operator_from_json(Json::parse(j.dump())) == a);
    }
    CHECK_THROWS_AS(operator_from_json(Json::parse(R"({"terms":[{"x":[0]}]})")), InvalidArgument);
}

TEST_CASE("ring axioms and Jacobi identity on random expressions") {
    testing::RandomExpr gen(20241);
    for (int t = 0; t < 200; ++t) {
        const OperatorExpr a = gen.expr(2, 2), b = gen.expr(2, 2), c = gen.expr(2, 1);
        CHECK(equals((a * b) * c, a * (b * c)));
        CHECK(equals(a * (b + c), a * b + a * c));
        CHECK(equals((a + b) * c, a * c + b * c));
        CHECK(commutator(a, b) == -commutator(b, a));
        const OperatorExpr jacobi =
            commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b));
        CHECK(jacobi.is_zero());
    }
}

TEST_CASE("adjoint is an anti-involution") {
    testing::RandomExpr gen(99);
    for (int t = 0; t < 200; ++t) {
        const OperatorExpr a = gen.expr(2, 2), b = gen.expr(2, 2);
        CHECK(adjoint(adjoint(a)) == a);
        CHECK(equals(adjoint(a * b), adjoint(b) * adjoint(a)));
    }
}

TEST_CASE("partial derivatives commute") {
    testing::RandomExpr gen(5);
    for (int t = 0; t < 300; ++t) {
        const CoordFunction f = gen.function(3);
        for (Axis i = 0; i < kDim; ++i) {
            for (Axis j = 0; j < i; ++j) CHECK(f.partial(i).partial(j) == f.partial(j).partial(i));
        }
    }
}

TEST_CASE("coefficient identities for Q = X / r^n") {
    for (const Exponent n : {Exponent(-1), Exponent(0), Exponent(1), Exponent(3, 2), Exponent(2), Exponent(3)}) {
        CAPTURE(n.str());
        const Rational nq = n.to_rational();
        const Rational a = nq * nq - 3 * nq;
        const Rational b = nq * nq - 2 * nq + 3;
        std::array<CoordFunction, kDim> q;
        for (Axis k = 0; k < kDim; ++k) q[k] = CoordFunction::coordinate(k) * CoordFunction::r_power(-n);
        OperatorExpr squares;
        for (Axis k = 0; k < kDim; ++k) {
            OperatorExpr sum;
            for (Axis j = 0; j < kDim; ++j) {
                sum += anticommutator(P(j), commutator(P(j), OperatorExpr(q[k])));
                const OperatorExpr qp = commutator(OperatorExpr(q[k]), P(j));
                squares += qp * qp;
            }
            const CoordFunction expected =
                (CoordFunction::coordinate(k) * CoordFunction::r_power(-n - Exponent(2))).scaled(Complex(-a));
            CHECK(equals(sum.coordinate_part(), expected));
        }
        CHECK(squares.momentum_degree() <= 0);
        CHECK(equals(squares.coordinate_part(), CoordFunction::r_power(-n - n).scaled(Complex(-b))));
    }
}
