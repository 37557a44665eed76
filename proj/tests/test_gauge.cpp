#include <doctest.h>

#include "support/random_expr.hpp"
#include "warpqm/errors.hpp"
#include "warpqm/gauge.hpp"
#include "warpqm/models.hpp"
#include "warpqm/parser.hpp"

using namespace warpqm;

namespace {

CoordFunction fn(const std::string& s) { return parse_function(s); }

DeformationSpec zero_spec() { return {DeformationMatrix(), QSpec::coordinate()}; }

}  // namespace

TEST_CASE("gauge field of the constant-field deformation") {
    const ModelPreset p = landau();
    const GaugeField a = extract_gauge_field(p.specs[0], fn("e"));
    // minus the symmetric-gauge potential -(1/2) eps_ijk B^k X^j
    CHECK(a.A[0].is_zero());
    CHECK(equals(a.A[1], fn("B*X3/2")));
    CHECK(equals(a.A[2], fn("-B*X2/2")));
}

TEST_CASE("gauge field of the flux-line deformation") {
    const GaugeField a = extract_gauge_field(aharonov_bohm().specs[0], fn("e"));
    CHECK(a.A[0].is_zero());
    CHECK(equals(a.A[1], fn("phi_M/(2*pi)*X3*rho^-2")));
    CHECK(equals(a.A[2], fn("-phi_M/(2*pi)*X2*rho^-2")));
}

TEST_CASE("gauge field of the Lense-Thirring deformation") {
    const GaugeField h = extract_gauge_field(lense_thirring().specs[0], fn("-m"));
    CHECK(h.A[0].is_zero());
    CHECK(equals(h.A[1], fn("2*G*I*omega*X3*r^-3")));
    CHECK(equals(h.A[2], fn("-2*G*I*omega*X2*r^-3")));
}

TEST_CASE("zero coupling is rejected") {
    CHECK_THROWS_AS(extract_gauge_field(landau().specs[0], CoordFunction()), ZeroCouplingError);
    CHECK_THROWS_AS(field_strength(landau().specs[0], CoordFunction()), ZeroCouplingError);
}

TEST_CASE("field strength from commutators") {
    const FieldStrength f = field_strength(landau().specs[0], fn("e"));
    CHECK(f(1, 2) == fn("-B"));
    CHECK(f(2, 1) == fn("B"));
    CHECK(f(0, 1).is_zero());
    CHECK(f(0, 2).is_zero());

    const FieldStrength ab = field_strength(aharonov_bohm().specs[0], fn("e"));
    for (Axis i = 0; i < kDim; ++i) {
        for (Axis j = 0; j < kDim; ++j) CHECK(is_zero_function(ab(i, j)));
    }
    CHECK(field_strength(zero_spec(), fn("e")).is_zero());

    const FieldStrength grav = field_strength(gravito_constant().specs[0], fn("-m"));
    CHECK(equals(grav(1, 2), fn("-2*(2*G*M*omega/r_hs)")));
}

TEST_CASE("commutator and curl paths agree for every preset") {
    for (const auto& name : model_names()) {
        CAPTURE(name);
        const ModelPreset p = model_by_name(name);
        for (std::size_t s = 0; s < p.specs.size(); ++s) {
            CHECK(gauge_curl_check(p.specs[s], p.couplings[s]));
            const FieldStrength f = field_strength(p.specs[s], p.couplings[s]);
            for (Axis i = 0; i < kDim; ++i) {
                for (Axis j = 0; j < kDim; ++j) CHECK(f(i, j) == -f(j, i));
            }
        }
    }
}

TEST_CASE("flipping the commutator sign breaks only the curl cross-check") {
    const DeformOptions flipped{true};
    const DeformationSpec spec = landau().specs[0];
    CHECK_FALSE(gauge_curl_check(spec, fn("e"), flipped));
    CHECK(check_additivity(free_hamiltonian(), spec, gravito_constant().specs[0], flipped));
    CHECK(check_additivity(free_hamiltonian(), spec, spec, flipped));
}

TEST_CASE("deformed momenta commute exactly where the field vanishes") {
    testing::RandomExpr gen(61);
    for (const auto& name : model_names()) {
        const ModelPreset p = model_by_name(name);
        const Triple pi = deformed_momenta(p.specs[0]);
        const FieldStrength f = field_strength(p.specs[0], p.couplings[0]);
        for (Axis i = 0; i < kDim; ++i) {
            for (Axis j = i + 1; j < kDim; ++j) {
                CHECK(is_zero_function(commutator(pi[i], pi[j]).coordinate_part()) == is_zero_function(f(i, j)));
            }
        }
    }
}

TEST_CASE("gauge field is linear in the deformation matrix") {
    testing::RandomExpr gen(67);
    for (const auto& name : model_names()) {
        const ModelPreset p = model_by_name(name);
        const CoordFunction lambda(Complex(Rational(gen.rational() + 7)));
        const GaugeField a = extract_gauge_field(p.specs[0], p.couplings[0]);
        const GaugeField b = extract_gauge_field({p.specs[0].matrix.scaled(lambda), p.specs[0].generator}, p.couplings[0]);
        for (Axis r = 0; r < kDim; ++r) CHECK(b.A[r] == lambda * a.A[r]);
    }
}

TEST_CASE("Lorentz force") {
    const LorentzForce landau_force = lorentz_force(landau().specs[0], CoordFunction(), fn("e"));
    CHECK(landau_force.holds);
    // constant field: [H, P_j] = -(i e / m) sum_k F_kj P_k^def
    const Triple pi = deformed_momenta(landau().specs[0]);
    const FieldStrength f = field_strength(landau().specs[0], fn("e"));
    for (Axis j = 0; j < kDim; ++j) {
        OperatorExpr expected;
        for (Axis k = 0; k < kDim; ++k) expected += pi[k].left_multiplied(f(k, j) * fn("-i*e/m"));
        CHECK(equals(landau_force.force[j], expected));
    }

    const LorentzForce coulomb = lorentz_force(zero_spec(), fn("e^2/r"), fn("e"));
    CHECK(coulomb.holds);
    for (Axis j = 0; j < kDim; ++j) {
        // i g d_j phi with g phi = e^3 / r
        const CoordFunction expected = (CoordFunction::coordinate(j) * fn("r^-3")).scaled(Complex(0, -1)) * fn("e^3");
        CHECK(equals(coulomb.force[j].coordinate_part(), expected));
        CHECK(coulomb.force[j].momentum_degree() == 0);
    }

    const LorentzForce none = lorentz_force(zero_spec(), CoordFunction(), fn("e"));
    for (Axis j = 0; j < kDim; ++j) CHECK(none.force[j].is_zero());

    for (const auto& name : model_names()) {
        const ModelPreset p = model_by_name(name);
        CHECK(lorentz_force(p.specs[0], p.potential, p.couplings[0]).holds);
    }
}

TEST_CASE("Bianchi identity") {
    CHECK(bianchi_check(landau().specs[0], fn("e")));
    CHECK(bianchi_check(lense_thirring().specs[0], fn("-m")));
    CHECK(bianchi_check(aharonov_bohm().specs[0], fn("e")));
    testing::RandomExpr gen(71);
    for (int t = 0; t < 10; ++t) {
        std::array<CoordFunction, kDim> q{gen.function(2), gen.function(2), gen.function(2)};
        const DeformationSpec spec{DeformationMatrix::axial({CoordFunction(1), fn("e"), CoordFunction(2)}),
                                   QSpec::custom(q)};
        CHECK(bianchi_check(spec, fn("e")));
    }
}

TEST_CASE("Jacobi-Maxwell report") {
    const JacobiMaxwellReport landau_report = jacobi_maxwell_report(landau().specs[0], CoordFunction(), fn("e"));
    CHECK(landau_report.all_zero());
    CHECK(landau_report.static_fields);
    CHECK(landau_report.identities.size() == 8);
    CHECK(jacobi_maxwell_report(aharonov_bohm().specs[0], CoordFunction(), fn("e")).all_zero());
    const JacobiMaxwellReport coulomb = jacobi_maxwell_report(zero_spec(), fn("e^2/r"), fn("e"));
    CHECK(coulomb.all_zero());
    const Json j = coulomb.to_json();
    CHECK(j["all_zero"] == true);
    CHECK(j["identities"][5]["name"] == "faraday_static(1,2)");
    CHECK(j["identities"][5]["residual"] == "0");
    CHECK(jacobi_maxwell_report(lense_thirring().specs[0], fn("e/r"), fn("-m")).all_zero());
}
