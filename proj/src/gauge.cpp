#include "warpqm/gauge.hpp"

#include "warpqm/errors.hpp"
#include "warpqm/parser.hpp"

#include <algorithm>

namespace warpqm {

namespace {

CoordFunction inverse_coupling(const CoordFunction& g) {
    if (g.is_zero()) throw ZeroCouplingError("coupling constant is zero");
    if (!g.is_constant() || g.size() != 1) throw InvalidArgument("coupling must be a single constant monomial");
    return g.inverse_monomial();
}

std::string axis_name(Axis a) { return std::to_string(a + 1); }

}  // namespace

bool FieldStrength::is_zero() const {
    for (const auto& row : F) {
        for (const auto& f : row) {
            if (!f.is_zero()) return false;
        }
    }
    return true;
}

std::array<CoordFunction, kDim> FieldStrength::axial() const { return {F[1][2], F[2][0], F[0][1]}; }

GaugeField extract_gauge_field(const DeformationSpec& spec, const CoordFunction& coupling) {
    const CoordFunction minus_inv = -inverse_coupling(coupling);
    const auto bq = contracted_generator(spec);
    GaugeField out;
    out.coupling = coupling;
    for (Axis r = 0; r < kDim; ++r) {
        CoordFunction a;
        for (Axis k = 0; k < kDim; ++k) {
            if (!bq[k].is_zero()) a += bq[k] * spec.generator.components[k].partial(r);
        }
        out.A[r] = minus_inv * a;
    }
    return out;
}

FieldStrength curl(const GaugeField& field) {
    FieldStrength out;
    for (Axis i = 0; i < kDim; ++i) {
        for (Axis j = 0; j < kDim; ++j) {
            if (i != j) out.F[i][j] = field.A[j].partial(i) - field.A[i].partial(j);
        }
    }
    return out;
}

FieldStrength field_strength(const DeformationSpec& spec, const CoordFunction& coupling, const DeformOptions& options) {
    // F = [P_i, P_j] / (-i g) = i [P_i, P_j] / g
    const CoordFunction factor = inverse_coupling(coupling).scaled(Complex::imaginary_unit());
    const Triple pi = deformed_momenta(spec, options);
    FieldStrength out;
    for (Axis i = 0; i < kDim; ++i) {
        for (Axis j = i + 1; j < kDim; ++j) {
            const OperatorExpr c = commutator(pi[i], pi[j]);
            if (c.momentum_degree() > 0) {
                throw InternalInconsistencyError("commutator of deformed momenta " + axis_name(i) + "," + axis_name(j) +
                                                 " is momentum dependent: " + to_string(c));
            }
            out.F[i][j] = factor * c.coordinate_part();
            out.F[j][i] = -out.F[i][j];
        }
    }
    return out;
}

bool gauge_curl_check(const DeformationSpec& spec, const CoordFunction& coupling, const DeformOptions& options,
                      const EqualityOptions& eq) {
    const FieldStrength from_commutators = field_strength(spec, coupling, options);
    const FieldStrength from_curl = curl(extract_gauge_field(spec, coupling));
    for (Axis i = 0; i < kDim; ++i) {
        for (Axis j = i + 1; j < kDim; ++j) {
            if (!equals(from_commutators(i, j), from_curl(i, j), eq)) return false;
        }
    }
    return true;
}

LorentzForce lorentz_force(const DeformationSpec& spec, const CoordFunction& potential, const CoordFunction& coupling,
                           const DeformOptions& options, const EqualityOptions& eq) {
    const Triple pi = deformed_momenta(spec, options);
    const OperatorExpr h = deform_operator(free_hamiltonian(), spec, options) + OperatorExpr(coupling * potential);
    const FieldStrength f = field_strength(spec, coupling, options);
    const CoordFunction half_inv_mass = CoordFunction::symbol("m", -1).scaled(Complex(Rational(1, 2)));
    const OperatorExpr minus_ig(coupling.scaled(Complex(0, -1)));
    LorentzForce out;
    out.holds = true;
    for (Axis j = 0; j < kDim; ++j) {
        out.force[j] = commutator(h, pi[j]);
        OperatorExpr magnetic;
        for (Axis k = 0; k < kDim; ++k) {
            if (!f(k, j).is_zero()) magnetic += anticommutator(pi[k], OperatorExpr(f(k, j)));
        }
        const CoordFunction e_field = -potential.partial(j);
        out.expected[j] = minus_ig * (OperatorExpr(e_field) + magnetic.left_multiplied(half_inv_mass));
        out.holds = out.holds && equals(out.force[j], out.expected[j], eq);
    }
    return out;
}

bool bianchi_check(const DeformationSpec& spec, const CoordFunction& coupling, const DeformOptions& options,
                   const EqualityOptions& eq) {
    const FieldStrength f = field_strength(spec, coupling, options);
    const CoordFunction sum = f(1, 2).partial(0) + f(2, 0).partial(1) + f(0, 1).partial(2);
    return is_zero_function(sum, eq);
}

bool JacobiMaxwellReport::all_zero() const {
    for (const auto& r : identities) {
        if (!r.zero) return false;
    }
    return true;
}

Json JacobiMaxwellReport::to_json() const {
    Json list = Json::array();
    for (const auto& r : identities) list.push_back({{"name", r.name}, {"zero", r.zero}, {"residual", r.residual}});
    return Json{{"static_fields", static_fields}, {"all_zero", all_zero()}, {"identities", list}};
}

JacobiMaxwellReport jacobi_maxwell_report(const DeformationSpec& spec, const CoordFunction& potential,
                                          const CoordFunction& coupling, const DeformOptions& options,
                                          const EqualityOptions& eq) {
    JacobiMaxwellReport report;
    const Triple pi = deformed_momenta(spec, options);
    const OperatorExpr h = deform_operator(free_hamiltonian(), spec, options) + OperatorExpr(coupling * potential);
    auto record = [&](std::string name, const OperatorExpr& residual) {
        const bool zero = residual.is_zero() ||
                          std::all_of(residual.terms().begin(), residual.terms().end(),
                                      [&](const auto& t) { return is_zero_function(t.second, eq); });
        report.identities.push_back({std::move(name), zero, to_string(residual)});
    };
    auto jacobi = [](const OperatorExpr& a, const OperatorExpr& b, const OperatorExpr& c) {
        return commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b));
    };
    for (Axis i = 0; i < kDim; ++i) {
        const Axis j = (i + 1) % kDim;
        record("jacobi(H,P" + axis_name(i) + ",P" + axis_name(j) + ")", jacobi(h, pi[i], pi[j]));
    }
    record("jacobi(P1,P2,P3)", jacobi(pi[0], pi[1], pi[2]));
    const FieldStrength f = field_strength(spec, coupling, options);
    record("bianchi(dF)", OperatorExpr(f(1, 2).partial(0) + f(2, 0).partial(1) + f(0, 1).partial(2)));
    for (Axis i = 0; i < kDim; ++i) {
        const Axis j = (i + 1) % kDim;
        // E = -grad phi
        const CoordFunction ei = -potential.partial(i), ej = -potential.partial(j);
        record("faraday_static(" + axis_name(i) + "," + axis_name(j) + ")", OperatorExpr(ej.partial(i) - ei.partial(j)));
    }
    return report;
}

}  // namespace warpqm
