#include "warpqm/models.hpp"

#include "warpqm/errors.hpp"
#include "warpqm/parser.hpp"

#include <cmath>
#include <numbers>

namespace warpqm {

OperatorExpr truncated(const OperatorExpr& a, const std::set<std::string>& names, int min_dropped_degree) {
    return a.map_coefficients([&](const CoordFunction& f) { return f.truncated(names, min_dropped_degree); });
}

CoordFunction substitute(const CoordFunction& f, const std::string& name, const CoordFunction& value) {
    CoordFunction out;
    for (const auto& [m, c] : f.terms()) {
        const int p = m.constants.degree_of(name);
        Monomial rest = m;
        rest.constants = m.constants * ConstMonomial::symbol(name, -p);
        CoordFunction factor = CoordFunction::term(c, rest);
        if (p > 0) {
            factor *= value.pow(static_cast<unsigned>(p));
        } else if (p < 0) {
            factor *= value.inverse_monomial().pow(static_cast<unsigned>(-p));
        }
        out += factor;
    }
    return out;
}

OperatorExpr substitute(const OperatorExpr& a, const std::string& name, const CoordFunction& value) {
    return a.map_coefficients([&](const CoordFunction& f) { return substitute(f, name, value); });
}

OperatorExpr ModelPreset::base_hamiltonian() const { return free_hamiltonian() + OperatorExpr(potential); }

OperatorExpr ModelPreset::deformed(const DeformOptions& options) const {
    OperatorExpr h = base_hamiltonian();
    for (const auto& spec : specs) h = deform_operator(h, spec, options);
    return h;
}

OperatorExpr ModelPreset::deformed_linearized(const DeformOptions& options) const {
    return truncated(deformed(options), small_constants, 2);
}

bool ModelPreset::matches_reference(const EqualityOptions& eq) const {
    return equals(deformed(), reference_hamiltonian, eq);
}

bool ModelPreset::matches_linearized_reference(const EqualityOptions& eq) const {
    if (!linearized_reference) return true;
    return equals(deformed_linearized(), *linearized_reference, eq);
}

Json ModelPreset::to_json() const {
    Json spec_list = Json::array();
    for (std::size_t s = 0; s < specs.size(); ++s) {
        Json matrix = Json::array();
        for (Axis i = 0; i < kDim; ++i) {
            Json row = Json::array();
            for (Axis j = 0; j < kDim; ++j) row.push_back(to_string(specs[s].matrix(i, j)));
            matrix.push_back(row);
        }
        Json q = Json::array();
        for (const auto& c : specs[s].generator.components) q.push_back(to_string(c));
        spec_list.push_back({{"matrix", matrix},
                             {"generator", specs[s].generator.label()},
                             {"Q", q},
                             {"coupling", to_string(couplings[s])}});
    }
    Json defs = Json::object();
    for (const auto& [k, v] : definitions) defs[k] = v;
    Json out{{"name", name},
             {"specs", spec_list},
             {"potential", to_string(potential)},
             {"reference", to_string(reference_hamiltonian)},
             {"linearized_reference", linearized_reference ? Json(to_string(*linearized_reference)) : Json()},
             {"small_constants", Json(std::vector<std::string>(small_constants.begin(), small_constants.end()))},
             {"definitions", defs},
             {"sign_note", sign_note}};
    return out;
}

namespace {

const char* kOmegaConstant = "2*G*M*omega/r_hs";
const char* kOmegaLT = "2*G*I*omega";

CoordFunction fn(const std::string& text) { return parse_function(text); }

DeformationSpec axial_x1(const std::string& b, const QSpec& q) {
    return {DeformationMatrix::axial({fn(b), CoordFunction(), CoordFunction()}), q};
}

DeformationSpec landau_spec() { return axial_x1("-(e/2)*B", QSpec::coordinate()); }
DeformationSpec gravito_spec() { return axial_x1(std::string("m*") + kOmegaConstant, QSpec::coordinate()); }
DeformationSpec lt_spec() { return axial_x1(std::string("m*") + kOmegaLT, QSpec::radial_power(Exponent(3, 2))); }

/// (1/2m) (P1^2 + (P2 + s2)^2 + (P3 + s3)^2) from the text of the shifts.
std::string minimal_text(const std::string& s2, const std::string& s3) {
    return "1/(2*m)*(P1^2 + (P2 + " + s2 + ")^2 + (P3 + " + s3 + ")^2)";
}

const char* kLandauNote =
    "Deformed momentum is P - e A_s with the symmetric-gauge potential A_s = -(1/2) eps_ijk B^k X^j, so H = (P - e A_s)^2/2m "
    "for P = -i d. extract_gauge_field with coupling e returns -A_s and the commutator field strength is F_23 = -B; "
    "with P = +i d both signs flip back.";

}  // namespace

ModelPreset landau() {
    ModelPreset p;
    p.name = "landau";
    p.specs = {landau_spec()};
    p.couplings = {fn("e")};
    p.reference_hamiltonian = parse(minimal_text("(e/2)*B*X3", "-(e/2)*B*X2"));
    p.sign_note = kLandauNote;
    return p;
}

ModelPreset zeeman() {
    ModelPreset p;
    p.name = "zeeman";
    p.specs = {landau_spec()};
    p.couplings = {fn("e")};
    p.potential = fn("e^2/r");
    // (1/2m) sum_j (P_j + (e/2) eps_jik B^k X^i)^2 + e^2/r with B^k = (B, 0, 0)
    const std::array<CoordFunction, kDim> field{fn("B"), CoordFunction(), CoordFunction()};
    OperatorExpr kinetic;
    for (Axis j = 0; j < kDim; ++j) {
        CoordFunction shift;
        for (Axis i = 0; i < kDim; ++i) {
            for (Axis k = 0; k < kDim; ++k) {
                const int s = levi_civita(j, i, k);
                if (s != 0) shift += (fn("e/2") * field[k] * CoordFunction::coordinate(i)).scaled(Complex(s));
            }
        }
        const OperatorExpr pi = OperatorExpr::momentum(j) + OperatorExpr(shift);
        kinetic += pi * pi;
    }
    p.reference_hamiltonian = kinetic.left_multiplied(fn("1/(2*m)")) + OperatorExpr(p.potential);
    p.sign_note = std::string(kLandauNote) + " The Coulomb term commutes with the deformation.";
    return p;
}

ModelPreset aharonov_bohm() {
    ModelPreset p;
    p.name = "aharonov_bohm";
    p.specs = {axial_x1("-e*phi_M/(2*pi)", QSpec::transverse_radial())};
    p.couplings = {fn("e")};
    p.reference_hamiltonian = parse(minimal_text("e*phi_M/(2*pi)*X3*rho^-2", "-e*phi_M/(2*pi)*X2*rho^-2"));
    p.definitions = {{"A", "phi_M/(2*pi*rho^2) * (0, X3, -X2)"}};
    p.sign_note =
        "extract_gauge_field with coupling e gives the flux-line potential A = phi_M/(2 pi rho^2) eps_ij1 X^j exactly; "
        "H = (P + e A)^2/2m for P = -i d, which is (P - e A)^2/2m for P = +i d. pi is kept as a symbol. The loop "
        "integral of A counter-clockwise in the (x2, x3) plane is -phi_M.";
    return p;
}

ModelPreset gravito_constant() {
    ModelPreset p;
    p.name = "gravito_constant";
    p.specs = {gravito_spec()};
    p.couplings = {fn("-m")};
    const std::string om = std::string("(") + kOmegaConstant + ")";
    p.reference_hamiltonian = parse(minimal_text("-m*" + om + "*X3", "m*" + om + "*X2"));
    // H0 - h.P with h = x cross Omega = (0, Omega X3, -Omega X2)
    p.linearized_reference = parse("1/(2*m)*(P1^2 + P2^2 + P3^2) - " + om + "*(X3*P2 - X2*P3)");
    p.small_constants = {"G"};
    p.definitions = {{"Omega", kOmegaConstant}, {"h", "x cross Omega, Omega along x1"}};
    p.sign_note =
        "Coupling -m. extract_gauge_field returns h = x cross Omega; H = (P - m h)^2/2m = H0 - h.P + O(G^2) for P = -i d. "
        "The commutator field strength is curl h = -2 Omega e_1, giving the cyclotron frequency 2 Omega.";
    return p;
}

ModelPreset lense_thirring() {
    ModelPreset p;
    p.name = "lense_thirring";
    p.specs = {lt_spec()};
    p.couplings = {fn("-m")};
    const std::string om = std::string("(") + kOmegaLT + ")";
    p.reference_hamiltonian = parse(minimal_text("-m*" + om + "*X3*r^-3", "m*" + om + "*X2*r^-3"));
    p.linearized_reference = parse("1/(2*m)*(P1^2 + P2^2 + P3^2) - " + om + "*r^-3*(X3*P2 - X2*P3)");
    p.small_constants = {"G"};
    p.definitions = {{"Omega", kOmegaLT}, {"h", "eps_jkl X^k Omega^l / r^3, Omega along x1"}};
    p.sign_note =
        "Coupling -m. extract_gauge_field returns h_j = eps_jkl X^k Omega^l r^-3 = (2 G I / r^3) (x cross omega)_j, "
        "the opposite orientation of h = -(2 G I / r^3) x cross omega; H = (P - m h)^2/2m for P = -i d.";
    return p;
}

ModelPreset combined_em_gem(CombinedKind kind) {
    ModelPreset p;
    const bool lt = kind == CombinedKind::lense_thirring;
    p.name = lt ? "combined_lense_thirring" : "combined_constant";
    // constant field: gravitomagnetic deformation first; Lense-Thirring: electromagnetic first
    if (lt) {
        p.specs = {landau_spec(), lt_spec()};
        p.couplings = {fn("e"), fn("-m")};
    } else {
        p.specs = {gravito_spec(), landau_spec()};
        p.couplings = {fn("-m"), fn("e")};
    }
    const std::string om = std::string("(") + (lt ? kOmegaLT : kOmegaConstant) + ")" + (lt ? "*r^-3" : "");
    p.reference_hamiltonian = parse(minimal_text("(e/2)*B*X3 - m*" + om + "*X3", "-(e/2)*B*X2 + m*" + om + "*X2"));
    // (1/2m)(P - e A_s)^2 - h.(P - e A_s)
    p.linearized_reference = parse(minimal_text("(e/2)*B*X3", "-(e/2)*B*X2") + " - " + om +
                                   "*(X3*(P2 + (e/2)*B*X3) - X2*(P3 - (e/2)*B*X2))");
    p.small_constants = {"G"};
    p.definitions = {{"Omega", lt ? kOmegaLT : kOmegaConstant}};
    p.sign_note = std::string(kLandauNote) +
                  " Gravitomagnetic part as in the single-field preset; H = (P - e A_s - m h)^2/2m = (P - e A_s)^2/2m "
                  "- h.(P - e A_s) + O(G^2).";
    return p;
}

ModelPreset gravito_zeeman() {
    ModelPreset p = gravito_constant();
    p.name = "gravito_zeeman";
    p.potential = fn("e^2/r");
    p.reference_hamiltonian += OperatorExpr(p.potential);
    *p.linearized_reference += OperatorExpr(p.potential);
    p.sign_note += " The Coulomb term commutes with the deformation.";
    return p;
}

const std::vector<std::string>& model_names() {
    static const std::vector<std::string> names{"landau",           "zeeman",           "aharonov_bohm",
                                                "gravito_constant", "lense_thirring",   "combined_constant",
                                                "combined_lense_thirring", "gravito_zeeman"};
    return names;
}

ModelPreset model_by_name(const std::string& name) {
    if (name == "landau") return landau();
    if (name == "zeeman") return zeeman();
    if (name == "aharonov_bohm") return aharonov_bohm();
    if (name == "gravito_constant") return gravito_constant();
    if (name == "lense_thirring") return lense_thirring();
    if (name == "combined_constant") return combined_em_gem(CombinedKind::constant);
    if (name == "combined_lense_thirring") return combined_em_gem(CombinedKind::lense_thirring);
    if (name == "gravito_zeeman") return gravito_zeeman();
    throw InvalidArgument("unknown model '" + name + "'");
}

OperatorExpr angular_momentum_x1() { return parse("X2*P3 - X3*P2"); }

GuidingCenter guiding_center(const DeformationMatrix& b) {
    const auto axial = b.axial_vector();
    int nonzero = 0;
    Axis axis = 0;
    for (Axis k = 0; k < kDim; ++k) {
        if (!axial[k].is_zero()) {
            ++nonzero;
            axis = k;
        }
    }
    if (nonzero == 0) throw SingularMatrixError("transverse block of the deformation matrix is zero");
    if (nonzero > 1) throw UnsupportedClassError("guiding center coordinates need a field along one coordinate axis");
    const CoordFunction& value = axial[axis];
    if (value.size() != 1) throw UnsupportedClassError("field strength entry must be a single monomial to invert");
    const Axis j = (axis + 1) % kDim, k = (axis + 2) % kDim;
    // block [[0, b], [-b, 0]] has inverse [[0, -1/b], [1/b, 0]]
    GuidingCenter out;
    out.axis = axis;
    out.inverse = DeformationMatrix::from_pair(j, k, -value.inverse_monomial());
    for (Axis i = 0; i < kDim; ++i) {
        out.coordinates[i] = OperatorExpr::position(i);
        for (Axis l = 0; l < kDim; ++l) {
            const CoordFunction& c = out.inverse(i, l);
            if (!c.is_zero()) {
                out.coordinates[i] -= OperatorExpr::momentum(l).left_multiplied(c.scaled(Complex(Rational(1, 2))));
            }
        }
    }
    for (Axis i = 0; i < kDim; ++i) {
        for (Axis l = 0; l < kDim; ++l) out.commutators[i][l] = commutator(out.coordinates[i], out.coordinates[l]);
    }
    return out;
}

UncertaintyBound uncertainty_bound(const DeformationMatrix& b) {
    const GuidingCenter gc = guiding_center(b);
    const Axis j = (gc.axis + 1) % kDim, k = (gc.axis + 2) % kDim;
    const CoordFunction& entry = gc.inverse(j, k);
    const auto& [m, c] = *entry.terms().begin();
    const Complex magnitude(abs(c.re));
    UncertaintyBound out;
    out.bound = CoordFunction::symbol("hbar") * CoordFunction::term(magnitude, m);
    out.area = (CoordFunction::symbol("pi") * out.bound).scaled(Complex(2));
    return out;
}

NumericUncertainty uncertainty_bound(const Rational& m, const Rational& omega, const Rational& hbar) {
    if (sgn(m) <= 0 || sgn(omega) <= 0 || sgn(hbar) <= 0) {
        throw InvalidArgument("uncertainty bound needs m > 0, Omega > 0 and hbar > 0");
    }
    NumericUncertainty out;
    out.bound = hbar / (m * omega);
    out.area_over_pi = 2 * out.bound;
    out.area = out.area_over_pi.get_d() * std::numbers::pi;
    return out;
}

std::pair<double, double> uncertainty_bound_numeric(double m, double omega, double hbar) {
    if (!(m > 0.0) || !(omega > 0.0) || !(hbar > 0.0)) {
        throw InvalidArgument("uncertainty bound needs m > 0, Omega > 0 and hbar > 0");
    }
    const double bound = hbar / (m * omega);
    return {bound, 2.0 * std::numbers::pi * bound};
}

double Flux::value() const { return rational_part.get_d() + pi_part.get_d() * std::numbers::pi; }

bool flux_equivalent(const Flux& phi1, const Flux& phi2, const Rational& e) {
    // e (a + b pi) = 2 pi n needs e a = 0 and e b / 2 integral, pi being irrational
    const Rational a = e * (phi1.rational_part - phi2.rational_part);
    const Rational half_b = e * (phi1.pi_part - phi2.pi_part) / 2;
    return sgn(a) == 0 && half_b.get_den() == 1;
}

bool flux_equivalent(const Rational& phi1, const Rational& phi2, const Rational& e) {
    return flux_equivalent(Flux::rational(phi1), Flux::rational(phi2), e);
}

}  // namespace warpqm
