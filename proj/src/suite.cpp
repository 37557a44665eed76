#include "warpqm/suite.hpp"

#include "warpqm/errors.hpp"
#include "warpqm/gauge.hpp"
#include "warpqm/models.hpp"
#include "warpqm/parser.hpp"
#include "warpqm/random_expr.hpp"

#include <algorithm>

namespace warpqm {

namespace {

constexpr std::size_t kDetailLimit = 240;

std::string clip(std::string s) {
    if (s.size() > kDetailLimit) s = s.substr(0, kDetailLimit) + "...";
    return s;
}

CheckResult compare_result(const std::string& name, const OperatorExpr& got, const OperatorExpr& expected) {
    const bool ok = equals(got, expected);
    return {name, ok, ok ? "0" : clip(to_string(got - expected))};
}

CheckResult flag(const std::string& name, bool ok, const std::string& failure) { return {name, ok, ok ? "" : failure}; }

OperatorExpr half_inverse_mass(const OperatorExpr& a) {
    return a.left_multiplied(CoordFunction::symbol("m", -1).scaled(Complex(Rational(1, 2))));
}

std::vector<QSpec> catalog() {
    return {QSpec::coordinate(), QSpec::radial_power(Exponent(1)), QSpec::radial_power(Exponent(3, 2)),
            QSpec::radial_power(Exponent(2)), QSpec::transverse_radial()};
}

DeformationMatrix catalog_matrix() {
    return DeformationMatrix::axial({CoordFunction::symbol("e") * CoordFunction::symbol("B"),
                                     CoordFunction(Complex(Rational(1, 3))), CoordFunction::symbol("G")});
}

/// P_j - sum_kl B_kl Q^l d_j Q^k written out from the matrix entries.
Triple momenta_by_hand(const DeformationSpec& spec) {
    Triple out;
    for (Axis j = 0; j < kDim; ++j) {
        CoordFunction shift;
        for (Axis k = 0; k < kDim; ++k) {
            for (Axis l = 0; l < kDim; ++l) {
                if (spec.matrix(k, l).is_zero()) continue;
                shift += spec.matrix(k, l) * spec.generator.components[l] * spec.generator.components[k].partial(j);
            }
        }
        out[j] = OperatorExpr::momentum(j) - OperatorExpr(shift);
    }
    return out;
}

DeformationMatrix random_skew(RandomExpr& gen) {
    static const char* names[] = {"e", "B", "G"};
    DeformationMatrix::Entries e;
    for (Axis i = 0; i < kDim; ++i) {
        for (Axis j = i + 1; j < kDim; ++j) {
            CoordFunction v(Complex(gen.rational()));
            if (gen.integer(0, 1) == 1) v *= CoordFunction::symbol(names[gen.integer(0, 2)]);
            e[i][j] = v;
            e[j][i] = -v;
        }
    }
    return DeformationMatrix(e);
}

void add_deformation_checks(std::vector<SuiteEntry>& suite, const SuiteOptions& o) {
    for (const QSpec& q : catalog()) {
        const DeformationSpec spec{catalog_matrix(), q};
        const std::string label = q.label();
        suite.push_back({"deform_h0/" + label, [spec, label, o] {
                             const Triple pi = momenta_by_hand(spec);
                             OperatorExpr expected;
                             for (Axis j = 0; j < kDim; ++j) expected += pi[j] * pi[j];
                             return compare_result("deform_h0/" + label,
                                                   deform_operator(free_hamiltonian(), spec, o.deform),
                                                   half_inverse_mass(expected));
                         }});
        suite.push_back({"deformed_momentum/" + label, [spec, label, o] {
                             const std::string name = "deformed_momentum/" + label;
                             const Triple got = deformed_momenta(spec, o.deform);
                             const Triple expected = momenta_by_hand(spec);
                             for (Axis j = 0; j < kDim; ++j) {
                                 if (!equals(got[j], expected[j])) {
                                     return CheckResult{name, false, clip(to_string(got[j] - expected[j]))};
                                 }
                             }
                             for (Axis k = 0; k < kDim; ++k) {
                                 for (Axis j = 0; j < kDim; ++j) {
                                     const OperatorExpr c = commutator(got[k], got[j]);
                                     const OperatorExpr want(rieffel_correction(spec, k, j).scaled(Complex(0, -2)));
                                     if (!equals(c, want)) return CheckResult{name, false, clip(to_string(c - want))};
                                 }
                             }
                             return CheckResult{name, true, "0"};
                         }});
        suite.push_back({"factorization/" + label, [spec, label, o] {
                             const std::string name = "factorization/" + label;
                             if (!factorization_check(spec, o.deform)) {
                                 return CheckResult{name, false, "deform(H0) != (1/2m) sum deform(P_j)^2"};
                             }
                             RandomExpr gen(o.seed ^ 0xfac7);
                             for (int t = 0; t < 5; ++t) {
                                 const OperatorExpr a = OperatorExpr::term(gen.function(1), MomentumMonomial::unit(static_cast<Axis>(gen.integer(0, 2))));
                                 const OperatorExpr b = OperatorExpr::term(gen.function(1), MomentumMonomial::unit(static_cast<Axis>(gen.integer(0, 2))));
                                 const OperatorExpr lhs = deform_operator(rieffel_product(a, b, spec), spec, o.deform);
                                 const OperatorExpr rhs = deform_operator(a, spec, o.deform) * deform_operator(b, spec, o.deform);
                                 if (!equals(lhs, rhs)) return CheckResult{name, false, clip(to_string(lhs - rhs))};
                             }
                             return CheckResult{name, true, "0"};
                         }});
        suite.push_back({"rieffel_sum/" + label, [spec, label] {
                             OperatorExpr sum, squares;
                             for (Axis k = 0; k < kDim; ++k) {
                                 const OperatorExpr p = OperatorExpr::momentum(k);
                                 sum += rieffel_product(p, p, spec);
                                 squares += p * p;
                             }
                             return compare_result("rieffel_sum/" + label, sum, squares);
                         }});
    }
    suite.push_back({"additivity", [o] {
                         RandomExpr gen(o.seed ^ 0xadd);
                         const std::vector<QSpec> qs = catalog();
                         for (std::size_t t = 0; t < o.random_cases; ++t) {
                             const QSpec& q = qs[t % qs.size()];
                             if (!check_additivity(free_hamiltonian(), {random_skew(gen), q}, {random_skew(gen), q}, o.deform)) {
                                 return CheckResult{"additivity", false, "case " + std::to_string(t) + " (" + q.label() + ")"};
                             }
                         }
                         return CheckResult{"additivity", true, std::to_string(o.random_cases) + " cases"};
                     }});
    suite.push_back({"deformed_coordinate", [o] {
                         RandomExpr gen(o.seed ^ 0x3077);
                         for (std::size_t t = 0; t < o.random_cases; ++t) {
                             const DeformationMatrix theta = random_skew(gen);
                             const Triple x = deform_coordinate(theta);
                             for (Axis i = 0; i < kDim; ++i) {
                                 for (Axis j = 0; j < kDim; ++j) {
                                     const OperatorExpr c = commutator(x[i], x[j]);
                                     if (c != OperatorExpr(theta(i, j).scaled(Complex(0, -2)))) {
                                         return CheckResult{"deformed_coordinate", false, "case " + std::to_string(t)};
                                     }
                                 }
                             }
                         }
                         return CheckResult{"deformed_coordinate", true, std::to_string(o.random_cases) + " cases"};
                     }});
}

void add_coefficient_checks(std::vector<SuiteEntry>& suite) {
    for (const Exponent n : {Exponent(-1), Exponent(0), Exponent(1), Exponent(3, 2), Exponent(2), Exponent(3)}) {
        const std::string name = "coefficients/n=" + n.str();
        suite.push_back({name, [n, name] {
                             const Rational nq = n.to_rational();
                             const Rational a = nq * nq - 3 * nq;
                             const Rational b = nq * nq - 2 * nq + 3;
                             OperatorExpr squares;
                             for (Axis k = 0; k < kDim; ++k) {
                                 const OperatorExpr q(CoordFunction::coordinate(k) * CoordFunction::r_power(-n));
                                 OperatorExpr sum, transport;
                                 for (Axis j = 0; j < kDim; ++j) {
                                     const OperatorExpr p = OperatorExpr::momentum(j);
                                     sum += anticommutator(p, commutator(p, q));
                                     transport += commutator(p, q) * p;
                                     const OperatorExpr qp = commutator(q, p);
                                     squares += qp * qp;
                                 }
                                 // {P_j, [P_j, Q^k]} = -a(n) X^k r^-(n+2) + 2 [P_j, Q^k] P_j
                                 const CoordFunction expected =
                                     (CoordFunction::coordinate(k) * CoordFunction::r_power(-n - Exponent(2))).scaled(Complex(-a));
                                 if (!equals(sum.coordinate_part(), expected) ||
                                     !equals(sum - OperatorExpr(expected), transport.scaled(Complex(2)))) {
                                     return CheckResult{name, false, clip(to_string(sum) + " vs " + to_string(expected))};
                                 }
                             }
                             const CoordFunction expected = CoordFunction::r_power(-n - n).scaled(Complex(-b));
                             if (squares.momentum_degree() > 0 || !equals(squares.coordinate_part(), expected)) {
                                 return CheckResult{name, false, clip(to_string(squares) + " vs " + to_string(expected))};
                             }
                             return CheckResult{name, true, "a(n) = " + to_string(a) + ", b(n) = " + to_string(b)};
                         }});
    }
}

void add_model_checks(std::vector<SuiteEntry>& suite, const SuiteOptions& o) {
    for (const std::string& model : model_names()) {
        suite.push_back({"model/" + model, [model, o] {
                             const ModelPreset p = model_by_name(model);
                             return compare_result("model/" + model, p.deformed(o.deform), p.reference_hamiltonian);
                         }});
        const ModelPreset preset = model_by_name(model);
        if (preset.linearized_reference) {
            suite.push_back({"model_linearized/" + model, [model, o] {
                                 const ModelPreset p = model_by_name(model);
                                 return compare_result("model_linearized/" + model, p.deformed_linearized(o.deform),
                                                       *p.linearized_reference);
                             }});
        }
        if (preset.specs.size() == 2) {
            suite.push_back({"order_independence/" + model, [model, o] {
                                 const ModelPreset p = model_by_name(model);
                                 const OperatorExpr reversed = deform_operator(
                                     deform_operator(p.base_hamiltonian(), p.specs[1], o.deform), p.specs[0], o.deform);
                                 return compare_result("order_independence/" + model, reversed, p.deformed(o.deform));
                             }});
        }
        for (std::size_t s = 0; s < preset.specs.size(); ++s) {
            const std::string suffix = model + (preset.specs.size() > 1 ? "/" + std::to_string(s + 1) : "");
            const DeformationSpec spec = preset.specs[s];
            const CoordFunction coupling = preset.couplings[s];
            const CoordFunction potential = s == 0 ? preset.potential : CoordFunction();
            suite.push_back({"gauge_curl/" + suffix, [=] {
                                 return flag("gauge_curl/" + suffix, gauge_curl_check(spec, coupling, o.deform),
                                             "commutator field strength differs from the curl of the extracted field");
                             }});
            suite.push_back({"bianchi/" + suffix, [=] {
                                 return flag("bianchi/" + suffix, bianchi_check(spec, coupling, o.deform),
                                             "cyclic derivative sum of F is not zero");
                             }});
            suite.push_back({"lorentz/" + suffix, [=] {
                                 return flag("lorentz/" + suffix, lorentz_force(spec, potential, coupling, o.deform).holds,
                                             "[H, Pi_j] differs from -i g (E_j + {Pi_k, F_kj}/2m)");
                             }});
            suite.push_back({"jacobi_maxwell/" + suffix, [=] {
                                 const JacobiMaxwellReport r = jacobi_maxwell_report(spec, potential, coupling, o.deform);
                                 std::string failing;
                                 for (const auto& id : r.identities) {
                                     if (!id.zero) failing += (failing.empty() ? "" : ", ") + id.name;
                                 }
                                 return CheckResult{"jacobi_maxwell/" + suffix, r.all_zero(), clip(failing)};
                             }});
        }
    }
    suite.push_back({"ab_field_strength_zero", [o] {
                         const ModelPreset p = aharonov_bohm();
                         const FieldStrength f = field_strength(p.specs[0], p.couplings[0], o.deform);
                         for (Axis i = 0; i < kDim; ++i) {
                             for (Axis j = 0; j < kDim; ++j) {
                                 if (!is_zero_function(f(i, j))) {
                                     return CheckResult{"ab_field_strength_zero", false, clip(to_string(f(i, j)))};
                                 }
                             }
                         }
                         return CheckResult{"ab_field_strength_zero", true, "0"};
                     }});
}

void add_moyal_checks(std::vector<SuiteEntry>& suite) {
    suite.push_back({"guiding_center", [] {
                         const GuidingCenter gc = guiding_center(landau().specs[0].matrix);
                         const Triple theta = deform_coordinate(gc.inverse.scaled(CoordFunction(Complex(Rational(-1, 2)))));
                         for (Axis i = 0; i < kDim; ++i) {
                             if (theta[i] != gc.coordinates[i]) return CheckResult{"guiding_center", false, "coordinates"};
                             for (Axis j = 0; j < kDim; ++j) {
                                 const OperatorExpr c = commutator(gc.coordinates[i], gc.coordinates[j]);
                                 const OperatorExpr want(gc.inverse(i, j).scaled(Complex::imaginary_unit()));
                                 if (c != want) return CheckResult{"guiding_center", false, clip(to_string(c - want))};
                             }
                         }
                         return CheckResult{"guiding_center", true, "[X_i, X_j] = i (B^-1)_ij"};
                     }});
    suite.push_back({"uncertainty_area", [] {
                         const UncertaintyBound u = uncertainty_bound(DeformationMatrix::axial(
                             {CoordFunction::symbol("m") * CoordFunction::symbol("Omega"), CoordFunction(), CoordFunction()}));
                         const CoordFunction want = parse_function("2*pi*hbar/(m*Omega)");
                         return CheckResult{"uncertainty_area", u.area == want, to_string(u.area)};
                     }});
}

void add_property_checks(std::vector<SuiteEntry>& suite, const SuiteOptions& o) {
    suite.push_back({"properties/ring_jacobi", [o] {
                         RandomExpr gen(o.seed ^ 0x5106);
                         for (std::size_t t = 0; t < o.random_cases; ++t) {
                             const OperatorExpr a = gen.expr(2, 2), b = gen.expr(2, 2), c = gen.expr(2, 1);
                             const OperatorExpr jacobi = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                                                         commutator(c, commutator(a, b));
                             const bool ok = equals((a * b) * c, a * (b * c)) && equals(a * (b + c), a * b + a * c) &&
                                             equals((a + b) * c, a * c + b * c) && is_zero_function(jacobi.coordinate_part()) &&
                                             std::all_of(jacobi.terms().begin(), jacobi.terms().end(),
                                                         [](const auto& term) { return is_zero_function(term.second); });
                             if (!ok) return CheckResult{"properties/ring_jacobi", false, "case " + std::to_string(t)};
                         }
                         return CheckResult{"properties/ring_jacobi", true, std::to_string(o.random_cases) + " cases"};
                     }});
}

}  // namespace

std::vector<SuiteEntry> identity_suite(const SuiteOptions& options) {
    std::vector<SuiteEntry> suite;
    add_deformation_checks(suite, options);
    add_coefficient_checks(suite);
    add_model_checks(suite, options);
    add_moyal_checks(suite);
    add_property_checks(suite, options);
    return suite;
}

std::vector<SuiteEntry> select(const std::vector<SuiteEntry>& suite, const std::vector<std::string>& prefixes) {
    if (prefixes.empty()) return suite;
    std::vector<SuiteEntry> out;
    for (const auto& e : suite) {
        for (const auto& p : prefixes) {
            if (e.name.compare(0, p.size(), p) == 0 && !p.empty()) {
                out.push_back(e);
                break;
            }
        }
    }
    return out;
}

bool SuiteReport::all_passed() const {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

Json SuiteReport::to_json() const {
    Json list = Json::array();
    std::size_t failed = 0;
    for (const auto& r : results) {
        list.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        if (!r.passed) ++failed;
    }
    return Json{{"all_passed", all_passed()}, {"selected", results.size()}, {"failed", failed}, {"identities", list}};
}

SuiteReport run_suite(const std::vector<SuiteEntry>& entries) {
    SuiteReport report;
    for (const auto& e : entries) {
        try {
            report.results.push_back(e.run());
        } catch (const Error& ex) {
            report.results.push_back({e.name, false, std::string("error: ") + ex.what()});
        }
    }
    return report;
}

}  // namespace warpqm
