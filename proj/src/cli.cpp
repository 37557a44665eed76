#include "warpqm/cli.hpp"

#include "warpqm/errors.hpp"
#include "warpqm/models.hpp"
#include "warpqm/parser.hpp"
#include "warpqm/spectra.hpp"
#include "warpqm/suite.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace warpqm::cli {

namespace {

/// Raised for anything wrong with the invocation itself (exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

/// Errors raised by the numeric layer are reported as exit code 4 regardless of type.
struct NumericFailure : Error {
    using Error::Error;
};

struct RunConfig {
    std::string command;
    std::string model;
    std::vector<std::string> b_entries;
    int axis = 1;
    std::string q = "coordinate";
    std::string op;
    std::string with;
    std::string coupling;
    std::string potential;
    bool deformed = false;
    std::vector<std::string> constants;
    std::string grid = "128,10";
    std::size_t k = 16;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "json";
    std::vector<std::string> only;
    bool only_given = false;
    bool inject_sign_flip = false;
    std::size_t random_cases = 100;
    std::vector<double> radii{1.0};
    std::vector<double> center{0.0, 0.0};
    std::size_t points = 256;
    std::string scheme = "peierls";
};

/// Exact rational from "3", "-3/2" or a decimal such as "1.5" or "2.5e-3".
Rational parse_rational(const std::string& text) {
    const std::string s = text;
    try {
        if (s.find('/') != std::string::npos) {
            Rational q(s);
            q.canonicalize();
            if (q.get_den() == 0) throw ConfigError("zero denominator in '" + text + "'");
            return q;
        }
        std::size_t epos = s.find_first_of("eE");
        const std::string mantissa = s.substr(0, epos);
        long exponent = epos == std::string::npos ? 0 : std::stol(s.substr(epos + 1));
        const std::size_t dot = mantissa.find('.');
        std::string digits = mantissa;
        if (dot != std::string::npos) {
            digits.erase(dot, 1);
            exponent -= static_cast<long>(mantissa.size() - dot - 1);
        }
        if (digits.empty() || digits == "-" || digits == "+") throw ConfigError("not a number: '" + text + "'");
        if (digits[0] == '+') digits.erase(0, 1);
        Rational q{mpz_class(digits)};
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
        q = exponent >= 0 ? Rational(q * scale) : Rational(q / scale);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ConfigError("not a number: '" + text + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError("number out of range: '" + text + "'");
    }
}

std::map<std::string, Rational> parse_constants(const std::vector<std::string>& items) {
    const auto& known = builtin_constants();
    std::map<std::string, Rational> out;
    for (const auto& item : items) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("constant '" + item + "' is not of the form name=value");
        const std::string name = item.substr(0, eq);
        if (!known.contains(name)) throw ConfigError("unknown constant '" + name + "'");
        out[name] = parse_rational(item.substr(eq + 1));
    }
    return out;
}

NumericConstants numeric(const std::map<std::string, Rational>& c) {
    NumericConstants out;
    for (const auto& [k, v] : c) out[k] = v.get_d();
    return out;
}

Axis parse_axis(int axis) {
    if (axis < 1 || axis > 3) throw ConfigError("--axis must be 1, 2 or 3");
    return static_cast<Axis>(axis - 1);
}

CoordFunction constant_entry(const std::string& text) {
    const CoordFunction f = parse_function(text);
    if (!f.is_constant()) throw ConfigError("matrix entry '" + text + "' depends on X");
    return f;
}

QSpec parse_q(const std::string& text) {
    const std::size_t colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    if (kind == "coordinate" && colon == std::string::npos) return QSpec::coordinate();
    if (kind == "transverse" && colon == std::string::npos) return QSpec::transverse_radial();
    if (kind == "radial" && colon != std::string::npos) {
        const Rational n = parse_rational(text.substr(colon + 1));
        if (!n.get_num().fits_slong_p() || !n.get_den().fits_slong_p()) throw ConfigError("radial power too large");
        return QSpec::radial_power(Exponent(n.get_num().get_si(), n.get_den().get_si()));
    }
    throw ConfigError("--Q must be coordinate, transverse or radial:n (got '" + text + "')");
}

DeformationMatrix parse_matrix(const RunConfig& c) {
    const Axis axis = parse_axis(c.axis);
    std::vector<std::string> entries = c.b_entries;
    if (entries.empty()) entries = {"B"};
    switch (entries.size()) {
    case 1: {
        std::array<CoordFunction, kDim> b;
        b[axis] = constant_entry(entries[0]);
        return DeformationMatrix::axial(b);
    }
    case 3:
        return DeformationMatrix::axial({constant_entry(entries[0]), constant_entry(entries[1]), constant_entry(entries[2])});
    case 9: {
        DeformationMatrix::Entries e;
        for (Axis i = 0; i < kDim; ++i) {
            for (Axis j = 0; j < kDim; ++j) e[i][j] = constant_entry(entries[3 * i + j]);
        }
        try {
            return DeformationMatrix(e);
        } catch (const InvalidArgument& ex) {
            throw ConfigError(std::string("--B: ") + ex.what());
        }
    }
    default:
        throw ConfigError("--B takes 1 (along --axis), 3 (axial vector) or 9 (row-major matrix) entries");
    }
}

/// Model preset by name, or the inline spec from --B/--Q with coupling --coupling (default e).
ModelPreset resolve_model(const RunConfig& c, bool allow_free) {
    if (!c.model.empty()) {
        if (c.model == "free" && allow_free) {
            ModelPreset p;
            p.name = "free";
            p.reference_hamiltonian = free_hamiltonian();
            return p;
        }
        try {
            return model_by_name(c.model);
        } catch (const InvalidArgument& ex) {
            throw ConfigError(ex.what());
        }
    }
    ModelPreset p;
    p.name = "inline";
    p.specs = {{parse_matrix(c), parse_q(c.q)}};
    p.couplings = {parse_function(c.coupling.empty() ? "e" : c.coupling)};
    if (!c.potential.empty()) p.potential = parse_function(c.potential);
    return p;
}

OperatorExpr substitute_all(OperatorExpr a, const std::map<std::string, Rational>& constants) {
    for (const auto& [name, value] : constants) a = substitute(a, name, CoordFunction(Complex(value)));
    return a;
}

Json operator_json(const OperatorExpr& a) {
    Json j = to_json(a);
    return j;
}

std::string format_double(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

DeformOptions deform_options(const RunConfig& c) { return {c.inject_sign_flip}; }

Json cmd_deform(const RunConfig& c) {
    const ModelPreset p = resolve_model(c, false);
    const auto constants = parse_constants(c.constants);
    OperatorExpr result;
    Json source;
    if (!c.model.empty() && c.op.empty()) {
        result = p.deformed(deform_options(c));
        source = p.to_json();
    } else {
        const OperatorExpr input = c.op.empty() ? p.base_hamiltonian() : parse(c.op);
        result = input;
        for (const auto& spec : p.specs) result = deform_operator(result, spec, deform_options(c));
        source = {{"operator", to_string(input)}};
        if (c.model.empty()) source["generator"] = p.specs[0].generator.label();
    }
    result = substitute_all(result, constants);
    Json j{{"command", "deform"}, {"model", p.name}, {"source", source}, {"result", operator_json(result)}};
    return j;
}

Json cmd_commutator(const RunConfig& c) {
    if (c.op.empty() || c.with.empty()) throw ConfigError("commutator needs --operator and --with");
    OperatorExpr a = parse(c.op), b = parse(c.with);
    if (c.deformed) {
        const ModelPreset p = resolve_model(c, false);
        for (const auto& spec : p.specs) {
            a = deform_operator(a, spec, deform_options(c));
            b = deform_operator(b, spec, deform_options(c));
        }
    }
    const auto constants = parse_constants(c.constants);
    const OperatorExpr result = substitute_all(commutator(a, b), constants);
    return Json{{"command", "commutator"},
                {"lhs", to_string(a)},
                {"rhs", to_string(b)},
                {"deformed", c.deformed},
                {"result", operator_json(result)}};
}

Json cmd_gauge(const RunConfig& c, bool& failed) {
    const ModelPreset p = resolve_model(c, false);
    const DeformOptions o = deform_options(c);
    Json fields = Json::array();
    failed = false;
    for (std::size_t s = 0; s < p.specs.size(); ++s) {
        const CoordFunction coupling = c.coupling.empty() ? p.couplings[s] : parse_function(c.coupling);
        const CoordFunction potential = s == 0 ? p.potential : CoordFunction();
        const GaugeField a = extract_gauge_field(p.specs[s], coupling);
        const FieldStrength f = field_strength(p.specs[s], coupling, o);
        Json a_json = Json::array(), f_json = Json::array();
        for (Axis i = 0; i < kDim; ++i) {
            a_json.push_back(to_string(a.A[i]));
            Json row = Json::array();
            for (Axis j = 0; j < kDim; ++j) row.push_back(to_string(f(i, j)));
            f_json.push_back(row);
        }
        const bool curl = gauge_curl_check(p.specs[s], coupling, o);
        const bool bianchi = bianchi_check(p.specs[s], coupling, o);
        const bool lorentz = lorentz_force(p.specs[s], potential, coupling, o).holds;
        const JacobiMaxwellReport jm = jacobi_maxwell_report(p.specs[s], potential, coupling, o);
        failed = failed || !curl || !bianchi || !lorentz || !jm.all_zero();
        fields.push_back({{"coupling", to_string(coupling)},
                          {"potential_vector", a_json},
                          {"field_strength", f_json},
                          {"gauge_curl_check", curl},
                          {"bianchi", bianchi},
                          {"lorentz_force", lorentz},
                          {"jacobi_maxwell", jm.to_json()}});
    }
    return Json{{"command", "gauge"}, {"model", p.name}, {"all_passed", !failed}, {"fields", fields}};
}

Json cmd_verify(const RunConfig& c, bool& failed) {
    SuiteOptions o;
    o.seed = c.seed;
    o.random_cases = c.random_cases;
    o.deform = deform_options(c);
    std::vector<std::string> prefixes = c.only;
    if (c.only_given && prefixes.empty()) prefixes = {""};
    const SuiteReport report = run_suite(select(identity_suite(o), prefixes));
    failed = !report.all_passed();
    Json j{{"command", "verify"}, {"seed", c.seed}, {"inject_sign_flip", c.inject_sign_flip}};
    j.update(report.to_json());
    return j;
}

GridSpec parse_grid(const RunConfig& c) {
    const std::size_t comma = c.grid.find(',');
    if (comma == std::string::npos) throw ConfigError("--grid must be N,L");
    GridSpec g;
    try {
        std::size_t used = 0;
        const long n = std::stol(c.grid.substr(0, comma), &used);
        if (n < 4 || used != comma) throw ConfigError("--grid N must be an integer of at least 4");
        g.points = static_cast<std::size_t>(n);
        const std::string l = c.grid.substr(comma + 1);
        g.extent = std::stod(l, &used);
        if (used != l.size() || !(g.extent > 0)) throw ConfigError("--grid L must be positive");
    } catch (const std::logic_error&) {
        throw ConfigError("--grid must be N,L");
    }
    g.axis = parse_axis(c.axis);
    return g;
}

std::optional<double> numeric_value(const CoordFunction& f, const NumericConstants& k) {
    try {
        const auto v = evaluate_numeric(f, {0, 0, 0}, k);
        if (!std::isfinite(v.real())) return std::nullopt;
        return v.real();
    } catch (const Error&) {
        return std::nullopt;
    }
}

Json cmd_spectrum(const RunConfig& c, std::string& csv) {
    const ModelPreset p = resolve_model(c, true);
    const auto constants = parse_constants(c.constants);
    const GridSpec grid = parse_grid(c);
    if (c.k == 0 || c.k > 64) throw ConfigError("--k must be between 1 and 64");
    if (c.scheme != "peierls" && c.scheme != "central") throw ConfigError("--scheme must be peierls or central");
    NumericConstants k = numeric(constants);
    k.emplace("pi", std::numbers::pi);
    k.emplace("hbar", 1.0);

    SpectrumResult result;
    try {
        DiscretizeOptions d;
        d.scheme = c.scheme == "central" ? Discretization::central : Discretization::peierls;
        const GridHamiltonian h = discretize(p.deformed(deform_options(c)), grid, k, d);
        EigenOptions e;
        e.count = c.k;
        e.seed = c.seed;
        result = eigenvalues(h, e);
    } catch (const UnboundConstantError& ex) {
        throw ConfigError(ex.what());
    } catch (const Error& ex) {
        throw NumericFailure(ex.what());
    }
    const LevelReport levels = distinct_levels(result);

    Json j{{"command", "spectrum"}, {"model", p.name}, {"seed", c.seed}, {"scheme", c.scheme}};
    Json cj = Json::object();
    for (const auto& [name, v] : constants) cj[name] = v.get_d();
    j["constants"] = cj;
    j["spectrum"] = result.to_json();
    j["coarse"] = result.coarse;
    j["warnings"] = result.warnings;
    j["levels"] = levels.to_json();

    // cyclotron frequency g|F_plane| / m summed over the deformations
    const auto [ua, va] = grid.plane_axes();
    double cyclotron = 0.0;
    bool known = !p.specs.empty();
    for (std::size_t s = 0; s < p.specs.size() && known; ++s) {
        const CoordFunction gf = p.couplings[s] * field_strength(p.specs[s], p.couplings[s])(ua, va);
        const auto v = numeric_value(gf * CoordFunction::symbol("m", -1), k);
        if (v) cyclotron += *v;
        known = known && v.has_value();
    }
    Json ratios = Json::object();
    if (known && cyclotron != 0.0) {
        j["cyclotron_frequency"] = std::abs(cyclotron);
        Json r = Json::array();
        for (const double sp : levels.spacings) r.push_back(sp / std::abs(cyclotron));
        ratios["cyclotron_frequency"] = r;
    }
    for (const auto& [name, text] : p.definitions) {
        std::optional<double> v;
        try {
            v = numeric_value(parse_function(text), k);
        } catch (const Error&) {
        }
        if (!v || *v == 0.0) continue;
        Json r = Json::array();
        for (const double sp : levels.spacings) r.push_back(sp / *v);
        ratios[name] = r;
    }
    j["spacing_over"] = ratios;

    std::ostringstream s;
    s << "index,eigenvalue,residual,bulk_weight\n";
    for (std::size_t i = 0; i < result.count(); ++i) {
        s << i << ',' << format_double(result.eigenvalues[i]) << ',' << format_double(result.residuals[i]) << ','
          << format_double(result.bulk_weights[i]) << '\n';
    }
    csv = s.str();
    return j;
}

Json cmd_holonomy(const RunConfig& c) {
    RunConfig with_default = c;
    if (with_default.model.empty() && with_default.b_entries.empty()) with_default.model = "aharonov_bohm";
    const ModelPreset p = resolve_model(with_default, false);
    const auto constants = parse_constants(c.constants);
    if (c.center.size() != 2) throw ConfigError("--center takes two coordinates");
    if (c.points < 3) throw ConfigError("--points must be at least 3");
    const Axis axis = parse_axis(c.axis);
    const GaugeField field = extract_gauge_field(p.specs[0], c.coupling.empty() ? p.couplings[0] : parse_function(c.coupling));
    Json loops = Json::array();
    for (const double r : c.radii) {
        if (!(r > 0)) throw ConfigError("--radius values must be positive");
        double value = 0.0;
        try {
            value = holonomy(field, {axis, r, {c.center[0], c.center[1]}, 0.0}, c.points, numeric(constants));
        } catch (const UnboundConstantError& ex) {
            throw ConfigError(ex.what());
        } catch (const Error& ex) {
            throw NumericFailure(ex.what());
        }
        loops.push_back({{"radius", r}, {"value", value}});
    }
    Json a = Json::array();
    for (Axis i = 0; i < kDim; ++i) a.push_back(to_string(field.A[i]));
    return Json{{"command", "holonomy"},
                {"model", p.name},
                {"axis", c.axis},
                {"center", c.center},
                {"points", c.points},
                {"potential_vector", a},
                {"loops", loops}};
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw ConfigError("cannot open '" + c.out + "' for writing");
    f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Warped-convolution deformations of quantum-mechanical operators", "warpqm"};
    app.set_config("--config", "", "Flat key = value file; command-line flags win");
    app.require_subcommand(1, 1);
    RunConfig c;

    app.add_option("--model", c.model, "Model preset (" + [] {
        std::string s;
        for (const auto& n : model_names()) s += (s.empty() ? "" : ", ") + n;
        return s + "; spectrum also accepts free)";
    }());
    app.add_option("--B", c.b_entries, "Deformation matrix: 1 entry along --axis, 3 (axial) or 9 (row-major)")->delimiter(',');
    app.add_option("--axis", c.axis, "Field axis 1, 2 or 3")->capture_default_str();
    app.add_option("--Q", c.q, "Generator: coordinate, transverse or radial:n")->capture_default_str();
    app.add_option("--operator", c.op, "Operator expression (deform: operand, commutator: left side)");
    app.add_option("--with", c.with, "Right side of the commutator");
    app.add_option("--coupling", c.coupling, "Coupling constant g (default e, or the preset's)");
    app.add_option("--potential", c.potential, "Scalar potential for inline specs");
    app.add_flag("--deformed", c.deformed, "Deform both commutator operands first");
    app.add_option("--constants", c.constants, "name=value pairs")->delimiter(',');
    app.add_option("--grid", c.grid, "Grid points per axis and extent, N,L")->capture_default_str();
    app.add_option("--k", c.k, "Number of eigenvalues (at most 64)")->capture_default_str();
    app.add_option("--seed", c.seed, "Seed for randomized checks and the eigensolver start vector")->capture_default_str();
    app.add_option("--out", c.out, "Output file (default stdout)");
    app.add_option("--format", c.format, "json or csv (csv: spectrum only)")->capture_default_str();
    auto* only = app.add_option("--only", c.only, "verify: identity name prefixes")->delimiter(',')->expected(0, -1);
    app.add_flag("--inject-sign-flip", c.inject_sign_flip, "Negative control: flip the commutator sign in the deformation");
    app.add_option("--random-cases", c.random_cases, "verify: cases per randomized identity")->capture_default_str();
    app.add_option("--radius", c.radii, "holonomy: loop radii")->delimiter(',');
    app.add_option("--center", c.center, "holonomy: loop center in the plane")->delimiter(',');
    app.add_option("--points", c.points, "holonomy: quadrature points")->capture_default_str();
    app.add_option("--scheme", c.scheme, "spectrum: peierls or central")->capture_default_str();

    for (const char* name : {"deform", "verify", "spectrum", "holonomy", "gauge", "commutator"}) {
        app.add_subcommand(name)->fallthrough();
    }
    app.get_subcommand("deform")->description("Deform an operator or a preset Hamiltonian");
    app.get_subcommand("verify")->description("Run the symbolic identity suite");
    app.get_subcommand("spectrum")->description("Low-lying spectrum of a preset on a grid");
    app.get_subcommand("holonomy")->description("Line integral of the gauge field around circles");
    app.get_subcommand("gauge")->description("Gauge field, field strength and Maxwell identities");
    app.get_subcommand("commutator")->description("Commutator of two operators");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }
    c.command = app.get_subcommands().front()->get_name();
    c.only_given = only->count() > 0 || !c.only.empty();

    try {
        if (c.format != "json" && c.format != "csv") throw ConfigError("--format must be json or csv");
        if (c.format == "csv" && c.command != "spectrum") throw ConfigError("csv output is only available for spectrum");
        bool failed = false;
        Json j;
        std::string csv;
        if (c.command == "deform") {
            j = cmd_deform(c);
        } else if (c.command == "verify") {
            j = cmd_verify(c, failed);
        } else if (c.command == "spectrum") {
            j = cmd_spectrum(c, csv);
            for (const auto& w : j["warnings"]) err << "warning: " << w.get<std::string>() << '\n';
        } else if (c.command == "holonomy") {
            j = cmd_holonomy(c);
        } else if (c.command == "gauge") {
            j = cmd_gauge(c, failed);
        } else {
            j = cmd_commutator(c);
        }
        emit(c, c.format == "csv" ? csv : j.dump(2) + "\n", out);
        return failed ? kIdentityFailure : kOk;
    } catch (const NumericFailure& e) {
        err << "error: " << e.what() << '\n';
        return kNumericFailure;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const UnsupportedClassError& e) {
        err << "error: " << e.what() << '\n';
        return kUnsupportedClass;
    } catch (const UnsupportedDegreeError& e) {
        err << "error: " << e.what() << '\n';
        return kUnsupportedClass;
    } catch (const NonConvergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kNumericFailure;
    } catch (const SingularPointError& e) {
        err << "error: " << e.what() << '\n';
        return kNumericFailure;
    } catch (const InexactValueError& e) {
        err << "error: " << e.what() << '\n';
        return kNumericFailure;
    } catch (const InternalInconsistencyError& e) {
        err << "error: " << e.what() << '\n';
        return kNumericFailure;
    } catch (const Error& e) {
        // parse errors, unknown symbols, invalid arguments, zero couplings, singular matrices
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }
}

}  // namespace warpqm::cli
