// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "warpqm/cli.hpp"
#include "warpqm/gauge.hpp"
#include "warpqm/models.hpp"
#include "warpqm/parser.hpp"
#include "warpqm/spectra.hpp"
#include "warpqm/suite.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace warpqm;

namespace {

constexpr double kSymbolicBudgetSeconds = 10.0;
constexpr std::size_t kRandomPairs = 100;
constexpr std::size_t kPropertyCases = 1000;
constexpr std::size_t kGridPoints = 128;
constexpr double kGridExtent = 10.0;
constexpr std::size_t kEigenCount = 64;
constexpr double kSpacingTolerance = 0.02;
constexpr double kSpectrumBudgetSeconds = 60.0;
constexpr double kHolonomyTolerance = 0.005;
constexpr double kOffAxisTolerance = 1e-3;
constexpr std::size_t kLoopPoints = 256;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
    bool passed;
    std::string detail;
};

Verdict suite_verdict(const std::vector<std::string>& prefixes, std::size_t random_cases, double budget = 0.0) {
    SuiteOptions o;
    o.random_cases = random_cases;
    const auto entries = select(identity_suite(o), prefixes);
    const auto t0 = Clock::now();
    const SuiteReport report = run_suite(entries);
    const double elapsed = seconds_since(t0);
    std::ostringstream s;
    std::size_t failed = 0;
    std::string first;
    for (const auto& r : report.results) {
        if (!r.passed && failed++ == 0) first = r.name + ": " + r.detail.substr(0, 160);
    }
    s << report.results.size() << " identities, " << failed << " failed, " << elapsed << " s";
    if (!first.empty()) s << "; first failure " << first;
    const bool in_budget = budget <= 0.0 || elapsed < budget;
    if (!in_budget) s << "; over the " << budget << " s budget";
    return {!entries.empty() && report.all_passed() && in_budget, s.str()};
}

double numeric(const std::string& expr, const NumericConstants& k) {
    return evaluate_numeric(parse_function(expr), {0, 0, 0}, k).real();
}

/// Lowest three level spacings of a preset on the acceptance grid, divided by `unit`.
Verdict spacing_verdict(const std::string& model, const NumericConstants& k, double unit, double expected) {
    GridSpec grid;
    grid.points = kGridPoints;
    grid.extent = kGridExtent;
    const auto t0 = Clock::now();
    EigenOptions e;
    e.count = kEigenCount;
    const SpectrumResult spectrum = eigenvalues(discretize(model_by_name(model).deformed(), grid, k), e);
    const LevelReport levels = distinct_levels(spectrum);
    const double elapsed = seconds_since(t0);
    std::ostringstream s;
    bool ok = levels.spacings.size() >= 3 && elapsed < kSpectrumBudgetSeconds;
    s << "spacing/unit =";
    for (std::size_t i = 0; i < std::min<std::size_t>(3, levels.spacings.size()); ++i) {
        const double ratio = levels.spacings[i] / unit;
        s << ' ' << ratio;
        ok = ok && std::abs(ratio - expected) <= kSpacingTolerance * expected;
    }
    s << " (expected " << expected << " within " << 100 * kSpacingTolerance << "%), " << levels.levels.size()
      << " levels, " << elapsed << " s";
    return {ok, s.str()};
}

Verdict check_landau() {
    // magnetic length 1/sqrt(eB) = 1 = L/10; harmonic reduction gives spacing eB/m
    const NumericConstants k{{"m", 1.0}, {"e", 1.0}, {"B", 1.0}};
    return spacing_verdict("landau", k, 1.0, 1.0);
}

Verdict check_gravito() {
    const NumericConstants k{{"m", 1.0}, {"G", 0.25}, {"M", 1.0}, {"r_hs", 1.0}, {"omega", 1.0}};
    const double omega = numeric(model_by_name("gravito_constant").definitions.at("Omega"), k);
    return spacing_verdict("gravito_constant", k, omega, 2.0);
}

Verdict check_holonomy() {
    const ModelPreset p = model_by_name("aharonov_bohm");
    const GaugeField a = extract_gauge_field(p.specs[0], p.couplings[0]);
    const double phi = 1.0;
    const NumericConstants k{{"phi_M", phi}};
    std::ostringstream s;
    bool ok = true;
    for (const double r : {0.5, 1.0, 2.0}) {
        const double h = holonomy(a, {0, r, {0.0, 0.0}, 0.0}, kLoopPoints, k);
        // counter-clockwise in (x2, x3) picks up -phi_M with the P = -i d sign convention
        ok = ok && std::abs(std::abs(h) - phi) <= kHolonomyTolerance * phi;
        s << "R=" << r << ": " << h << ", ";
    }
    const double off = holonomy(a, {0, 1.0, {3.0, 0.0}, 0.0}, kLoopPoints, k);
    ok = ok && std::abs(off) < kOffAxisTolerance * phi;
    s << "off-axis: " << off;

    // truth table: e (phi1 - phi2) = 2 pi n, fluxes a + b pi, decided here in floating point
    struct Case {
        Flux a, b;
        Rational e;
    };
    const std::vector<Case> cases{
        {Flux{0, 2}, Flux{0, 0}, 1},           {Flux{0, 1}, Flux{0, 0}, 1},
        {Flux{0, 1}, Flux{0, 0}, 2},           {Flux{0, Rational(2, 3)}, Flux{0, 0}, 3},
        {Flux{0, Rational(2, 3)}, Flux{0, 0}, 2}, {Flux{Rational(5, 3), 0}, Flux{Rational(5, 3), 0}, 7},
        {Flux{1, 0}, Flux{2, 0}, 1},           {Flux{1, 3}, Flux{1, -1}, 1},
        {Flux{1, 3}, Flux{2, 1}, 1},           {Flux{Rational(1, 2), 4}, Flux{Rational(1, 2), 0}, Rational(1, 2)},
        {Flux{0, 4}, Flux{0, 0}, Rational(1, 3)}, {Flux{0, 6}, Flux{0, 0}, Rational(1, 3)},
        {Flux{0, 5}, Flux{0, 3}, 0},           {Flux{3, 5}, Flux{0, 3}, 0},
        {Flux{-2, Rational(7, 5)}, Flux{-2, Rational(-3, 5)}, 1}, {Flux{-2, Rational(7, 5)}, Flux{-2, Rational(-3, 5)}, Rational(3, 2)},
        {Flux{0, Rational(1, 4)}, Flux{0, Rational(-1, 4)}, 4}, {Flux{0, Rational(1, 4)}, Flux{0, Rational(-1, 4)}, 2},
        {Flux{Rational(3, 7), 2}, Flux{Rational(3, 7), 0}, -1}, {Flux{Rational(1, 1000), 2}, Flux{0, 0}, 1},
    };
    std::size_t agree = 0;
    for (const auto& c : cases) {
        const double x = c.e.get_d() * (c.a.value() - c.b.value()) / (2 * std::numbers::pi);
        const bool oracle = std::abs(x - std::round(x)) < 1e-9;
        if (oracle == flux_equivalent(c.a, c.b, c.e)) ++agree;
    }
    ok = ok && agree == cases.size();
    s << ", flux table " << agree << "/" << cases.size();
    return {ok, s.str()};
}

Verdict check_properties() {
    const Verdict v = suite_verdict({"properties/ring_jacobi"}, kPropertyCases);
    bool same = true;
    for (const auto& args :
         {std::vector<std::string>{"verify", "--seed", "11", "--random-cases", "10"},
          std::vector<std::string>{"spectrum", "--model", "landau", "--constants", "m=1,e=1,B=1", "--grid", "32,10", "--k", "8"}}) {
        std::ostringstream a, b, err;
        const int ca = cli::run(args, a, err), cb = cli::run(args, b, err);
        same = same && ca == cli::kOk && cb == cli::kOk && a.str() == b.str() && !a.str().empty();
    }
    return {v.passed && same, std::to_string(kPropertyCases) + " random cases, " + v.detail + ", CLI output " + (same ? "byte-identical" : "differs")};
}

struct Criterion {
    std::string name;
    std::function<Verdict()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"symbolic deformation identities",
         [] {
             return suite_verdict({"deform_h0/", "deformed_momentum/", "deformed_coordinate", "factorization/", "additivity",
                                   "rieffel_sum/"},
                                  kRandomPairs, kSymbolicBudgetSeconds);
         }},
        {"coefficient identities", [] { return suite_verdict({"coefficients/"}, kRandomPairs); }},
        {"model equivalences", [] { return suite_verdict({"model/", "model_linearized/", "order_independence/"}, kRandomPairs); }},
        {"Moyal-Weyl plane",
         [] { return suite_verdict({"deformed_coordinate", "guiding_center", "uncertainty_area"}, kRandomPairs); }},
        {"gauge structure",
         [] { return suite_verdict({"gauge_curl/", "bianchi/", "ab_field_strength_zero", "jacobi_maxwell/"}, kRandomPairs); }},
        {"numeric Landau levels", &check_landau},
        {"numeric gravitomagnetic levels", &check_gravito},
        {"Aharonov-Bohm holonomy", &check_holonomy},
        {"property suite and determinism", &check_properties},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].run();
        } catch (const std::exception& e) {
            v = {false, std::string("error: ") + e.what()};
        }
        failures += v.passed ? 0 : 1;
        std::cout << (v.passed ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].name << "): " << v.detail
                  << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
