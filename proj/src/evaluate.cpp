#include "warpqm/evaluate.hpp"

#include "warpqm/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace warpqm {

namespace {

using HighPrecision = boost::multiprecision::cpp_bin_float_50;

Rational rational_power(const Rational& base, int k) {
    if (k < 0) {
        if (sgn(base) == 0) throw SingularPointError("constant with value zero raised to a negative power");
        return rational_power(Rational(1 / base), -k);
    }
    Rational out = 1;
    for (int i = 0; i < k; ++i) out *= base;
    return out;
}

const Rational& lookup(const ConstantMap& constants, const std::string& name) {
    auto it = constants.find(name);
    if (it == constants.end()) throw UnboundConstantError(name);
    return it->second;
}

/// Exact r^p and rho^q at a point, computed from r^2 and rho^2 and cached per exponent.
class RadialPowers {
public:
    RadialPowers(const Point& p) {
        r2_ = p.x[0] * p.x[0] + p.x[1] * p.x[1] + p.x[2] * p.x[2];
        rho2_ = p.x[1] * p.x[1] + p.x[2] * p.x[2];
    }

    const Rational& r(const Exponent& e) { return power(r2_, e, r_cache_, "r"); }
    const Rational& rho(const Exponent& e) { return power(rho2_, e, rho_cache_, "rho"); }

private:
    static const Rational& power(const Rational& square, const Exponent& e, std::map<Exponent, Rational>& cache,
                                 const char* name) {
        auto it = cache.find(e);
        if (it != cache.end()) return it->second;
        if (sgn(square) == 0 && e.num() < 0) {
            throw SingularPointError(std::string("negative power of ") + name + " evaluated at " + name + " = 0");
        }
        Rational out;
        if (!exact_power(square, e * Exponent(1, 2), out)) {
            throw InexactValueError(std::string(name) + "^(" + e.str() + ") is irrational at this point");
        }
        return cache.emplace(e, out).first->second;
    }

    Rational r2_, rho2_;
    std::map<Exponent, Rational> r_cache_, rho_cache_;
};

Complex evaluate_with(const CoordFunction& f, const Point& point, RadialPowers& radial, const ConstantMap& constants) {
    Complex total;
    for (const auto& [m, c] : f.terms()) {
        Rational v = 1;
        for (const auto& [name, k] : m.constants.factors()) v *= rational_power(lookup(constants, name), k);
        for (int j = 0; j < kDim; ++j) v *= rational_power(point.x[j], m.x[j]);
        if (!m.r.is_zero()) v *= radial.r(m.r);
        if (!m.rho.is_zero()) v *= radial.rho(m.rho);
        total += c * Complex(v);
    }
    return total;
}

struct ApproxValue {
    HighPrecision re = 0, im = 0, magnitude = 0;
};

ApproxValue evaluate_approx(const CoordFunction& f, const Point& point, const ConstantMap& constants) {
    std::array<HighPrecision, kDim> x;
    for (int j = 0; j < kDim; ++j) {
        x[j] = HighPrecision(point.x[j].get_num().get_str()) / HighPrecision(point.x[j].get_den().get_str());
    }
    const HighPrecision r = sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    const HighPrecision rho = sqrt(x[1] * x[1] + x[2] * x[2]);
    ApproxValue out;
    for (const auto& [m, c] : f.terms()) {
        HighPrecision v = 1;
        for (const auto& [name, k] : m.constants.factors()) {
            const Rational q = rational_power(lookup(constants, name), k);
            v *= HighPrecision(q.get_num().get_str()) / HighPrecision(q.get_den().get_str());
        }
        for (int j = 0; j < kDim; ++j) v *= pow(x[j], m.x[j]);
        if (!m.r.is_zero()) v *= pow(r, HighPrecision(m.r.num()) / HighPrecision(m.r.den()));
        if (!m.rho.is_zero()) v *= pow(rho, HighPrecision(m.rho.num()) / HighPrecision(m.rho.den()));
        const HighPrecision cre = HighPrecision(c.re.get_num().get_str()) / HighPrecision(c.re.get_den().get_str());
        const HighPrecision cim = HighPrecision(c.im.get_num().get_str()) / HighPrecision(c.im.get_den().get_str());
        out.re += cre * v;
        out.im += cim * v;
        out.magnitude += (abs(cre) + abs(cim)) * abs(v);
    }
    return out;
}

/// What a sample point must satisfy so that every r / rho power is rational.
/// 0 means unconstrained (only even integer powers), d >= 1 means r = u^d for rational u.
std::int64_t root_requirement(const std::vector<Exponent>& exponents) {
    std::int64_t d = 0;
    for (const auto& e : exponents) {
        if (e.is_even_integer()) continue;
        d = d == 0 ? e.den() : std::lcm(d, e.den());
    }
    return d;
}

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    /// Rational with numerator in [lo, hi] and denominator in [1, 7].
    Rational rational(long lo, long hi) {
        const long num = lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
        const long den = 1 + static_cast<long>(rng_() % 7);
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    Rational nonzero(long bound) {
        for (;;) {
            Rational q = rational(-bound, bound);
            if (sgn(q) != 0) return q;
        }
    }

    /// Positive rational parameter different from 1.
    Rational slope() {
        for (;;) {
            Rational q = rational(1, 9);
            if (q != 1) return q;
        }
    }

    bool coin() { return (rng_() & 1U) != 0; }

    Rational power_of(const Rational& base, std::int64_t d) { return rational_power(base, static_cast<int>(d)); }

private:
    std::mt19937_64 rng_;
};

struct Requirements {
    std::int64_t r = 0;
    std::int64_t rho = 0;
    std::set<std::string> constants;
};

Requirements requirements_of(const std::vector<const CoordFunction*>& fs) {
    std::vector<Exponent> rs, rhos;
    Requirements req;
    for (const auto* f : fs) {
        for (const auto& [m, c] : f->terms()) {
            if (!m.r.is_zero()) rs.push_back(m.r);
            if (!m.rho.is_zero()) rhos.push_back(m.rho);
            for (const auto& [name, k] : m.constants.factors()) req.constants.insert(name);
        }
    }
    req.r = root_requirement(rs);
    req.rho = root_requirement(rhos);
    return req;
}

/// Returns false when no exactly-evaluable construction exists for the requirements.
bool exact_sample(Sampler& s, const Requirements& req, Point& p) {
    if (req.rho <= 1) {
        // r = u^d, then (x1, rho) on the circle of radius r, then (x2, x3) on the circle of radius rho.
        const Rational u = s.rational(1, 9);
        const Rational r = req.r > 1 ? s.power_of(u, req.r) : u;
        const Rational t = s.slope();
        const Rational x1 = r * (1 - t * t) / (1 + t * t);
        const Rational rho = r * 2 * t / (1 + t * t);
        const Rational w = s.slope();
        p.x = {x1, rho * (1 - w * w) / (1 + w * w), rho * 2 * w / (1 + w * w)};
    } else if (req.r <= 1) {
        // rho = v^d, (x2, x3) on its circle, then (x1, r) on the hyperbola r^2 - x1^2 = rho^2.
        const Rational v = s.rational(1, 9);
        const Rational rho = s.power_of(v, req.rho);
        const Rational w = s.slope();
        const Rational t = s.slope();
        p.x = {rho * (1 - t * t) / (2 * t), rho * (1 - w * w) / (1 + w * w), rho * 2 * w / (1 + w * w)};
    } else {
        return false;
    }
    for (auto& xi : p.x) {
        xi.canonicalize();
        if (s.coin()) xi = -xi;
    }
    return true;
}

Point approximate_sample(Sampler& s) {
    for (;;) {
        Point p{{s.rational(-10, 10), s.rational(-10, 10), s.rational(-10, 10)}};
        if (sgn(p.x[1]) != 0 && sgn(p.x[2]) != 0) return p;
    }
}

Comparison compare_functions(const std::vector<CoordFunction>& diffs, const EqualityOptions& options) {
    Comparison result;
    std::vector<const CoordFunction*> nonzero;
    for (const auto& d : diffs) {
        if (!d.is_zero()) nonzero.push_back(&d);
    }
    if (nonzero.empty()) {
        result.equal = true;
        result.structural = true;
        return result;
    }
    const Requirements req = requirements_of(nonzero);
    Sampler sampler(options.seed);
    const std::size_t samples = std::max<std::size_t>(options.samples, 1);
    for (std::size_t i = 0; i < samples; ++i) {
        ConstantMap constants;
        for (const auto& name : req.constants) constants[name] = sampler.nonzero(10);
        Point p;
        if (exact_sample(sampler, req, p)) {
            RadialPowers radial(p);
            for (const auto* f : nonzero) {
                if (!evaluate_with(*f, p, radial, constants).is_zero()) return result;
            }
        } else {
            result.approximate = true;
            p = approximate_sample(sampler);
            for (const auto* f : nonzero) {
                const ApproxValue v = evaluate_approx(*f, p, constants);
                const HighPrecision scale = v.magnitude > 1 ? v.magnitude : HighPrecision(1);
                if (abs(v.re) > scale * HighPrecision("1e-30") || abs(v.im) > scale * HighPrecision("1e-30")) {
                    return result;
                }
            }
        }
        ++result.samples;
    }
    result.equal = true;
    return result;
}

}  // namespace

Complex evaluate(const CoordFunction& f, const Point& point, const ConstantMap& constants) {
    RadialPowers radial(point);
    return evaluate_with(f, point, radial, constants);
}

Complex evaluate(const OperatorExpr& a, const Point& point, const std::array<Rational, kDim>& momentum,
                 const ConstantMap& constants) {
    RadialPowers radial(point);
    Complex total;
    for (const auto& [k, f] : a.terms()) {
        Rational pk = 1;
        for (int j = 0; j < kDim; ++j) pk *= rational_power(momentum[j], k.k[j]);
        total += evaluate_with(f, point, radial, constants) * Complex(pk);
    }
    return total;
}

std::complex<double> evaluate_numeric(const CoordFunction& f, const std::array<double, kDim>& x,
                                      const NumericConstants& constants) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    const double rho = std::sqrt(x[1] * x[1] + x[2] * x[2]);
    std::complex<double> total = 0.0;
    for (const auto& [m, c] : f.terms()) {
        double v = 1.0;
        for (const auto& [name, k] : m.constants.factors()) {
            auto it = constants.find(name);
            if (it == constants.end()) throw UnboundConstantError(name);
            v *= std::pow(it->second, k);
        }
        for (int j = 0; j < kDim; ++j) v *= std::pow(x[j], m.x[j]);
        if (!m.r.is_zero()) {
            if (r == 0.0 && m.r.num() < 0) throw SingularPointError("negative power of r evaluated at r = 0");
            v *= std::pow(r, m.r.to_double());
        }
        if (!m.rho.is_zero()) {
            if (rho == 0.0 && m.rho.num() < 0) throw SingularPointError("negative power of rho evaluated at rho = 0");
            v *= std::pow(rho, m.rho.to_double());
        }
        total += std::complex<double>(c.re.get_d(), c.im.get_d()) * v;
    }
    return total;
}

Comparison compare(const OperatorExpr& a, const OperatorExpr& b, const EqualityOptions& options) {
    const OperatorExpr d = a - b;
    std::vector<CoordFunction> coefficients;
    for (const auto& [k, f] : d.terms()) coefficients.push_back(f);
    return compare_functions(coefficients, options);
}

Comparison compare(const CoordFunction& a, const CoordFunction& b, const EqualityOptions& options) {
    return compare_functions({a - b}, options);
}

bool equals(const OperatorExpr& a, const OperatorExpr& b, const EqualityOptions& options) {
    return compare(a, b, options).equal;
}

bool equals(const CoordFunction& a, const CoordFunction& b, const EqualityOptions& options) {
    return compare(a, b, options).equal;
}

bool is_zero_function(const CoordFunction& f, const EqualityOptions& options) {
    return compare(f, CoordFunction{}, options).equal;
}

}  // namespace warpqm
