#include "warpqm/coord_function.hpp"

#include "warpqm/errors.hpp"

#include <algorithm>

namespace warpqm {

ConstMonomial ConstMonomial::symbol(const std::string& name, int power) {
    ConstMonomial m;
    if (power != 0) m.factors_.emplace_back(name, power);
    return m;
}

int ConstMonomial::degree_of(const std::string& name) const {
    for (const auto& [n, p] : factors_) {
        if (n == name) return p;
    }
    return 0;
}

ConstMonomial ConstMonomial::operator*(const ConstMonomial& o) const {
    ConstMonomial out;
    out.factors_.reserve(factors_.size() + o.factors_.size());
    auto a = factors_.begin();
    auto b = o.factors_.begin();
    while (a != factors_.end() || b != o.factors_.end()) {
        if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
            out.factors_.push_back(*a++);
        } else if (a == factors_.end() || b->first < a->first) {
            out.factors_.push_back(*b++);
        } else {
            const int p = a->second + b->second;
            if (p != 0) out.factors_.emplace_back(a->first, p);
            ++a;
            ++b;
        }
    }
    return out;
}

ConstMonomial ConstMonomial::inverse() const { return pow(-1); }

ConstMonomial ConstMonomial::pow(int k) const {
    ConstMonomial out;
    if (k == 0) return out;
    for (const auto& [n, p] : factors_) out.factors_.emplace_back(n, p * k);
    return out;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial m;
    m.constants = constants * o.constants;
    for (int j = 0; j < kDim; ++j) m.x[j] = x[j] + o.x[j];
    m.r = r + o.r;
    m.rho = rho + o.rho;
    return m;
}

CoordFunction::CoordFunction(const Complex& c) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

CoordFunction::CoordFunction(const SymbolicScalar& s) {
    Monomial m;
    m.constants = s.constants;
    add_term(m, s.coefficient);
}

CoordFunction CoordFunction::symbol(const std::string& name, int power) {
    Monomial m;
    m.constants = ConstMonomial::symbol(name, power);
    return term(1, m);
}

CoordFunction CoordFunction::coordinate(Axis axis) {
    if (axis < 0 || axis >= kDim) throw InvalidArgument("axis out of range");
    Monomial m;
    m.x[axis] = 1;
    return term(1, m);
}

CoordFunction CoordFunction::r_power(Exponent p) {
    Monomial m;
    m.r = p;
    return term(1, m);
}

CoordFunction CoordFunction::rho_power(Exponent q) {
    Monomial m;
    m.rho = q;
    return term(1, m);
}

CoordFunction CoordFunction::term(const Complex& c, Monomial m) {
    CoordFunction f;
    f.add_term(m, c);
    return f;
}

bool CoordFunction::is_constant() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first.is_coordinate_free(); });
}

bool CoordFunction::is_number() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.first.is_coordinate_free() && t.first.constants.empty(); });
}

bool CoordFunction::is_real() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

void CoordFunction::add_term(const Monomial& m, const Complex& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

CoordFunction& CoordFunction::operator+=(const CoordFunction& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

CoordFunction& CoordFunction::operator-=(const CoordFunction& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

CoordFunction operator*(const CoordFunction& a, const CoordFunction& b) {
    CoordFunction out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    }
    return out;
}

CoordFunction& CoordFunction::operator*=(const CoordFunction& o) { return *this = *this * o; }

CoordFunction CoordFunction::operator-() const { return scaled(Complex(-1)); }

CoordFunction CoordFunction::scaled(const Complex& c) const {
    CoordFunction out;
    if (c.is_zero()) return out;
    for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
    return out;
}

CoordFunction CoordFunction::conj() const {
    CoordFunction out;
    for (const auto& [m, v] : terms_) out.terms_.emplace(m, v.conj());
    return out;
}

CoordFunction CoordFunction::pow(unsigned k) const {
    CoordFunction out = one();
    for (unsigned i = 0; i < k; ++i) out *= *this;
    return out;
}

CoordFunction CoordFunction::inverse_monomial() const {
    if (terms_.size() != 1) throw InvalidArgument("only a single-term function can be inverted");
    const auto& [m, c] = *terms_.begin();
    if (m.x != std::array<int, kDim>{0, 0, 0}) {
        throw InvalidArgument("cannot invert a polynomial coordinate factor");
    }
    Monomial inv;
    inv.constants = m.constants.inverse();
    inv.r = -m.r;
    inv.rho = -m.rho;
    return term(Complex(1) / c, inv);
}

CoordFunction CoordFunction::partial(Axis axis) const {
    if (axis < 0 || axis >= kDim) throw InvalidArgument("axis out of range");
    CoordFunction out;
    for (const auto& [m, c] : terms_) {
        if (m.x[axis] > 0) {
            Monomial d = m;
            d.x[axis] -= 1;
            out.add_term(d, c * Complex(m.x[axis]));
        }
        // d r^p / dx_j = p x_j r^(p-2)
        if (!m.r.is_zero()) {
            Monomial d = m;
            d.x[axis] += 1;
            d.r = m.r - Exponent(2);
            out.add_term(d, c * Complex(m.r.to_rational()));
        }
        // rho does not depend on x1
        if (axis != 0 && !m.rho.is_zero()) {
            Monomial d = m;
            d.x[axis] += 1;
            d.rho = m.rho - Exponent(2);
            out.add_term(d, c * Complex(m.rho.to_rational()));
        }
    }
    return out;
}

int CoordFunction::grade(const Monomial& m, const std::set<std::string>& names) {
    int g = 0;
    for (const auto& [n, p] : m.constants.factors()) {
        if (names.count(n)) g += p;
    }
    return g;
}

CoordFunction CoordFunction::truncated(const std::set<std::string>& names, int min_dropped_degree) const {
    CoordFunction out;
    for (const auto& [m, c] : terms_) {
        if (grade(m, names) < min_dropped_degree) out.terms_.emplace(m, c);
    }
    return out;
}

std::set<std::string> CoordFunction::constant_names() const {
    std::set<std::string> out;
    for (const auto& [m, c] : terms_) {
        for (const auto& [n, p] : m.constants.factors()) out.insert(n);
    }
    return out;
}

CoordFunction partial_derivative(const CoordFunction& f, Axis axis) { return f.partial(axis); }

}  // namespace warpqm
