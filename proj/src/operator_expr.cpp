#include "warpqm/operator_expr.hpp"

#include "warpqm/errors.hpp"

namespace warpqm {

MomentumMonomial MomentumMonomial::unit(Axis axis) {
    MomentumMonomial m;
    m.k[axis] = 1;
    return m;
}

MomentumMonomial MomentumMonomial::operator+(const MomentumMonomial& o) const {
    return {{k[0] + o.k[0], k[1] + o.k[1], k[2] + o.k[2]}};
}

OperatorExpr::OperatorExpr(const CoordFunction& f) { add_term({}, f); }

OperatorExpr OperatorExpr::momentum(Axis axis) {
    if (axis < 0 || axis >= kDim) throw InvalidArgument("axis out of range");
    return term(CoordFunction::one(), MomentumMonomial::unit(axis));
}

OperatorExpr OperatorExpr::term(const CoordFunction& f, const MomentumMonomial& k) {
    OperatorExpr out;
    out.add_term(k, f);
    return out;
}

int OperatorExpr::momentum_degree() const {
    int d = -1;
    for (const auto& [k, f] : terms_) d = std::max(d, k.degree());
    return d;
}

CoordFunction OperatorExpr::coefficient(const MomentumMonomial& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? CoordFunction{} : it->second;
}

void OperatorExpr::add_term(const MomentumMonomial& k, const CoordFunction& f) {
    if (f.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, f);
        return;
    }
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& o) {
    for (const auto& [k, f] : o.terms_) add_term(k, f);
    return *this;
}

OperatorExpr& OperatorExpr::operator-=(const OperatorExpr& o) {
    for (const auto& [k, f] : o.terms_) add_term(k, -f);
    return *this;
}

OperatorExpr OperatorExpr::operator-() const { return scaled(Complex(-1)); }

OperatorExpr OperatorExpr::scaled(const Complex& c) const {
    OperatorExpr out;
    for (const auto& [k, f] : terms_) out.add_term(k, f.scaled(c));
    return out;
}

OperatorExpr OperatorExpr::left_multiplied(const CoordFunction& g) const {
    OperatorExpr out;
    for (const auto& [k, f] : terms_) out.add_term(k, g * f);
    return out;
}

OperatorExpr OperatorExpr::pow(unsigned n) const {
    OperatorExpr out = identity();
    for (unsigned i = 0; i < n; ++i) out = out * *this;
    return out;
}

std::set<std::string> OperatorExpr::constant_names() const {
    std::set<std::string> out;
    for (const auto& [k, f] : terms_) {
        auto names = f.constant_names();
        out.insert(names.begin(), names.end());
    }
    return out;
}

namespace {

long binomial(int n, int k) {
    long b = 1;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

}  // namespace

// (f P^k)(g P^l) = sum_{alpha <= k} C(k, alpha) (-i)^|alpha| f (d^alpha g) P^(k - alpha + l)
OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
    OperatorExpr out;
    for (const auto& [ka, fa] : a.terms_) {
        for (const auto& [kb, gb] : b.terms_) {
            for (int a0 = 0; a0 <= ka.k[0]; ++a0) {
                CoordFunction d0 = gb;
                for (int s = 0; s < a0; ++s) d0 = d0.partial(0);
                if (d0.is_zero()) break;
                for (int a1 = 0; a1 <= ka.k[1]; ++a1) {
                    CoordFunction d1 = d0;
                    for (int s = 0; s < a1; ++s) d1 = d1.partial(1);
                    if (d1.is_zero()) break;
                    for (int a2 = 0; a2 <= ka.k[2]; ++a2) {
                        CoordFunction d2 = d1;
                        for (int s = 0; s < a2; ++s) d2 = d2.partial(2);
                        if (d2.is_zero()) break;
                        const long weight = binomial(ka.k[0], a0) * binomial(ka.k[1], a1) * binomial(ka.k[2], a2);
                        const Complex c = minus_i_power(a0 + a1 + a2) * Complex(weight);
                        MomentumMonomial rest{{ka.k[0] - a0 + kb.k[0], ka.k[1] - a1 + kb.k[1], ka.k[2] - a2 + kb.k[2]}};
                        out.add_term(rest, (fa * d2).scaled(c));
                    }
                }
            }
        }
    }
    return out;
}

OperatorExpr multiply(const OperatorExpr& a, const OperatorExpr& b) { return a * b; }

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b) { return a * b - b * a; }

OperatorExpr anticommutator(const OperatorExpr& a, const OperatorExpr& b) { return a * b + b * a; }

OperatorExpr adjoint(const OperatorExpr& a) {
    // (f P^k)^dagger = P^k conj(f)
    OperatorExpr out;
    for (const auto& [k, f] : a.terms()) {
        out += OperatorExpr::term(CoordFunction::one(), k) * OperatorExpr(f.conj());
    }
    return out;
}

OperatorExpr free_hamiltonian() {
    OperatorExpr h;
    for (Axis j = 0; j < kDim; ++j) h += OperatorExpr::momentum(j) * OperatorExpr::momentum(j);
    return h.left_multiplied(CoordFunction::symbol("m", -1).scaled(Complex(Rational(1, 2))));
}

}  // namespace warpqm
