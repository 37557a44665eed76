#include "warpqm/deform.hpp"

#include "warpqm/errors.hpp"

namespace warpqm {

int levi_civita(Axis i, Axis j, Axis k) {
    if (i == j || j == k || i == k) return 0;
    return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

DeformationMatrix::DeformationMatrix(const Entries& entries) : entries_(entries) {
    for (Axis i = 0; i < kDim; ++i) {
        for (Axis j = 0; j < kDim; ++j) {
            const CoordFunction& b = entries_[i][j];
            if (!b.is_constant()) throw InvalidArgument("deformation matrix entries must not depend on X");
            if (!b.is_real()) throw InvalidArgument("deformation matrix entries must be real");
            if (!(b + entries_[j][i]).is_zero()) {
                throw InvalidArgument("deformation matrix is not skew-symmetric at (" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ")");
            }
        }
    }
}

DeformationMatrix DeformationMatrix::axial(const std::array<CoordFunction, kDim>& b) {
    Entries e;
    for (Axis i = 0; i < kDim; ++i) {
        for (Axis j = 0; j < kDim; ++j) {
            for (Axis k = 0; k < kDim; ++k) {
                const int s = levi_civita(i, j, k);
                if (s != 0) e[i][j] += b[k].scaled(Complex(s));
            }
        }
    }
    return DeformationMatrix(e);
}

DeformationMatrix DeformationMatrix::from_pair(Axis i, Axis j, const CoordFunction& value) {
    if (i == j) throw InvalidArgument("diagonal entries of a skew matrix vanish");
    Entries e;
    e[i][j] = value;
    e[j][i] = -value;
    return DeformationMatrix(e);
}

std::array<CoordFunction, kDim> DeformationMatrix::axial_vector() const {
    return {entries_[1][2], entries_[2][0], entries_[0][1]};
}

bool DeformationMatrix::is_zero() const {
    for (const auto& row : entries_) {
        for (const auto& b : row) {
            if (!b.is_zero()) return false;
        }
    }
    return true;
}

DeformationMatrix DeformationMatrix::operator+(const DeformationMatrix& o) const {
    Entries e = entries_;
    for (Axis i = 0; i < kDim; ++i) {
        for (Axis j = 0; j < kDim; ++j) e[i][j] += o.entries_[i][j];
    }
    return DeformationMatrix(e);
}

DeformationMatrix DeformationMatrix::scaled(const CoordFunction& lambda) const {
    Entries e = entries_;
    for (auto& row : e) {
        for (auto& b : row) b = lambda * b;
    }
    return DeformationMatrix(e);
}

QSpec QSpec::coordinate() {
    QSpec q;
    for (Axis j = 0; j < kDim; ++j) q.components[j] = CoordFunction::coordinate(j);
    q.preset = Preset::coordinate;
    return q;
}

QSpec QSpec::radial_power(Exponent n) {
    QSpec q;
    for (Axis j = 0; j < kDim; ++j) q.components[j] = CoordFunction::coordinate(j) * CoordFunction::r_power(-n);
    q.preset = Preset::radial_power;
    q.n = n;
    return q;
}

QSpec QSpec::transverse_radial() {
    QSpec q;
    for (Axis j = 0; j < kDim; ++j) {
        q.components[j] = CoordFunction::coordinate(j) * CoordFunction::rho_power(Exponent(-1));
    }
    q.preset = Preset::transverse_radial;
    return q;
}

QSpec QSpec::custom(const std::array<CoordFunction, kDim>& components) {
    QSpec q;
    q.components = components;
    return q;
}

std::string QSpec::label() const {
    switch (preset) {
        case Preset::coordinate: return "coordinate";
        case Preset::radial_power: return "radial:" + n.str();
        case Preset::transverse_radial: return "transverse";
        case Preset::custom: break;
    }
    return "custom";
}

std::array<CoordFunction, kDim> contracted_generator(const DeformationSpec& spec) {
    std::array<CoordFunction, kDim> bq;
    for (Axis k = 0; k < kDim; ++k) {
        for (Axis l = 0; l < kDim; ++l) {
            const CoordFunction& b = spec.matrix(k, l);
            if (!b.is_zero()) bq[k] += b * spec.generator.components[l];
        }
    }
    return bq;
}

Triple deformed_momenta(const DeformationSpec& spec, const DeformOptions& options) {
    const auto bq = contracted_generator(spec);
    Triple out;
    for (Axis j = 0; j < kDim; ++j) {
        CoordFunction shift;
        for (Axis k = 0; k < kDim; ++k) {
            if (!bq[k].is_zero()) shift += bq[k] * spec.generator.components[k].partial(j);
        }
        if (options.flip_commutator_sign) shift = -shift;
        out[j] = OperatorExpr::momentum(j) - OperatorExpr(shift);
    }
    return out;
}

OperatorExpr deform_operator(const OperatorExpr& a, const DeformationSpec& spec, const DeformOptions& options) {
    if (a.momentum_degree() > 2) {
        throw UnsupportedDegreeError("deformation is defined up to momentum degree 2, got degree " +
                                     std::to_string(a.momentum_degree()));
    }
    const Triple pi = deformed_momenta(spec, options);
    OperatorExpr out;
    for (const auto& [k, f] : a.terms()) {
        std::vector<Axis> axes;
        for (Axis j = 0; j < kDim; ++j) {
            for (int s = 0; s < k.k[j]; ++s) axes.push_back(j);
        }
        OperatorExpr shifted;
        if (axes.empty()) {
            shifted = OperatorExpr::identity();
        } else if (axes.size() == 1) {
            shifted = pi[axes[0]];
        } else if (axes[0] == axes[1]) {
            shifted = pi[axes[0]] * pi[axes[0]];
        } else {
            shifted = (pi[axes[0]] * pi[axes[1]] + pi[axes[1]] * pi[axes[0]]).scaled(Complex(Rational(1, 2)));
        }
        out += shifted.left_multiplied(f);
    }
    return out;
}

Triple deform_coordinate(const DeformationMatrix& theta) {
    Triple out;
    for (Axis j = 0; j < kDim; ++j) {
        out[j] = OperatorExpr::position(j);
        for (Axis k = 0; k < kDim; ++k) {
            if (!theta(j, k).is_zero()) out[j] += OperatorExpr::momentum(k).left_multiplied(theta(j, k));
        }
    }
    return out;
}

CoordFunction rieffel_correction(const DeformationSpec& spec, Axis k, Axis j) {
    CoordFunction c;
    for (Axis l = 0; l < kDim; ++l) {
        const CoordFunction dk = spec.generator.components[l].partial(k);
        if (dk.is_zero()) continue;
        for (Axis s = 0; s < kDim; ++s) {
            const CoordFunction& b = spec.matrix(l, s);
            if (!b.is_zero()) c += b * dk * spec.generator.components[s].partial(j);
        }
    }
    return c;
}

OperatorExpr rieffel_product(const OperatorExpr& a, const OperatorExpr& b, const DeformationSpec& spec) {
    if (a.momentum_degree() > 1 || b.momentum_degree() > 1) {
        throw UnsupportedClassError("the deformed product is implemented for momentum-linear operands only");
    }
    OperatorExpr out = a * b;
    for (Axis k = 0; k < kDim; ++k) {
        const CoordFunction f = a.coefficient(MomentumMonomial::unit(k));
        if (f.is_zero()) continue;
        for (Axis j = 0; j < kDim; ++j) {
            const CoordFunction g = b.coefficient(MomentumMonomial::unit(j));
            if (g.is_zero()) continue;
            const CoordFunction c = rieffel_correction(spec, k, j);
            if (!c.is_zero()) out -= OperatorExpr((f * g * c).scaled(Complex::imaginary_unit()));
        }
    }
    return out;
}

bool check_additivity(const OperatorExpr& a, const DeformationSpec& spec1, const DeformationSpec& spec2,
                      const DeformOptions& options, const EqualityOptions& eq) {
    const OperatorExpr twice = deform_operator(deform_operator(a, spec1, options), spec2, options);
    if (spec1.generator == spec2.generator) {
        const DeformationSpec sum{spec1.matrix + spec2.matrix, spec1.generator};
        return equals(twice, deform_operator(a, sum, options), eq);
    }
    return equals(twice, deform_operator(deform_operator(a, spec2, options), spec1, options), eq);
}

bool factorization_check(const DeformationSpec& spec, const DeformOptions& options, const EqualityOptions& eq) {
    const Triple pi = deformed_momenta(spec, options);
    OperatorExpr squares;
    for (Axis j = 0; j < kDim; ++j) squares += pi[j] * pi[j];
    const OperatorExpr rhs = squares.left_multiplied(CoordFunction::symbol("m", -1).scaled(Complex(Rational(1, 2))));
    return equals(deform_operator(free_hamiltonian(), spec, options), rhs, eq);
}

}  // namespace warpqm
