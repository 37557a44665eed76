#pragma once

#include "warpqm/evaluate.hpp"
#include "warpqm/operator_expr.hpp"

#include <array>
#include <string>

namespace warpqm {

using Triple = std::array<OperatorExpr, kDim>;

/// Real skew-symmetric 3x3 matrix whose entries are coordinate-free CoordFunctions
/// (sums of constant monomials, so that B1 + B2 stays representable).
class DeformationMatrix {
public:
    using Entries = std::array<std::array<CoordFunction, kDim>, kDim>;

    DeformationMatrix() = default;
    /// Validates skew symmetry, coordinate independence and real coefficients.
    explicit DeformationMatrix(const Entries& entries);

    /// B_ij = eps_ijk b^k.
    static DeformationMatrix axial(const std::array<CoordFunction, kDim>& b);
    /// Single independent entry B_ij = value (and B_ji = -value).
    static DeformationMatrix from_pair(Axis i, Axis j, const CoordFunction& value);

    const CoordFunction& operator()(Axis i, Axis j) const { return entries_[i][j]; }
    const Entries& entries() const { return entries_; }
    /// b^k with B_ij = eps_ijk b^k, i.e. b = (B_23, B_31, B_12).
    std::array<CoordFunction, kDim> axial_vector() const;
    bool is_zero() const;

    DeformationMatrix operator+(const DeformationMatrix& o) const;
    DeformationMatrix operator-() const { return scaled(CoordFunction(-1)); }
    DeformationMatrix scaled(const CoordFunction& lambda) const;

    friend bool operator==(const DeformationMatrix&, const DeformationMatrix&) = default;

private:
    Entries entries_;
};

/// Levi-Civita symbol with 0-based indices.
int levi_civita(Axis i, Axis j, Axis k);

/// The deformation generator Q(X).
struct QSpec {
    enum class Preset { coordinate, radial_power, transverse_radial, custom };

    std::array<CoordFunction, kDim> components;
    Preset preset = Preset::custom;
    /// Exponent n of the radial-power preset Q = X / r^n.
    Exponent n;

    static QSpec coordinate();
    static QSpec radial_power(Exponent n);
    static QSpec transverse_radial();
    static QSpec custom(const std::array<CoordFunction, kDim>& q);

    std::string label() const;

    friend bool operator==(const QSpec& a, const QSpec& b) { return a.components == b.components; }
};

struct DeformationSpec {
    DeformationMatrix matrix;
    QSpec generator = QSpec::coordinate();
};

struct DeformOptions {
    /// Negative control: uses +i(BQ)^k[Q_k,P_j] with the opposite sign.
    bool flip_commutator_sign = false;
};

/// (BQ)_k = B_kl Q^l.
std::array<CoordFunction, kDim> contracted_generator(const DeformationSpec& spec);

/// P_j + i (BQ)^k [Q_k, P_j], which under [X, P] = i equals P_j - (BQ)_k d_j Q^k.
Triple deformed_momenta(const DeformationSpec& spec, const DeformOptions& options = {});

/// Replaces each momentum factor by its deformed counterpart. Mixed second-order products
/// P_j P_k are mapped to the symmetric product of the deformed factors. Throws
/// UnsupportedDegreeError above momentum degree 2.
OperatorExpr deform_operator(const OperatorExpr& a, const DeformationSpec& spec, const DeformOptions& options = {});

/// X^j + theta_jk P_k, so that [X_theta^i, X_theta^j] = -2 i theta_ij.
Triple deform_coordinate(const DeformationMatrix& theta);

/// c_kj = B_ls d_k Q^l d_j Q^s.
CoordFunction rieffel_correction(const DeformationSpec& spec, Axis k, Axis j);

/// Deformed product of two momentum-linear operands:
/// (f P_k) x (g P_j) = f P_k g P_j - i f g c_kj, coordinate factors untouched.
/// Throws UnsupportedClassError for operands of momentum degree above 1.
OperatorExpr rieffel_product(const OperatorExpr& a, const OperatorExpr& b, const DeformationSpec& spec);

/// Same generator: deforming twice equals deforming once with the summed matrices.
/// Different generators: both deformation orders agree.
bool check_additivity(const OperatorExpr& a, const DeformationSpec& spec1, const DeformationSpec& spec2,
                      const DeformOptions& options = {}, const EqualityOptions& eq = {});

/// deform(H0) == (1/2m) sum_j deform(P_j)^2.
bool factorization_check(const DeformationSpec& spec, const DeformOptions& options = {},
                         const EqualityOptions& eq = {});

}  // namespace warpqm
