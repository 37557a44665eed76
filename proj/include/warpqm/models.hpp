#pragma once

#include "warpqm/gauge.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace warpqm {

/// Drops every term whose combined degree in `names` is >= `min_dropped_degree`.
OperatorExpr truncated(const OperatorExpr& a, const std::set<std::string>& names, int min_dropped_degree);

/// Replaces a constant by a coordinate-free value. The constant may only appear with
/// nonnegative powers unless `value` is a single invertible monomial.
CoordFunction substitute(const CoordFunction& f, const std::string& name, const CoordFunction& value);
OperatorExpr substitute(const OperatorExpr& a, const std::string& name, const CoordFunction& value);

struct ModelPreset {
    std::string name;
    /// Applied in order; two entries for the double deformations.
    std::vector<DeformationSpec> specs;
    /// Coupling of each spec (e electromagnetic, -m gravitomagnetic).
    std::vector<CoordFunction> couplings;
    /// Scalar potential added to H0 before deforming (zero when absent).
    CoordFunction potential;
    /// Exact minimally coupled Hamiltonian written out independently of the deformation code.
    OperatorExpr reference_hamiltonian;
    /// First-order form where the physics is linearized in the small constants.
    std::optional<OperatorExpr> linearized_reference;
    /// Grading constants of the linearization (e.g. {"G"}).
    std::set<std::string> small_constants;
    /// Symbolic definitions of derived constants such as Omega.
    std::map<std::string, std::string> definitions;
    /// How the signs relate to the minimal-coupling form quoted in the literature.
    std::string sign_note;

    /// H0 + potential.
    OperatorExpr base_hamiltonian() const;
    /// The specs applied in order to base_hamiltonian().
    OperatorExpr deformed(const DeformOptions& options = {}) const;
    /// deformed() with every term of small-constant degree >= 2 dropped.
    OperatorExpr deformed_linearized(const DeformOptions& options = {}) const;

    bool matches_reference(const EqualityOptions& eq = {}) const;
    /// True when there is no linearized form.
    bool matches_linearized_reference(const EqualityOptions& eq = {}) const;

    Json to_json() const;
};

ModelPreset landau();
ModelPreset zeeman();
ModelPreset aharonov_bohm();
ModelPreset gravito_constant();
ModelPreset lense_thirring();
enum class CombinedKind { constant, lense_thirring };
ModelPreset combined_em_gem(CombinedKind kind);
ModelPreset gravito_zeeman();

/// Names accepted by model_by_name.
const std::vector<std::string>& model_names();
/// Throws InvalidArgument for an unknown name. "combined_constant" and "combined_lense_thirring"
/// select the two double deformations.
ModelPreset model_by_name(const std::string& name);

/// L1 = X2 P3 - X3 P2.
OperatorExpr angular_momentum_x1();

struct GuidingCenter {
    /// X_i - (1/2)(B^-1)_ik P_k; this equals deform_coordinate(theta = -B^-1 / 2).
    Triple coordinates;
    /// Inverse of the non-degenerate 2x2 block, zero along the field axis.
    DeformationMatrix inverse;
    /// [X_i, X_j] for all pairs.
    std::array<std::array<OperatorExpr, kDim>, kDim> commutators;
    /// Field axis of the axial matrix.
    Axis axis = 0;
};

/// B must be axial along a single coordinate axis with a single-monomial entry.
/// Throws SingularMatrixError when the transverse block vanishes.
GuidingCenter guiding_center(const DeformationMatrix& b);

struct UncertaintyBound {
    /// hbar |(B^-1)_jk| for the transverse pair (j, k).
    CoordFunction bound;
    /// 2 pi times the bound.
    CoordFunction area;
};

/// Symbolic bound from the guiding-center commutator of an axial matrix.
UncertaintyBound uncertainty_bound(const DeformationMatrix& b);

struct NumericUncertainty {
    Rational bound;
    /// area / pi (exactly 2 * bound).
    Rational area_over_pi;
    double area = 0.0;
};

/// hbar / (m Omega) and 2 pi hbar / (m Omega). Throws InvalidArgument for nonpositive input.
NumericUncertainty uncertainty_bound(const Rational& m, const Rational& omega, const Rational& hbar = 1);
/// Floating-point variant for physical magnitudes.
std::pair<double, double> uncertainty_bound_numeric(double m, double omega, double hbar);

/// Flux value a + b pi with rational a, b.
struct Flux {
    Rational rational_part;
    Rational pi_part;

    static Flux rational(const Rational& a) { return {a, 0}; }
    static Flux multiple_of_pi(const Rational& b) { return {0, b}; }
    double value() const;
};

/// e (phi1 - phi2) = 2 pi n for an integer n.
bool flux_equivalent(const Flux& phi1, const Flux& phi2, const Rational& e);
bool flux_equivalent(const Rational& phi1, const Rational& phi2, const Rational& e);

}  // namespace warpqm
