#pragma once

#include "warpqm/deform.hpp"
#include "warpqm/serialize.hpp"

#include <string>
#include <vector>

namespace warpqm {

struct GaugeField {
    std::array<CoordFunction, kDim> A;
    /// e for electromagnetic, -m for gravitoelectromagnetic couplings.
    CoordFunction coupling;
};

struct FieldStrength {
    std::array<std::array<CoordFunction, kDim>, kDim> F;

    const CoordFunction& operator()(Axis i, Axis j) const { return F[i][j]; }
    bool is_zero() const;
    /// Axial vector (F_23, F_31, F_12).
    std::array<CoordFunction, kDim> axial() const;
};

/// A_r = -(1/g) (BQ)_k d_r Q^k, so that the deformed momentum reads P + g A.
/// Throws ZeroCouplingError for g = 0 and InvalidArgument for a coupling that is not a single monomial.
GaugeField extract_gauge_field(const DeformationSpec& spec, const CoordFunction& coupling);

/// F_ij = d_i A_j - d_j A_i.
FieldStrength curl(const GaugeField& field);

/// [P_i^def, P_j^def] = -i g F_ij, solved for F. Throws InternalInconsistencyError if a commutator
/// keeps a momentum-dependent part.
FieldStrength field_strength(const DeformationSpec& spec, const CoordFunction& coupling,
                             const DeformOptions& options = {});

/// Field strength from commutators against the curl of the extracted gauge field.
bool gauge_curl_check(const DeformationSpec& spec, const CoordFunction& coupling, const DeformOptions& options = {},
                      const EqualityOptions& eq = {});

struct LorentzForce {
    /// [H_def + g phi, P_j^def]
    Triple force;
    /// -i g (E_j + (1/2m) sum_k {P_k^def, F_kj}), E = -grad phi. Since sum_k {P_k, F_kj}/2m is
    /// minus the symmetrized V x B with V = P^def / m, this is -i g (E - V x B) in symmetric order.
    Triple expected;
    bool holds = false;
};

LorentzForce lorentz_force(const DeformationSpec& spec, const CoordFunction& potential, const CoordFunction& coupling,
                           const DeformOptions& options = {}, const EqualityOptions& eq = {});

/// d_k F_ij + d_i F_jk + d_j F_ki = 0 for the commutator field strength.
bool bianchi_check(const DeformationSpec& spec, const CoordFunction& coupling, const DeformOptions& options = {},
                   const EqualityOptions& eq = {});

struct IdentityResult {
    std::string name;
    bool zero = false;
    std::string residual;
};

struct JacobiMaxwellReport {
    /// Only static fields are representable; time-derivative terms vanish identically.
    bool static_fields = true;
    std::vector<IdentityResult> identities;

    bool all_zero() const;
    Json to_json() const;
};

/// Jacobi identities of {H_def + g phi, P_1^def, P_2^def, P_3^def}, the Bianchi sum of the
/// commutator field strength and the static Faraday law d_i E_j - d_j E_i = 0.
JacobiMaxwellReport jacobi_maxwell_report(const DeformationSpec& spec, const CoordFunction& potential,
                                          const CoordFunction& coupling, const DeformOptions& options = {},
                                          const EqualityOptions& eq = {});

}  // namespace warpqm
