#pragma once

#include "warpqm/evaluate.hpp"
#include "warpqm/gauge.hpp"
#include "warpqm/models.hpp"
#include "warpqm/serialize.hpp"

#include <Eigen/Sparse>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace warpqm {

/// Square grid in the plane transverse to `axis`, Dirichlet walls at +-L/2.
/// Nodes sit at -L/2 + (i + 1) h with h = L / (N + 1), shifted by h/2 when offset_half_cell is set.
struct GridSpec {
    std::size_t points = 128;
    double extent = 10.0;
    /// Normal of the plane; the plane axes are (axis+1, axis+2) mod 3, right-handed.
    Axis axis = 0;
    bool offset_half_cell = false;
    /// Value of the normal coordinate on the plane.
    double plane_offset = 0.0;

    double spacing() const { return extent / static_cast<double>(points + 1); }
    std::array<Axis, 2> plane_axes() const;
    /// Plane coordinate of node i along either plane axis.
    double node(std::size_t i) const;
    std::array<double, kDim> position(double u, double v) const;
    std::size_t unknowns() const { return points * points; }
    /// Throws InvalidArgument for N < 4 or L <= 0. Grids below 16 points are accepted with a warning.
    void validate() const;
};

enum class Discretization { peierls, central };

struct DiscretizeOptions {
    Discretization scheme = Discretization::peierls;
    /// Constant added to the coupled potential g A in the plane (gauge shift by a linear gradient).
    std::array<double, 2> gauge_shift{0.0, 0.0};
};

using SparseMatrix = Eigen::SparseMatrix<std::complex<double>>;

struct GridHamiltonian {
    SparseMatrix matrix;
    GridSpec grid;
    double hermiticity_defect = 0.0;
    /// Smallest magnetic length on the grid, infinite without a field.
    double magnetic_length = 0.0;
    bool coarse = false;
    std::vector<std::string> warnings;
};

/// Minimal-coupling data of H = c (P - a)^2 + V read off the normal-ordered operator:
/// a_j = -b_j / (2c) and V = d - c (i div a + a.a) restricted to the plane.
struct MinimalCoupling {
    CoordFunction kinetic;
    std::array<CoordFunction, kDim> potential_vector;
    CoordFunction scalar;
};

/// Throws UnsupportedClassError unless the momentum part is c (P1^2 + P2^2 + P3^2) with a
/// single coordinate-free monomial c, plus first-order terms.
MinimalCoupling minimal_coupling(const OperatorExpr& h);

/// Sparse hermitian matrix of h on the grid. Throws UnboundConstantError, SingularPointError when
/// a node or link midpoint hits a singularity, and InternalInconsistencyError when the scalar part
/// is not real. pi and hbar default to their usual values.
GridHamiltonian discretize(const OperatorExpr& h, const GridSpec& grid, const NumericConstants& constants,
                           const DiscretizeOptions& options = {});
GridHamiltonian discretize(const ModelPreset& preset, const GridSpec& grid, const NumericConstants& constants,
                           const DiscretizeOptions& options = {});

struct EigenOptions {
    std::size_t count = 16;
    double tolerance = 1e-8;
    std::uint64_t seed = 1;
    /// LAPACK dense solver below this many unknowns, shift-invert Arnoldi (ARPACK) from here on.
    std::size_t dense_limit = 4096;
    /// Arnoldi restart limit.
    std::size_t max_iterations = 300;
    /// Half-width of the central square used for bulk weights, as a fraction of L.
    double bulk_fraction = 0.25;
};

struct SpectrumResult {
    std::vector<double> eigenvalues;
    std::vector<double> residuals;
    /// Probability of each eigenvector inside the central square.
    std::vector<double> bulk_weights;
    GridSpec grid;
    std::string method;
    std::size_t iterations = 0;
    bool coarse = false;
    std::vector<std::string> warnings;

    std::size_t count() const { return eigenvalues.size(); }
    Json to_json() const;
};

/// k smallest eigenvalues with residual certificates ||Hv - lv|| / ||v|| <= tolerance.
/// Throws InvalidArgument for k = 0 or k > 64 and NonConvergenceError otherwise.
SpectrumResult eigenvalues(const GridHamiltonian& h, const EigenOptions& options = {});

/// Clusters of consecutive eigenvalues closer than tol (strictly); tol = 0 gives singletons.
std::vector<std::size_t> landau_degeneracy(const SpectrumResult& result, double tol);

struct LevelReport {
    /// One representative per distinct bulk level: the eigenvalue with the largest bulk weight.
    std::vector<double> levels;
    std::vector<std::size_t> multiplicities;
    std::vector<double> spacings;
    Json to_json() const;
};

/// Distinct levels from eigenvectors with bulk weight >= threshold. Wall-bound edge states fill the
/// gaps between Landau levels on a finite grid, so they are excluded. tol <= 0 picks 2% of the
/// reported eigenvalue range.
LevelReport distinct_levels(const SpectrumResult& result, double threshold = 0.5, double tol = 0.0);

/// Circle of the given radius in the plane transverse to `axis`, traversed counter-clockwise
/// in the plane axes (axis+1, axis+2).
struct Loop {
    Axis axis = 0;
    double radius = 1.0;
    std::array<double, 2> center{0.0, 0.0};
    double plane_offset = 0.0;
};

/// Line integral of the gauge field by the trapezoidal rule. Throws SingularPointError when the loop
/// touches rho = 0 or the field is not finite on it.
double holonomy(const GaugeField& field, const Loop& loop, std::size_t points, const NumericConstants& constants);

/// exp(i e phi).
std::complex<double> interference_phase(double e, double phi);
std::complex<double> interference_phase(const Rational& e, const Flux& phi);

}  // namespace warpqm
