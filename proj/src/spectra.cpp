#include "warpqm/spectra.hpp"

#include "warpqm/errors.hpp"
#include "warpqm/parser.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <arpack/arpack.hpp>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace warpqm {

namespace {

using cd = std::complex<double>;
using Dense = Eigen::MatrixXcd;

NumericConstants with_defaults(NumericConstants c) {
    c.emplace("pi", std::numbers::pi);
    c.emplace("hbar", 1.0);
    return c;
}

double finite_real(cd z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw SingularPointError(std::string(what) + " is not finite on the grid");
    }
    return z.real();
}

cd finite(cd z, const char* what) {
    finite_real(z, what);
    return z;
}

std::string format_double(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

}  // namespace

std::array<Axis, 2> GridSpec::plane_axes() const { return {(axis + 1) % kDim, (axis + 2) % kDim}; }

double GridSpec::node(std::size_t i) const {
    const double h = spacing();
    return -extent / 2 + static_cast<double>(i + 1) * h + (offset_half_cell ? h / 2 : 0.0);
}

std::array<double, kDim> GridSpec::position(double u, double v) const {
    std::array<double, kDim> x{};
    const auto [a, b] = plane_axes();
    x[axis] = plane_offset;
    x[a] = u;
    x[b] = v;
    return x;
}

void GridSpec::validate() const {
    if (points < 4) throw InvalidArgument("grid needs at least 4 points per axis");
    if (!(extent > 0) || !std::isfinite(extent)) throw InvalidArgument("grid extent must be positive");
    if (axis >= kDim) throw InvalidArgument("grid axis out of range");
}

MinimalCoupling minimal_coupling(const OperatorExpr& h) {
    std::array<CoordFunction, kDim> squares, linear;
    CoordFunction d;
    for (const auto& [k, f] : h.terms()) {
        switch (k.degree()) {
        case 0:
            d = f;
            break;
        case 1:
            for (Axis j = 0; j < kDim; ++j) {
                if (k.k[j] == 1) linear[j] = f;
            }
            break;
        case 2: {
            const auto it = std::find(k.k.begin(), k.k.end(), 2);
            if (it == k.k.end()) throw UnsupportedClassError("mixed second-order momentum term " + to_string(OperatorExpr::term(f, k)));
            squares[static_cast<Axis>(it - k.k.begin())] = f;
            break;
        }
        default:
            throw UnsupportedClassError("momentum degree above 2 cannot be discretized");
        }
    }
    const CoordFunction c = squares[0];
    if (c.is_zero() || !c.is_constant() || c.size() != 1 || squares[1] != c || squares[2] != c) {
        throw UnsupportedClassError("kinetic term must be c (P1^2 + P2^2 + P3^2) with a single constant c");
    }
    MinimalCoupling out;
    out.kinetic = c;
    const CoordFunction minus_half_inv = c.inverse_monomial().scaled(Complex(Rational(-1, 2)));
    CoordFunction div, square;
    for (Axis j = 0; j < kDim; ++j) {
        out.potential_vector[j] = minus_half_inv * linear[j];
        div += out.potential_vector[j].partial(j);
        square += out.potential_vector[j] * out.potential_vector[j];
    }
    out.scalar = d - c * (div.scaled(Complex::imaginary_unit()) + square);
    return out;
}

GridHamiltonian discretize(const OperatorExpr& h, const GridSpec& grid, const NumericConstants& constants,
                           const DiscretizeOptions& options) {
    grid.validate();
    const NumericConstants k = with_defaults(constants);
    const MinimalCoupling mc = minimal_coupling(h);
    const auto [ua, va] = grid.plane_axes();
    const Axis na = grid.axis;
    // Plane reduction for states independent of the normal coordinate.
    const CoordFunction& an = mc.potential_vector[na];
    const CoordFunction scalar =
        mc.scalar + mc.kinetic * (an * an + an.partial(na).scaled(Complex::imaginary_unit()));

    const double c = finite_real(evaluate_numeric(mc.kinetic, {0, 0, 0}, k), "kinetic coefficient");
    if (!(c > 0)) throw UnsupportedClassError("kinetic coefficient must be positive");
    const std::size_t n = grid.points;
    const double hs = grid.spacing();
    const double t = c / (hs * hs);

    auto field_u = [&](double u, double v) {
        return finite_real(evaluate_numeric(mc.potential_vector[ua], grid.position(u, v), k), "potential vector") +
               options.gauge_shift[0];
    };
    auto field_v = [&](double u, double v) {
        return finite_real(evaluate_numeric(mc.potential_vector[va], grid.position(u, v), k), "potential vector") +
               options.gauge_shift[1];
    };
    auto index = [n](std::size_t i, std::size_t j) { return static_cast<Eigen::Index>(i * n + j); };

    GridHamiltonian out;
    out.grid = grid;
    std::vector<Eigen::Triplet<cd>> triplets;
    triplets.reserve(5 * n * n);
    double max_flux = 0.0;
    double max_imag = 0.0, max_scalar = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = grid.node(i);
        for (std::size_t j = 0; j < n; ++j) {
            const double v = grid.node(j);
            const cd vs = finite(evaluate_numeric(scalar, grid.position(u, v), k), "scalar potential");
            max_imag = std::max(max_imag, std::abs(vs.imag()));
            max_scalar = std::max(max_scalar, std::abs(vs.real()));
            double diag = 4 * t + vs.real();
            const double au = field_u(u, v), av = field_v(u, v);
            if (options.scheme == Discretization::central) diag += c * (au * au + av * av);
            triplets.emplace_back(index(i, j), index(i, j), diag);
            if (i + 1 < n) {
                const double u1 = grid.node(i + 1);
                cd hop;
                if (options.scheme == Discretization::peierls) {
                    const double theta = hs / 6 * (au + 4 * field_u((u + u1) / 2, v) + field_u(u1, v));
                    hop = -t * std::exp(cd(0, -theta));
                } else {
                    hop = cd(-t, c * (au + field_u(u1, v)) / (2 * hs));
                }
                triplets.emplace_back(index(i, j), index(i + 1, j), hop);
                triplets.emplace_back(index(i + 1, j), index(i, j), std::conj(hop));
            }
            if (j + 1 < n) {
                const double v1 = grid.node(j + 1);
                cd hop;
                if (options.scheme == Discretization::peierls) {
                    const double theta = hs / 6 * (av + 4 * field_v(u, (v + v1) / 2) + field_v(u, v1));
                    hop = -t * std::exp(cd(0, -theta));
                } else {
                    hop = cd(-t, c * (av + field_v(u, v1)) / (2 * hs));
                }
                triplets.emplace_back(index(i, j), index(i, j + 1), hop);
                triplets.emplace_back(index(i, j + 1), index(i, j), std::conj(hop));
            }
            if (i + 1 < n && j + 1 < n) {
                // circulation around the plaquette by the midpoint rule, for the magnetic length
                const double u1 = grid.node(i + 1), v1 = grid.node(j + 1);
                const double um = (u + u1) / 2, vm = (v + v1) / 2;
                const double circ = (field_u(um, v) - field_u(um, v1) + field_v(u1, vm) - field_v(u, vm)) * hs;
                max_flux = std::max(max_flux, std::abs(circ));
            }
        }
    }
    if (max_imag > 1e-9 * max_scalar) {
        throw InternalInconsistencyError("scalar part of the Hamiltonian is not real (imaginary part " +
                                         format_double(max_imag) + ")");
    }
    out.matrix.resize(index(n - 1, n - 1) + 1, index(n - 1, n - 1) + 1);
    out.matrix.setFromTriplets(triplets.begin(), triplets.end());
    out.matrix.makeCompressed();

    const SparseMatrix adj = out.matrix.adjoint();
    const SparseMatrix diff = out.matrix - adj;
    for (int col = 0; col < diff.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(diff, col); it; ++it) {
            out.hermiticity_defect = std::max(out.hermiticity_defect, std::abs(it.value()));
        }
    }

    // circulation / h^2 is the coupled field g|F|; magnetic length 1 / sqrt(g|F|)
    out.magnetic_length = max_flux > 0 ? std::sqrt(hs * hs / max_flux) : std::numeric_limits<double>::infinity();
    if (n < 16) {
        out.coarse = true;
        out.warnings.push_back("grid has " + std::to_string(n) + " points per axis (fewer than 16)");
    }
    if (out.magnetic_length < 4 * hs) {
        out.coarse = true;
        out.warnings.push_back("grid too coarse: magnetic length " + format_double(out.magnetic_length) +
                               " is below 4 grid spacings (" + format_double(4 * hs) + ")");
    }
    return out;
}

GridHamiltonian discretize(const ModelPreset& preset, const GridSpec& grid, const NumericConstants& constants,
                           const DiscretizeOptions& options) {
    return discretize(preset.deformed(), grid, constants, options);
}

namespace {

double gershgorin_lower(const SparseMatrix& h) {
    std::vector<double> radius(static_cast<std::size_t>(h.rows()), 0.0), diag(static_cast<std::size_t>(h.rows()), 0.0);
    for (int col = 0; col < h.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(h, col); it; ++it) {
            if (it.row() == it.col()) {
                diag[static_cast<std::size_t>(it.row())] = it.value().real();
            } else {
                radius[static_cast<std::size_t>(it.row())] += std::abs(it.value());
            }
        }
    }
    double lower = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < diag.size(); ++i) lower = std::min(lower, diag[i] - radius[i]);
    return lower;
}

struct Pairs {
    Eigen::VectorXd values;
    Dense vectors;
};

/// LAPACK zheevr restricted to the k lowest eigenpairs.
Pairs dense_pairs(const SparseMatrix& h, std::size_t k) {
    Dense a = Dense(h);
    const auto n = static_cast<lapack_int>(a.rows());
    const auto kk = static_cast<lapack_int>(k);
    Eigen::VectorXd w(n);
    Dense z(n, kk);
    std::vector<lapack_int> support(2 * static_cast<std::size_t>(kk));
    lapack_int found = 0;
    const lapack_int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, a.data(), n, 0.0, 0.0, 1, kk,
                                           LAPACKE_dlamch('S'), &found, w.data(), z.data(), n, support.data());
    if (info != 0 || found != kk) throw NonConvergenceError("dense eigensolver failed (info " + std::to_string(info) + ")");
    return {w.head(kk), z};
}

Eigen::VectorXd residual_norms(const SparseMatrix& h, const Pairs& p) {
    const Dense hv = h * p.vectors;
    Eigen::VectorXd out(p.values.size());
    for (Eigen::Index i = 0; i < p.values.size(); ++i) {
        out[i] = (hv.col(i) - p.values[i] * p.vectors.col(i)).norm() / p.vectors.col(i).norm();
    }
    return out;
}

/// Implicitly restarted Arnoldi (ARPACK) on (H - sigma)^-1 with sigma below the Gershgorin bound,
/// so the factorization is of a positive definite matrix.
Pairs shift_invert_pairs(const SparseMatrix& h, const EigenOptions& options, std::size_t& iterations) {
    const a_int n = static_cast<a_int>(h.rows());
    const a_int nev = static_cast<a_int>(options.count);
    const a_int ncv = std::min<a_int>(n, 2 * nev + 20);

    const double lower = gershgorin_lower(h);
    const double sigma = lower - 1e-3 * std::max(1.0, std::abs(lower));
    SparseMatrix shifted = h;
    for (Eigen::Index i = 0; i < h.rows(); ++i) shifted.coeffRef(i, i) -= sigma;
    Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower> ldlt(shifted);
    if (ldlt.info() != Eigen::Success) throw NonConvergenceError("factorization of the shifted matrix failed");

    std::vector<cd> resid(static_cast<std::size_t>(n));
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    for (auto& r : resid) r = cd(uniform(rng), uniform(rng));

    std::vector<cd> v(static_cast<std::size_t>(n) * static_cast<std::size_t>(ncv));
    std::vector<cd> workd(3 * static_cast<std::size_t>(n));
    const a_int lworkl = 3 * ncv * ncv + 5 * ncv;
    std::vector<cd> workl(static_cast<std::size_t>(lworkl));
    std::vector<double> rwork(static_cast<std::size_t>(ncv));
    std::array<a_int, 11> iparam{};
    std::array<a_int, 14> ipntr{};
    iparam[0] = 1;
    iparam[2] = static_cast<a_int>(options.max_iterations);
    iparam[6] = 3;
    // ARPACK's own tolerance is relative to the Ritz value of the inverted operator; the
    // residual certificate below is the binding check.
    const double tol = 1e-13;
    a_int ido = 0, info = 1;
    while (true) {
        arpack::naupd(ido, arpack::bmat::identity, n, arpack::which::largest_magnitude, nev, tol, resid.data(), ncv,
                      v.data(), n, iparam.data(), ipntr.data(), workd.data(), workl.data(), lworkl, rwork.data(),
                      info);
        if (ido != -1 && ido != 1) break;
        Eigen::Map<Eigen::VectorXcd> in(workd.data() + ipntr[0] - 1, n);
        Eigen::Map<Eigen::VectorXcd> out(workd.data() + ipntr[1] - 1, n);
        out = ldlt.solve(Eigen::VectorXcd(in));
    }
    iterations = static_cast<std::size_t>(iparam[2]);
    if (info == 1) {
        throw NonConvergenceError("Arnoldi iteration reached " + std::to_string(options.max_iterations) +
                                  " restarts with " + std::to_string(iparam[4]) + " of " + std::to_string(nev) +
                                  " Ritz values converged");
    }
    if (info != 0) throw NonConvergenceError("Arnoldi iteration failed (info " + std::to_string(info) + ")");

    std::vector<a_int> select(static_cast<std::size_t>(ncv));
    std::vector<cd> d(static_cast<std::size_t>(nev) + 1), z(static_cast<std::size_t>(n) * static_cast<std::size_t>(nev));
    std::vector<cd> workev(2 * static_cast<std::size_t>(ncv));
    arpack::neupd(1, arpack::howmny::ritz_vectors, select.data(), d.data(), z.data(), n, cd(sigma), workev.data(),
                  arpack::bmat::identity, n, arpack::which::largest_magnitude, nev, tol, resid.data(), ncv, v.data(),
                  n, iparam.data(), ipntr.data(), workd.data(), workl.data(), lworkl, rwork.data(), info);
    if (info != 0) throw NonConvergenceError("Ritz vector extraction failed (info " + std::to_string(info) + ")");

    std::vector<std::size_t> order(static_cast<std::size_t>(nev));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a].real() < d[b].real(); });
    Pairs out{Eigen::VectorXd(nev), Dense(n, nev)};
    const Eigen::Map<const Dense> zm(z.data(), n, nev);
    for (a_int i = 0; i < nev; ++i) {
        const auto src = static_cast<Eigen::Index>(order[static_cast<std::size_t>(i)]);
        out.vectors.col(i) = zm.col(src).normalized();
        // Rayleigh quotient on H itself
        out.values[i] = out.vectors.col(i).dot(h * out.vectors.col(i)).real();
    }
    return out;
}

}  // namespace

SpectrumResult eigenvalues(const GridHamiltonian& h, const EigenOptions& options) {
    const auto n = static_cast<std::size_t>(h.matrix.rows());
    if (options.count == 0 || options.count > 64) throw InvalidArgument("eigenvalue count must be between 1 and 64");
    if (options.count > n) throw InvalidArgument("eigenvalue count exceeds the number of unknowns");

    SpectrumResult out;
    out.grid = h.grid;
    out.coarse = h.coarse;
    out.warnings = h.warnings;
    Pairs pairs;
    if (n < options.dense_limit) {
        pairs = dense_pairs(h.matrix, options.count);
        out.method = "dense";
        out.iterations = 1;
    } else {
        pairs = shift_invert_pairs(h.matrix, options, out.iterations);
        out.method = "shift-invert Arnoldi";
    }
    const Eigen::VectorXd res = residual_norms(h.matrix, pairs);
    for (Eigen::Index i = 0; i < res.size(); ++i) {
        if (!(res[i] <= options.tolerance)) {
            throw NonConvergenceError("eigenpair " + std::to_string(i) + " has residual " + format_double(res[i]) +
                                      " above " + format_double(options.tolerance));
        }
    }

    const std::size_t np = h.grid.points;
    const double half = options.bulk_fraction * h.grid.extent;
    std::vector<Eigen::Index> bulk;
    for (std::size_t i = 0; i < np; ++i) {
        for (std::size_t j = 0; j < np; ++j) {
            if (std::abs(h.grid.node(i)) <= half && std::abs(h.grid.node(j)) <= half) {
                bulk.push_back(static_cast<Eigen::Index>(i * np + j));
            }
        }
    }
    for (Eigen::Index c = 0; c < pairs.values.size(); ++c) {
        out.eigenvalues.push_back(pairs.values[c]);
        out.residuals.push_back(res[c]);
        double w = 0.0;
        for (const Eigen::Index row : bulk) w += std::norm(pairs.vectors(row, c));
        out.bulk_weights.push_back(w / pairs.vectors.col(c).squaredNorm());
    }
    return out;
}

Json SpectrumResult::to_json() const {
    return Json{{"count", count()},
                {"eigenvalues", eigenvalues},
                {"residuals", residuals},
                {"bulk_weights", bulk_weights},
                {"method", method},
                {"iterations", iterations},
                {"grid",
                 {{"points", grid.points},
                  {"extent", grid.extent},
                  {"axis", grid.axis + 1},
                  {"offset_half_cell", grid.offset_half_cell},
                  {"plane_offset", grid.plane_offset}}},
                {"coarse", coarse},
                {"warnings", warnings}};
}

std::vector<std::size_t> landau_degeneracy(const SpectrumResult& result, double tol) {
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < result.eigenvalues.size(); ++i) {
        if (i > 0 && result.eigenvalues[i] - result.eigenvalues[i - 1] < tol) {
            ++sizes.back();
        } else {
            sizes.push_back(1);
        }
    }
    return sizes;
}

LevelReport distinct_levels(const SpectrumResult& result, double threshold, double tol) {
    LevelReport out;
    if (result.eigenvalues.empty()) return out;
    if (tol <= 0) tol = 0.02 * (result.eigenvalues.back() - result.eigenvalues.front());
    double best_weight = 0.0, last = 0.0;
    for (std::size_t i = 0; i < result.eigenvalues.size(); ++i) {
        const double e = result.eigenvalues[i], w = result.bulk_weights[i];
        if (w < threshold) continue;
        if (out.levels.empty() || e - last >= tol) {
            out.levels.push_back(e);
            out.multiplicities.push_back(1);
            best_weight = w;
        } else {
            ++out.multiplicities.back();
            if (w > best_weight) {
                best_weight = w;
                out.levels.back() = e;
            }
        }
        last = e;
    }
    for (std::size_t i = 1; i < out.levels.size(); ++i) out.spacings.push_back(out.levels[i] - out.levels[i - 1]);
    return out;
}

Json LevelReport::to_json() const {
    return Json{{"levels", levels}, {"multiplicities", multiplicities}, {"spacings", spacings}};
}

double holonomy(const GaugeField& field, const Loop& loop, std::size_t points, const NumericConstants& constants) {
    if (points < 3) throw InvalidArgument("holonomy needs at least 3 quadrature points");
    if (!(loop.radius > 0)) throw InvalidArgument("loop radius must be positive");
    const double distance = std::hypot(loop.center[0], loop.center[1]);
    if (std::abs(distance - loop.radius) <= 1e-12 * loop.radius) {
        throw SingularPointError("loop passes through the axis rho = 0");
    }
    const NumericConstants k = with_defaults(constants);
    const Axis a = (loop.axis + 1) % kDim, b = (loop.axis + 2) % kDim;
    const double step = 2 * std::numbers::pi / static_cast<double>(points);
    double sum = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        const double s = step * static_cast<double>(i);
        std::array<double, kDim> x{};
        x[loop.axis] = loop.plane_offset;
        x[a] = loop.center[0] + loop.radius * std::cos(s);
        x[b] = loop.center[1] + loop.radius * std::sin(s);
        const double dxa = -loop.radius * std::sin(s), dxb = loop.radius * std::cos(s);
        sum += finite_real(evaluate_numeric(field.A[a], x, k), "gauge field") * dxa +
               finite_real(evaluate_numeric(field.A[b], x, k), "gauge field") * dxb;
    }
    return sum * step;
}

std::complex<double> interference_phase(double e, double phi) { return std::exp(cd(0, e * phi)); }

std::complex<double> interference_phase(const Rational& e, const Flux& phi) {
    // reduce e b pi modulo 2 pi exactly before going to floating point
    const Rational eb = e * phi.pi_part;
    const Rational twice(2);
    const Rational reduced = eb - twice * Rational(mpz_class(eb.get_num() / (2 * eb.get_den())));
    const double angle = Rational(e * phi.rational_part).get_d() + reduced.get_d() * std::numbers::pi;
    return std::exp(cd(0, angle));
}

}  // namespace warpqm
