#pragma once

#include <optional>
#include <vector>

#include "smallscat/grid.hpp"
#include "smallscat/kernels.hpp"
#include "smallscat/manybody.hpp"  // SolverKind
#include "smallscat/types.hpp"

namespace smallscat {

struct LsOptions {
    double tol = 1e-10;
    std::size_t dense_threshold = 1000;  // total voxels
    SolverKind solver = SolverKind::automatic;
    int max_iterations = 600;
    std::optional<GridField> incident;  // defaults to the plane wave on the grid
};

struct LsSolution {
    GridField u;
    GridField q;  // q0 + p actually used, kept for exterior evaluation
    double k = 0.0;
    Vec3 alpha;
    double residual = 0.0;
    int iterations = 0;
    SolverKind solver_kind = SolverKind::dense;
    bool stability_warning = false;  // k * max spacing > 0.5: wavelength marginally resolved
    std::vector<double> residual_history;
};

/// Diagonal term of the Nystrom discretization: the kernel integrated over
/// the ball of the voxel's volume,
///   integral_{|y|<R} e^{ik|y|}/(4 pi |y|) dy = (e^{ikR}(1 - ikR) - 1)/k^2,
/// R = (3 V / 4 pi)^{1/3}; k = 0 limit R^2/2.
cdouble self_term(double voxel_volume, double k);

/// Solve the volume integral equation u = u0 - integral_D G (q0 + p) u dy on
/// the voxel grid carrying p. Midpoint Nystrom with the equivalent-ball
/// diagonal correction; dense LU for small grids, matrix-free GMRES with a
/// precomputed translation-invariant kernel table otherwise.
LsSolution ls_solve(const GridField& p, const WaveContext& ctx, const LsOptions& opts = {});

/// Continue the discrete solution outside the grid through its volume
/// potential: u(x) = u0(x) - sum_j G(x, x_j) q_j u_j V.
cdouble evaluate_exterior(const LsSolution& sol, const Vec3& x);

/// Max over interior voxels (two-voxel margin) of
/// |laplacian_h u + k^2 u - (q0 + p) u| / max |u| with the 7-point stencil.
/// Requires resolution >= 16 per axis.
double pde_residual(const GridField& u, const GridField& p, const WaveContext& ctx);

/// Energy bookkeeping of the discrete solution via its far field:
///   scattered_power   = k/(16 pi^2) * integral |A(s)|^2 ds   (>= 0)
///   extinction_term   = Im A(alpha)
///   absorption_volume = sum Im(q_j) |u_j|^2 V                (<= 0, passive)
/// For the continuous solution scattered_power + extinction_term equals
/// absorption_volume; discretely they agree up to quadrature error, and
/// passivity demands scattered_power + extinction_term <= O(error).
struct EnergyBalance {
    double scattered_power = 0.0;
    double extinction_term = 0.0;
    double absorption_volume = 0.0;
    double flux() const { return scattered_power + extinction_term; }
};

EnergyBalance scattering_energy_balance(const LsSolution& sol, int sphere_order = 16);

}  // namespace smallscat
