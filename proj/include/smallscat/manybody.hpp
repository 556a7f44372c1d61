#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smallscat/ensemble.hpp"
#include "smallscat/kernels.hpp"
#include "smallscat/types.hpp"

namespace smallscat {

enum class SolverKind { automatic, dense, iterative };

enum class CouplingMode {
    unified,        // g_m = 4 pi zeta a^2 / (1 + zeta a); reproduces both limits
    leading_order,  // literal leading term: 4 pi zeta a^2 (kappa < 1) or 4 pi a (kappa > 1)
};

struct SolveOptions {
    double tol = 1e-10;
    std::size_t dense_threshold = 2000;
    SolverKind solver = SolverKind::automatic;
    CouplingMode coupling = CouplingMode::unified;
    int max_iterations = 600;
    /// Optional replacement for the sampled incident field (superposition tests).
    std::optional<std::vector<cdouble>> incident_override;
};

/// Self-consistent effective field at particle centers and monopole charges.
struct EffectiveFieldSolution {
    std::vector<cdouble> u_at_centers;
    std::vector<cdouble> charges;
    double residual_norm = 0.0;
    int iterations = 0;
    SolverKind solver_kind = SolverKind::dense;
};

/// Solve u_j = u0(x_j) - sum_{m != j} G(x_j, x_m) g_m u_m and set
/// Q_m = -g_m u_m. Dense LU up to dense_threshold particles, restarted GMRES
/// above (matrix-free, O(M^2) per application, fixed-order row sums).
/// Requires a free-space background and kappa1 < 1.
EffectiveFieldSolution solve_effective_field(const ParticleEnsemble& ens, const WaveContext& ctx,
                                             const SolveOptions& opts = {});

/// u_M(x) = u0(x) + sum_m G(x, x_m) Q_m, valid away from the particles.
/// Throws NearFieldError (naming the particle) when
/// |x - x_m| < guard_multiple * a for some m.
cdouble evaluate_field(const EffectiveFieldSolution& sol, const ParticleEnsemble& ens,
                       const WaveContext& ctx, const Vec3& x, double guard_multiple = 3.0);

double min_distance_to_particles(const ParticleEnsemble& ens, const Vec3& x);

/// a-scaling estimate a^{1 - kappa1} of the neglected-term ratio J/I; values
/// well below 1 indicate the monopole reduction is trustworthy.
double validity_ratio(const ParticleEnsemble& ens);

/// Scattered far-field amplitude A(dir) with u_M - u0 ~ A e^{ikr}/(4 pi r):
/// A = sum_m Q_m e^{-ik dir . x_m}.
cdouble far_field_amplitude(const EffectiveFieldSolution& sol, const ParticleEnsemble& ens,
                            double k, const Vec3& dir);

/// Residual of the restated linear system, relative sup norm.
double system_residual(const EffectiveFieldSolution& sol, const ParticleEnsemble& ens,
                       const WaveContext& ctx, CouplingMode coupling = CouplingMode::unified);

// Per-particle solution records plus a summary block.
void write_solution(const EffectiveFieldSolution& sol, const ParticleEnsemble& ens,
                    const std::string& path);
EffectiveFieldSolution read_solution(const std::string& path);

}  // namespace smallscat
