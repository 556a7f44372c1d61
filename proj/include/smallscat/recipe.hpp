#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "smallscat/ensemble.hpp"
#include "smallscat/grid.hpp"
#include "smallscat/study.hpp"

namespace smallscat {

/// Material design for a prescribed refraction coefficient: the potential
/// p = p1 + i p2 to synthesize, the particle density weight N, and the
/// impedance parts h1, h2 with 4 pi N h1 = p1, 4 pi N h2 = p2 voxelwise.
struct RecipeDesign {
    GridField p;
    RealGrid N;
    RealGrid h1;
    RealGrid h2;
    double N_const = 1.0;
    double kappa = 0.5;
    double kappa1 = 0.5;  // (2 - kappa)/3

    ImpedanceFn impedance_fn() const;  // nearest-voxel h1 + i h2
    DensityFn density_fn() const;      // nearest-voxel N
};

/// p = k^2 (n0^2 - n^2). Refuses Im n^2 < 0 (gain target) and any voxel where
/// the result would have positive imaginary part.
GridField target_to_p(const GridField& n0sq, const GridField& nsq, double k);

/// The constant-N allocation: N = N_const on supp p, zero elsewhere;
/// h1 = p1/(4 pi N), h2 = p2/(4 pi N). Requires N_const > 0 and 0 < kappa < 1.
RecipeDesign p_to_hN(const GridField& p, double N_const, double kappa = 0.5);

/// ScalingLaw realizing the design at radius a.
ScalingLaw design_law(const RecipeDesign& design, double a);

/// Particle counts per cube (nearest integer to a^{-(2-kappa)} integral of N)
/// and lattice placement at pitch ~ a^{(2-kappa)/3}; impedances h(x_m)/a^kappa.
ParticleEnsemble design_ensemble(const RecipeDesign& design, double a, double kappa,
                                 std::uint64_t seed, double cube_side,
                                 const PlacementOptions& opts = {});

struct RoundTripOptions {
    double cube_side = 1.0;
    std::uint64_t seed = 1;
    PlacementOptions placement;
    SolveOptions manybody;
    LsOptions homogenized;
    ProbeSpec probe;
    double slack = 1.1;  // allowed per-step growth from lattice-rounding noise
};

struct RoundTripReport {
    std::vector<SweepRow> rows;
    bool non_increasing = false;
};

/// Build the designed material at each radius, solve the many-body system,
/// and compare against the homogenized solution with the target p on a shared
/// exterior probe. Discrepancies should not grow as a shrinks.
RoundTripReport round_trip(const RecipeDesign& design, std::span<const double> a_sweep,
                           const WaveContext& ctx, const RoundTripOptions& opts = {});

void write_round_trip_report(const RoundTripReport& report, const std::string& path);

}  // namespace smallscat
