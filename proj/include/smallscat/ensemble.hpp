#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smallscat/scaling.hpp"
#include "smallscat/types.hpp"

namespace smallscat {

/// Domain D with the cube-partition resolution b used for particle counting.
/// b must satisfy 0 < b <= min side and b >= 10 a (counting semantics need
/// cubes much larger than particles).
struct DomainBox {
    Box3 box;
    double cube_side = 0.0;

    void validate(double a) const;
};

/// Partition of the domain into an nx x ny x nz grid of cells whose sides are
/// as close to cube_side as the box extents allow.
struct CubePartition {
    Box3 box;
    std::array<int, 3> counts{1, 1, 1};

    static CubePartition make(const DomainBox& d);
    int total() const { return counts[0] * counts[1] * counts[2]; }
    Box3 cell(int ix, int iy, int iz) const;
    Box3 cell(int flat) const;
};

struct PlacementOptions {
    /// Lattice pitch is spacing_prefactor * a^kappa1. The default 1.0 keeps
    /// the strict min-distance guarantee d >= a^kappa1; smaller values trade
    /// spacing margin for capacity headroom near exact lattice saturation.
    double spacing_prefactor = 1.0;
    /// Midpoint-rule refinement per axis for integrating N over a cube.
    int density_refine = 4;
};

/// The discrete medium: ball centers, common radius, per-particle impedances
/// zeta_m = h(x_m)/a^kappa. Immutable after construction.
struct ParticleEnsemble {
    std::vector<Vec3> centers;
    double a = 0.0;
    std::vector<cdouble> zeta;
    double kappa = 0.0;
    double kappa1 = 0.0;
    std::uint64_t seed = 0;
    DomainBox domain;
    std::vector<long> cube_counts;
    double spacing = 0.0;  // realized lattice pitch
    double spacing_prefactor = 1.0;

    std::size_t size() const { return centers.size(); }
};

/// Number of particles a cell receives: the integer nearest (ties to even) to
/// a^{-3 kappa1} * integral of N over the cell (midpoint rule, `refine`^3
/// panels). Throws if a sampled N is negative.
long cube_count(const ScalingLaw& law, const Box3& cell, int refine = 4);

/// Deterministic seeded placement: each cell receives exactly cube_count
/// particles on a centered sub-lattice of pitch spacing_prefactor * a^kappa1,
/// sites chosen in seeded-shuffled order. Sites closer than a to the domain
/// boundary are excluded. Throws CapacityError (naming the cell) when a cell
/// cannot hold its count.
ParticleEnsemble place_particles(const ScalingLaw& law, const DomainBox& box, std::uint64_t seed,
                                 const PlacementOptions& opts = {});

/// Empirical density (count in probe) * a^{3 kappa1} / |probe|, the counting
/// measure the prescribed N(x) is verified against.
double empirical_density(const ParticleEnsemble& ens, const Box3& probe);

double min_pairwise_distance(const ParticleEnsemble& ens);

/// Unified point coupling g_m = 4 pi zeta_m a^2 / (1 + zeta_m a), so that
/// Q_m = -g_m u_e(x_m). Equals 4 pi h a^{2-kappa}/(1 + h a^{1-kappa}).
cdouble particle_coupling(const ParticleEnsemble& ens, std::size_t m);

// Manifest: header (a, kappa, kappa1, seed, spacing, box, cube layout,
// per-cube counts) + one record per particle: index x y z Re(zeta) Im(zeta).
// %.17g formatting makes write -> read -> write byte-stable.
void write_manifest(const ParticleEnsemble& ens, const std::string& path);
ParticleEnsemble read_manifest(const std::string& path);

}  // namespace smallscat
