#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "smallscat/ensemble.hpp"
#include "smallscat/homogenized.hpp"
#include "smallscat/manybody.hpp"

namespace smallscat {

/// Exterior probe points: voxel centers of the domain box dilated by
/// `offset`, keeping only points at distance >= clearance from the domain.
/// Shared across an a-sweep so discrepancies are comparable.
struct ProbeSpec {
    double offset = 0.25;
    std::array<int, 3> res{8, 8, 8};
    double clearance = 0.15;
};

std::vector<Vec3> exterior_probe_points(const Box3& domain, const ProbeSpec& probe);

struct SweepOptions {
    PlacementOptions placement;
    SolveOptions manybody;
    ProbeSpec probe;
    double guard_multiple = 3.0;
};

struct SweepRow {
    double a = 0.0;
    std::size_t count = 0;
    double validity = 0.0;     // a^{1-kappa1}
    double discrepancy = 0.0;  // sup |u_M - u_hom| / sup |u_hom| over the probe
};

/// For each a: place particles for the law (with that radius), solve the
/// effective-field system, and compare the monopole-sum field against the
/// homogenized reference on the shared probe.
std::vector<SweepRow> discrepancy_sweep(const ScalingLaw& proto, const DomainBox& domain,
                                        std::span<const double> a_list, std::uint64_t seed,
                                        const WaveContext& ctx, const LsSolution& reference,
                                        const SweepOptions& opts = {});

/// True when each discrepancy is <= slack * previous (non-increasing trend
/// with multiplicative slack and an absolute floor for exact zeros).
bool non_increasing(const std::vector<SweepRow>& rows, double slack = 1.1,
                    double abs_floor = 1e-12);

}  // namespace smallscat
