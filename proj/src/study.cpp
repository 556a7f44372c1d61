#include "smallscat/study.hpp"

#include <cmath>

#include "smallscat/errors.hpp"

namespace smallscat {

std::vector<Vec3> exterior_probe_points(const Box3& domain, const ProbeSpec& probe) {
    const Box3 outer = domain.dilated(probe.offset);
    GridField shell(outer, probe.res);
    std::vector<Vec3> pts;
    for (std::size_t i = 0; i < shell.size(); ++i) {
        const Vec3 x = shell.center(i);
        if (domain.distance(x) >= probe.clearance) pts.push_back(x);
    }
    if (pts.empty()) throw ValidationError("exterior_probe_points: no points survive clearance");
    return pts;
}

std::vector<SweepRow> discrepancy_sweep(const ScalingLaw& proto, const DomainBox& domain,
                                        std::span<const double> a_list, std::uint64_t seed,
                                        const WaveContext& ctx, const LsSolution& reference,
                                        const SweepOptions& opts) {
    const std::vector<Vec3> probe = exterior_probe_points(domain.box, opts.probe);
    std::vector<cdouble> ref_vals(probe.size());
    double ref_scale = 0.0;
    for (std::size_t i = 0; i < probe.size(); ++i) {
        ref_vals[i] = evaluate_exterior(reference, probe[i]);
        ref_scale = std::fmax(ref_scale, std::abs(ref_vals[i]));
    }
    if (ref_scale == 0.0) ref_scale = 1.0;

    std::vector<SweepRow> rows;
    for (double a : a_list) {
        ScalingLaw law = proto;
        law.a = a;
        const ParticleEnsemble ens = place_particles(law, domain, seed, opts.placement);
        const EffectiveFieldSolution sol = solve_effective_field(ens, ctx, opts.manybody);
        double sup = 0.0;
        for (std::size_t i = 0; i < probe.size(); ++i) {
            const cdouble um = evaluate_field(sol, ens, ctx, probe[i], opts.guard_multiple);
            sup = std::fmax(sup, std::abs(um - ref_vals[i]));
        }
        rows.push_back({a, ens.size(), validity_ratio(ens), sup / ref_scale});
    }
    return rows;
}

bool non_increasing(const std::vector<SweepRow>& rows, double slack, double abs_floor) {
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].discrepancy > slack * rows[i - 1].discrepancy + abs_floor) return false;
    return true;
}

}  // namespace smallscat
