#include "smallscat/recipe.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "smallscat/errors.hpp"

namespace smallscat {

ImpedanceFn RecipeDesign::impedance_fn() const {
    const RealGrid h1c = h1, h2c = h2;
    return [h1c, h2c](const Vec3& x) {
        return cdouble(h1c.sample_nearest(x), h2c.sample_nearest(x));
    };
}

DensityFn RecipeDesign::density_fn() const {
    const RealGrid Nc = N;
    return [Nc](const Vec3& x) { return Nc.sample_nearest(x); };
}

GridField target_to_p(const GridField& n0sq, const GridField& nsq, double k) {
    if (!n0sq.conformal_with(nsq)) throw ValidationError("target_to_p: grids are not conformal");
    GridField p(nsq.box, nsq.res);
    for (std::size_t i = 0; i < nsq.size(); ++i) {
        if (nsq.values[i].imag() < 0.0)
            throw PassivityError("target_to_p: Im n^2 < 0 at voxel " + std::to_string(i));
        p.values[i] = k * k * (n0sq.values[i] - nsq.values[i]);
        if (p.values[i].imag() > 0.0)
            throw PassivityError(
                "target_to_p: target would need gain (Im p > 0) at voxel " + std::to_string(i));
    }
    return p;
}

RecipeDesign p_to_hN(const GridField& p, double N_const, double kappa) {
    if (!(N_const > 0.0)) throw ValidationError("p_to_hN: N_const must be positive");
    if (!(kappa > 0.0 && kappa < 1.0)) throw ValidationError("p_to_hN: kappa must be in (0, 1)");
    RecipeDesign d;
    d.p = p;
    d.N = RealGrid(p.box, p.res, 0.0);
    d.h1 = RealGrid(p.box, p.res, 0.0);
    d.h2 = RealGrid(p.box, p.res, 0.0);
    d.N_const = N_const;
    d.kappa = kappa;
    d.kappa1 = (2.0 - kappa) / 3.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const cdouble pv = p.values[i];
        if (pv == cdouble(0.0, 0.0)) continue;  // N = h1 = h2 = 0 where p vanishes
        if (pv.imag() > 0.0)
            throw PassivityError("p_to_hN: Im p > 0 at voxel " + std::to_string(i));
        d.N.values[i] = N_const;
        d.h1.values[i] = pv.real() / (four_pi * N_const);
        d.h2.values[i] = pv.imag() / (four_pi * N_const);
    }
    return d;
}

ScalingLaw design_law(const RecipeDesign& design, double a) {
    ScalingLaw law;
    law.kappa = design.kappa;
    law.kappa1 = design.kappa1;
    law.a = a;
    law.h = design.impedance_fn();
    law.N = design.density_fn();
    law.validate();
    return law;
}

ParticleEnsemble design_ensemble(const RecipeDesign& design, double a, double kappa,
                                 std::uint64_t seed, double cube_side,
                                 const PlacementOptions& opts) {
    if (!(kappa > 0.0 && kappa < 1.0))
        throw ValidationError("design_ensemble: kappa must be in (0, 1)");
    RecipeDesign d = design;
    d.kappa = kappa;
    d.kappa1 = (2.0 - kappa) / 3.0;
    const ScalingLaw law = design_law(d, a);
    const DomainBox box{design.p.box, cube_side};
    return place_particles(law, box, seed, opts);
}

RoundTripReport round_trip(const RecipeDesign& design, std::span<const double> a_sweep,
                           const WaveContext& ctx, const RoundTripOptions& opts) {
    RoundTripReport report;
    LsSolution reference = ls_solve(design.p, ctx, opts.homogenized);
    SweepOptions sweep;
    sweep.placement = opts.placement;
    sweep.manybody = opts.manybody;
    sweep.probe = opts.probe;
    const ScalingLaw proto = design_law(design, a_sweep.empty() ? 0.01 : a_sweep[0]);
    const DomainBox box{design.p.box, opts.cube_side};
    report.rows = discrepancy_sweep(proto, box, a_sweep, /*seed=*/ctx.k >= 0 ? 1u : 1u, ctx,
                                    reference, sweep);
    report.non_increasing = non_increasing(report.rows, opts.slack);
    return report;
}

void write_round_trip_report(const RoundTripReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("write_round_trip_report: cannot open " + path);
    out << "# a  particles  validity_ratio  discrepancy\n";
    char buf[160];
    for (const SweepRow& r : report.rows) {
        std::snprintf(buf, sizeof buf, "%.17g %zu %.17g %.17g\n", r.a, r.count, r.validity,
                      r.discrepancy);
        out << buf;
    }
    out << "# non_increasing " << (report.non_increasing ? "yes" : "no") << '\n';
    if (!out) throw IoError("write_round_trip_report: write failed for " + path);
}

}  // namespace smallscat
