#pragma once

#include "smallscat/kernels.hpp"
#include "smallscat/types.hpp"

namespace smallscat {

/// Exact partial-wave solution for a plane wave scattered by one impedance
/// sphere of radius a centered at the origin:
///   u = sum_l i^l (2l+1) [ j_l(kr) + c_l h1_l(kr) ] P_l(cos theta),
/// theta measured from the incident direction, with the Robin condition
/// du/dr = zeta u on r = a fixing each c_l. Serves as the independent
/// reference the asymptotic charge formulas are validated against.
struct SphereSeriesSolution {
    double a = 0.0;
    double k = 0.0;
    Vec3 alpha{0.0, 0.0, 1.0};
    cdouble zeta;
    std::vector<cdouble> coeffs;  // c_0 .. c_lmax
    int l_max = 0;
};

/// Determine the series coefficients. Requires a free-space background and
/// l_max >= ka + 10 so the truncation error is negligible.
SphereSeriesSolution sphere_series(double a, const WaveContext& ctx, cdouble zeta, int l_max);

/// Total field u(x) (closed-form incident plus truncated scattered series).
cdouble series_field(const SphereSeriesSolution& sol, const Vec3& x);

/// Radial derivative du/dr at x (|x| > 0).
cdouble series_field_dr(const SphereSeriesSolution& sol, const Vec3& x);

/// Max over sampled surface points of |du/dr - zeta u| / (k + |zeta|),
/// a scale-free boundary-condition residual.
double boundary_residual(const SphereSeriesSolution& sol, int samples);

/// Monopole strength Q with the l = 0 scattered term equal to
/// Q e^{ikr} / (4 pi r) asymptotically: Q = -4 pi i c_0 / k.
/// Differs from the surface integral of the layer density by a factor
/// j_0(ka) = 1 + O((ka)^2); see the companion test.
cdouble extract_monopole(const SphereSeriesSolution& sol);

/// Surface integral of the single-layer density reconstructed from the
/// scattered series: the true charge Q = -4 pi i c_0 / (k j_0(ka)).
cdouble monopole_from_layer_density(const SphereSeriesSolution& sol);

}  // namespace smallscat
