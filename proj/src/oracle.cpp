#include "smallscat/oracle.hpp"

#include <cmath>
#include <string>

#include "smallscat/bessel.hpp"
#include "smallscat/errors.hpp"

namespace smallscat {

namespace {

const cdouble I(0.0, 1.0);

cdouble ipow(int l) {
    switch (l & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

}  // namespace

SphereSeriesSolution sphere_series(double a, const WaveContext& ctx, cdouble zeta, int l_max) {
    if (!ctx.is_free_space())
        throw UnsupportedBackgroundError("sphere_series: free-space background required");
    if (!(a > 0.0)) throw ValidationError("sphere_series: radius must be positive");
    if (!(ctx.k > 0.0)) throw ValidationError("sphere_series: k must be positive");
    const double ka = ctx.k * a;
    if (l_max < static_cast<int>(std::ceil(ka)) + 10)
        throw ValidationError("sphere_series: l_max must be >= ka + 10");

    SphereSeriesSolution sol;
    sol.a = a;
    sol.k = ctx.k;
    sol.alpha = ctx.alpha;
    sol.zeta = zeta;
    sol.l_max = l_max;
    sol.coeffs.resize(l_max + 1);

    const SphericalBesselTable t = spherical_bessel_table(l_max, ka);
    for (int l = 0; l <= l_max; ++l) {
        // k j' - zeta j + c (k h' - zeta h) = 0 on r = a.
        const cdouble num = ctx.k * t.jp[l] - zeta * t.j[l];
        const cdouble den = ctx.k * t.hp[l] - zeta * t.h[l];
        if (std::abs(den) < 1e-300)
            throw ResonanceError("sphere_series: impedance resonance at l = " + std::to_string(l));
        sol.coeffs[l] = -num / den;
    }
    return sol;
}

cdouble series_field(const SphereSeriesSolution& sol, const Vec3& x) {
    const double r = norm(x);
    if (!(r > 0.0)) throw DomainError("series_field: evaluation at the origin");
    const double u = dot(x, sol.alpha) / r;
    const SphericalBesselTable t = spherical_bessel_table(sol.l_max, sol.k * r);
    const std::vector<double> P = legendre_table(sol.l_max, u);
    cdouble scattered(0.0, 0.0);
    for (int l = 0; l <= sol.l_max; ++l)
        scattered += ipow(l) * (2.0 * l + 1.0) * sol.coeffs[l] * t.h[l] * P[l];
    return plane_wave(sol.k, sol.alpha, x) + scattered;
}

cdouble series_field_dr(const SphereSeriesSolution& sol, const Vec3& x) {
    const double r = norm(x);
    if (!(r > 0.0)) throw DomainError("series_field_dr: evaluation at the origin");
    const double u = dot(x, sol.alpha) / r;
    const SphericalBesselTable t = spherical_bessel_table(sol.l_max, sol.k * r);
    const std::vector<double> P = legendre_table(sol.l_max, u);
    // d/dr of the incident plane wave along the radial direction is
    // ik (alpha . x/r) e^{ik alpha.x}; the theta dependence through P_l(u)
    // does not move under radial differentiation.
    const cdouble inc_dr = I * sol.k * u * plane_wave(sol.k, sol.alpha, x);
    cdouble scattered_dr(0.0, 0.0);
    for (int l = 0; l <= sol.l_max; ++l)
        scattered_dr += ipow(l) * (2.0 * l + 1.0) * sol.coeffs[l] * sol.k * t.hp[l] * P[l];
    return inc_dr + scattered_dr;
}

double boundary_residual(const SphereSeriesSolution& sol, int samples) {
    if (samples < 1) throw ValidationError("boundary_residual: need at least one sample");
    double worst = 0.0;
    const double scale = sol.k + std::abs(sol.zeta);
    for (int i = 0; i < samples; ++i) {
        const double ct = -1.0 + 2.0 * (i + 0.5) / samples;
        const double st = std::sqrt(std::fmax(0.0, 1.0 - ct * ct));
        const double phi = 2.399963229728653 * i;  // golden-angle spread
        // Surface point with polar angle measured from alpha.
        Vec3 e3 = sol.alpha;
        Vec3 seed{1.0, 0.0, 0.0};
        if (std::abs(e3.x) > 0.9) seed = {0.0, 1.0, 0.0};
        Vec3 e1 = cross(e3, seed);
        e1 = e1 / norm(e1);
        const Vec3 e2 = cross(e3, e1);
        const Vec3 x = sol.a * (st * std::cos(phi) * e1 + st * std::sin(phi) * e2 + ct * e3);
        const cdouble u = series_field(sol, x);
        const cdouble ur = series_field_dr(sol, x);
        worst = std::fmax(worst, std::abs(ur - sol.zeta * u) / scale);
    }
    return worst;
}

cdouble extract_monopole(const SphereSeriesSolution& sol) {
    // l = 0 scattered term: c0 h0(kr) = c0 (-i) e^{ikr}/(kr) = Q e^{ikr}/(4 pi r).
    return -four_pi * I * sol.coeffs[0] / sol.k;
}

cdouble monopole_from_layer_density(const SphereSeriesSolution& sol) {
    const double j0 = std::sph_bessel(0u, sol.k * sol.a);
    if (std::abs(j0) < 1e-300)
        throw ResonanceError("monopole_from_layer_density: j_0(ka) vanishes");
    return extract_monopole(sol) / j0;
}

}  // namespace smallscat
