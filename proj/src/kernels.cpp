#include "smallscat/kernels.hpp"

#include <cmath>
#include <string>

#include "smallscat/errors.hpp"
#include "smallscat/quadrature.hpp"

namespace smallscat {

WaveContext WaveContext::free_space(double k, const Vec3& alpha) {
    WaveContext ctx;
    ctx.k = k;
    ctx.alpha = alpha;
    ctx.validate();
    return ctx;
}

WaveContext WaveContext::with_background(double k, const Vec3& alpha, const GridField& n0sq) {
    WaveContext ctx;
    ctx.k = k;
    ctx.alpha = alpha;
    auto q0 = std::make_shared<GridField>(n0sq.box, n0sq.res);
    for (std::size_t i = 0; i < n0sq.size(); ++i) {
        if (n0sq.values[i].imag() < 0.0)
            throw PassivityError("WaveContext: Im n0^2 < 0 at voxel " + std::to_string(i));
        q0->values[i] = k * k * (1.0 - n0sq.values[i]);
    }
    ctx.q0 = std::move(q0);
    ctx.validate();
    return ctx;
}

void WaveContext::validate() const {
    if (!(k >= 0.0)) throw ValidationError("WaveContext: k must be >= 0");
    if (std::abs(norm(alpha) - 1.0) > 1e-12)
        throw ValidationError("WaveContext: alpha must be a unit vector (|alpha| - 1 within 1e-12)");
    if (q0) {
        for (std::size_t i = 0; i < q0->size(); ++i)
            if (q0->values[i].imag() > 0.0)
                throw PassivityError("WaveContext: background gain (Im q0 > 0) at voxel " +
                                     std::to_string(i));
    }
}

cdouble green_free(const Vec3& x, const Vec3& y, double k) {
    const double r = norm(x - y);
    const double scale = std::fmax(1.0, std::fmax(norm(x), norm(y)));
    if (r <= 1e-14 * scale) throw DomainError("green_free: coincident points");
    return std::polar(1.0 / (four_pi * r), k * r);
}

cdouble plane_wave(double k, const Vec3& alpha, const Vec3& x) {
    return std::polar(1.0, k * dot(alpha, x));
}

cdouble incident_field(const WaveContext& ctx, const Vec3& x) {
    if (!ctx.is_free_space())
        throw UnsupportedBackgroundError(
            "incident_field: variable background has no closed-form incident field");
    return plane_wave(ctx.k, ctx.alpha, x);
}

double surface_self_integral(double a, const Vec3& t, int quadrature_order, const Vec3& center) {
    if (!(a > 0.0)) throw DomainError("surface_self_integral: radius must be positive");
    if (quadrature_order < 2) throw ValidationError("surface_self_integral: order must be >= 2");
    const Vec3 rt = t - center;
    if (std::abs(norm(rt) - a) > 1e-10 * std::fmax(1.0, a))
        throw DomainError("surface_self_integral: t is not on the sphere");

    // Orthonormal frame with w pointing from the center to t, so the singular
    // point sits at the pole theta = 0.
    const Vec3 w = rt / norm(rt);
    Vec3 seed{1.0, 0.0, 0.0};
    if (std::abs(w.x) > 0.9) seed = {0.0, 1.0, 0.0};
    Vec3 u = cross(w, seed);
    u = u / norm(u);
    const Vec3 v = cross(w, u);

    const GaussLegendre gl = gauss_legendre(quadrature_order);
    const int nphi = 2 * quadrature_order;
    double sum = 0.0;
    for (int i = 0; i < quadrature_order; ++i) {
        // theta in (0, pi); Gauss nodes avoid the singular endpoint.
        const double theta = 0.5 * pi * (gl.nodes[i] + 1.0);
        const double wtheta = gl.weights[i] * 0.5 * pi;
        const double st = std::sin(theta), ct = std::cos(theta);
        for (int j = 0; j < nphi; ++j) {
            const double phi = 2.0 * pi * (j + 0.5) / nphi;
            const Vec3 s = center + a * (st * std::cos(phi) * u + st * std::sin(phi) * v + ct * w);
            const double dist = norm(s - t);
            sum += wtheta * (2.0 * pi / nphi) * a * a * st / (four_pi * dist);
        }
    }
    return sum;
}

}  // namespace smallscat
