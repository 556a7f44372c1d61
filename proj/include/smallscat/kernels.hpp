#pragma once

#include <memory>

#include "smallscat/grid.hpp"
#include "smallscat/types.hpp"

namespace smallscat {

/// Incident-wave and background description shared by all solvers.
///
/// The background is either free space (n0^2 == 1 everywhere) or a voxelized
/// potential q0(x) = k^2 (1 - n0^2(x)). Only the homogenized solver accepts a
/// variable background; everything that needs the background Green function
/// requires free space.
struct WaveContext {
    double k = 1.0;
    Vec3 alpha{0.0, 0.0, 1.0};
    std::shared_ptr<const GridField> q0;  // null means free space

    static WaveContext free_space(double k, const Vec3& alpha);
    /// Variable background from a refraction grid n0^2(x); requires Im n0^2 >= 0.
    static WaveContext with_background(double k, const Vec3& alpha, const GridField& n0sq);

    bool is_free_space() const { return q0 == nullptr; }
    void validate() const;
};

/// Outgoing free-space Helmholtz kernel e^{ik|x-y|} / (4 pi |x-y|).
/// Throws DomainError for coincident points.
cdouble green_free(const Vec3& x, const Vec3& y, double k);

/// Plane wave e^{ik alpha.x}. No background check; used as the right-hand
/// side of the volume integral equation where the background is folded into q.
cdouble plane_wave(double k, const Vec3& alpha, const Vec3& x);

/// Incident field u0(x) of the physical problem. Free-space backgrounds only.
cdouble incident_field(const WaveContext& ctx, const Vec3& x);

/// Integral of 1/(4 pi |s-t|) over the sphere of radius a centered at
/// `center`, with t on that sphere. Exact value is a; quadrature places the
/// singular point at a pole so the sin-weighted Jacobian removes the
/// singularity. `quadrature_order` >= 2 Gauss-Legendre points in the polar
/// angle; order 32 is the reference order used by the tests.
double surface_self_integral(double a, const Vec3& t, int quadrature_order,
                             const Vec3& center = {0.0, 0.0, 0.0});

inline constexpr int surface_quadrature_reference_order = 32;

}  // namespace smallscat
