#include "smallscat/homogenized.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "smallscat/errors.hpp"
#include "smallscat/linalg.hpp"
#include "smallscat/quadrature.hpp"

namespace smallscat {

cdouble self_term(double voxel_volume, double k) {
    if (!(voxel_volume > 0.0)) throw ValidationError("self_term: voxel volume must be positive");
    const double R = std::cbrt(3.0 * voxel_volume / four_pi);
    const double kR = k * R;
    if (kR < 1e-3) {
        // Series around kR = 0 avoids the cancellation in the closed form:
        // R^2/2 + i k R^3/3 - k^2 R^4/8 - i k^3 R^5/30 + ...
        return cdouble(R * R / 2.0 - k * k * R * R * R * R / 8.0,
                       k * R * R * R / 3.0 - k * k * k * R * R * R * R * R / 30.0);
    }
    const cdouble e = std::polar(1.0, kR);
    return (e * cdouble(1.0, -kR) - 1.0) / (k * k);
}

namespace {

// Kernel weights W(x_i - x_j) on the translation-invariant voxel lattice:
// G * V off the origin and the corrected self term at the origin. Indexed by
// (di + nx - 1, dj + ny - 1, dk + nz - 1).
struct KernelTable {
    std::array<int, 3> res;
    std::vector<cdouble> w;

    KernelTable(const GridField& grid, double k) : res(grid.res) {
        const Vec3 h = grid.spacing();
        const double V = grid.voxel_volume();
        const int nx = res[0], ny = res[1], nz = res[2];
        w.resize(static_cast<std::size_t>(2 * nx - 1) * (2 * ny - 1) * (2 * nz - 1));
        for (int di = -(nx - 1); di <= nx - 1; ++di)
            for (int dj = -(ny - 1); dj <= ny - 1; ++dj)
                for (int dk = -(nz - 1); dk <= nz - 1; ++dk) {
                    cdouble val;
                    if (di == 0 && dj == 0 && dk == 0) {
                        val = self_term(V, k);
                    } else {
                        const Vec3 d{di * h.x, dj * h.y, dk * h.z};
                        val = green_free(d, Vec3{}, k) * V;
                    }
                    w[index(di, dj, dk)] = val;
                }
    }

    std::size_t index(int di, int dj, int dk) const {
        return (static_cast<std::size_t>(di + res[0] - 1) * (2 * res[1] - 1) + (dj + res[1] - 1)) *
                   (2 * res[2] - 1) +
               (dk + res[2] - 1);
    }
};

// y = u + W (q u); rows are fixed-order sequential sums.
void apply_table(const KernelTable& table, const GridField& grid,
                 const std::vector<cdouble>& qu_scratch, const Eigen::VectorXcd& u,
                 Eigen::VectorXcd& y) {
    const int nx = grid.res[0], ny = grid.res[1], nz = grid.res[2];
    const int stride_j = 2 * nz - 1;
    const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t flat = 0; flat < total; ++flat) {
        const int iz = static_cast<int>(flat % nz);
        const int iy = static_cast<int>((flat / nz) % ny);
        const int ix = static_cast<int>(flat / (static_cast<std::ptrdiff_t>(ny) * nz));
        cdouble acc(0.0, 0.0);
        std::size_t j = 0;
        for (int jx = 0; jx < nx; ++jx) {
            const std::size_t base_x =
                static_cast<std::size_t>(ix - jx + nx - 1) * (2 * ny - 1);
            for (int jy = 0; jy < ny; ++jy) {
                const cdouble* wrow =
                    table.w.data() + (base_x + (iy - jy + ny - 1)) * stride_j + (iz + nz - 1);
                // wrow[-jz] walks the contiguous kernel row as jz increases.
                for (int jz = 0; jz < nz; ++jz, ++j) acc += wrow[-jz] * qu_scratch[j];
            }
        }
        y(flat) = u(flat) + acc;
    }
}

}  // namespace

LsSolution ls_solve(const GridField& p, const WaveContext& ctx, const LsOptions& opts) {
    ctx.validate();
    if (!(opts.tol > 0.0)) throw ValidationError("ls_solve: tol must be positive");
    if (p.res[0] < 2 || p.res[1] < 2 || p.res[2] < 2)
        throw ValidationError("ls_solve: resolution must be >= 2 per axis");
    if (p.size() != static_cast<std::size_t>(p.res[0]) * p.res[1] * p.res[2])
        throw ValidationError("ls_solve: value count does not match resolution");

    LsSolution sol;
    sol.k = ctx.k;
    sol.alpha = ctx.alpha;
    sol.q = p;
    if (ctx.q0) {
        if (!ctx.q0->conformal_with(p))
            throw ValidationError("ls_solve: background grid is not conformal with p");
        for (std::size_t i = 0; i < sol.q.size(); ++i) sol.q.values[i] += ctx.q0->values[i];
    }
    sol.stability_warning = ctx.k * p.max_spacing() > 0.5;

    const std::size_t n = p.size();
    Eigen::VectorXcd rhs(n);
    if (opts.incident) {
        if (!opts.incident->conformal_with(p))
            throw ValidationError("ls_solve: incident grid is not conformal with p");
        for (std::size_t i = 0; i < n; ++i) rhs(i) = opts.incident->values[i];
    } else {
        for (std::size_t i = 0; i < n; ++i) rhs(i) = plane_wave(ctx.k, ctx.alpha, p.center(i));
    }

    SolverKind kind = opts.solver;
    if (kind == SolverKind::automatic)
        kind = n <= opts.dense_threshold ? SolverKind::dense : SolverKind::iterative;
    sol.solver_kind = kind;

    const KernelTable table(p, ctx.k);
    Eigen::VectorXcd u;
    if (kind == SolverKind::dense) {
        Eigen::MatrixXcd A(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const int iz = static_cast<int>(i % p.res[2]);
            const int iy = static_cast<int>((i / p.res[2]) % p.res[1]);
            const int ix = static_cast<int>(i / (static_cast<std::size_t>(p.res[1]) * p.res[2]));
            for (std::size_t j = 0; j < n; ++j) {
                const int jz = static_cast<int>(j % p.res[2]);
                const int jy = static_cast<int>((j / p.res[2]) % p.res[1]);
                const int jx =
                    static_cast<int>(j / (static_cast<std::size_t>(p.res[1]) * p.res[2]));
                const cdouble w = table.w[table.index(ix - jx, iy - jy, iz - jz)];
                A(i, j) = w * sol.q.values[j] + (i == j ? cdouble(1.0, 0.0) : cdouble(0.0, 0.0));
            }
        }
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
        u = lu.solve(rhs);
        sol.residual = (A * u - rhs).norm() / rhs.norm();
        if (!(sol.residual <= std::fmax(opts.tol, 1e-8))) {
            std::ostringstream msg;
            msg << "ls_solve: dense residual " << sol.residual
                << " exceeds tolerance; reciprocal condition estimate " << lu.rcond();
            throw SolverError(msg.str());
        }
    } else {
        std::vector<cdouble> qu(n);
        auto apply = [&](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
            for (std::size_t i = 0; i < n; ++i) qu[i] = sol.q.values[i] * x(i);
            apply_table(table, p, qu, x, y);
        };
        GmresResult res = gmres(apply, rhs, opts.tol, opts.max_iterations);
        sol.residual_history = std::move(res.residual_history);
        if (!res.converged) {
            std::ostringstream msg;
            msg << "ls_solve: GMRES stalled at relative residual " << res.rel_residual << " after "
                << res.iterations << " iterations";
            throw SolverError(msg.str());
        }
        u = std::move(res.x);
        sol.residual = res.rel_residual;
        sol.iterations = res.iterations;
    }

    sol.u = GridField(p.box, p.res);
    for (std::size_t i = 0; i < n; ++i) sol.u.values[i] = u(i);
    return sol;
}

cdouble evaluate_exterior(const LsSolution& sol, const Vec3& x) {
    const double V = sol.u.voxel_volume();
    cdouble acc = plane_wave(sol.k, sol.alpha, x);
    for (std::size_t j = 0; j < sol.u.size(); ++j) {
        const cdouble s = sol.q.values[j] * sol.u.values[j];
        if (s == cdouble(0.0, 0.0)) continue;
        acc -= green_free(x, sol.u.center(j), sol.k) * s * V;
    }
    return acc;
}

double pde_residual(const GridField& u, const GridField& p, const WaveContext& ctx) {
    if (!u.conformal_with(p)) throw ValidationError("pde_residual: grids are not conformal");
    if (u.res[0] < 16 || u.res[1] < 16 || u.res[2] < 16)
        throw ValidationError("pde_residual: resolution must be >= 16 per axis");
    GridField q = p;
    if (ctx.q0) {
        if (!ctx.q0->conformal_with(p))
            throw ValidationError("pde_residual: background grid is not conformal");
        for (std::size_t i = 0; i < q.size(); ++i) q.values[i] += ctx.q0->values[i];
    }
    const Vec3 h = u.spacing();
    const double k2 = ctx.k * ctx.k;
    double umax = 0.0;
    for (const cdouble& v : u.values) umax = std::fmax(umax, std::abs(v));
    if (umax == 0.0) return 0.0;

    double worst = 0.0;
    for (int ix = 2; ix < u.res[0] - 2; ++ix)
        for (int iy = 2; iy < u.res[1] - 2; ++iy)
            for (int iz = 2; iz < u.res[2] - 2; ++iz) {
                const cdouble c = u.at(ix, iy, iz);
                const cdouble lap =
                    (u.at(ix + 1, iy, iz) - 2.0 * c + u.at(ix - 1, iy, iz)) / (h.x * h.x) +
                    (u.at(ix, iy + 1, iz) - 2.0 * c + u.at(ix, iy - 1, iz)) / (h.y * h.y) +
                    (u.at(ix, iy, iz + 1) - 2.0 * c + u.at(ix, iy, iz - 1)) / (h.z * h.z);
                const cdouble r = lap + k2 * c - q.at(ix, iy, iz) * c;
                worst = std::fmax(worst, std::abs(r));
            }
    return worst / umax;
}

EnergyBalance scattering_energy_balance(const LsSolution& sol, int sphere_order) {
    EnergyBalance e;
    const double V = sol.u.voxel_volume();
    // Far-field amplitude A(s) = -sum_j q_j u_j V e^{-ik s.x_j}.
    auto amplitude = [&](const Vec3& dir) {
        cdouble acc(0.0, 0.0);
        for (std::size_t j = 0; j < sol.u.size(); ++j) {
            const cdouble s = sol.q.values[j] * sol.u.values[j];
            if (s == cdouble(0.0, 0.0)) continue;
            acc -= s * V * std::polar(1.0, -sol.k * dot(dir, sol.u.center(j)));
        }
        return acc;
    };
    const SphereRule rule = sphere_rule(sphere_order);
    double power = 0.0;
    for (std::size_t i = 0; i < rule.w.size(); ++i) {
        const cdouble A = amplitude({rule.x[i], rule.y[i], rule.z[i]});
        power += rule.w[i] * std::norm(A);
    }
    e.scattered_power = sol.k / (16.0 * pi * pi) * power;
    e.extinction_term = amplitude(sol.alpha).imag();
    double absorb = 0.0;
    for (std::size_t j = 0; j < sol.u.size(); ++j)
        absorb += sol.q.values[j].imag() * std::norm(sol.u.values[j]) * V;
    e.absorption_volume = absorb;
    return e;
}

}  // namespace smallscat
