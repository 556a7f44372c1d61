#include "smallscat/manybody.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "smallscat/errors.hpp"
#include "smallscat/linalg.hpp"

namespace smallscat {

namespace {

std::vector<cdouble> couplings(const ParticleEnsemble& ens, CouplingMode mode) {
    std::vector<cdouble> g(ens.size());
    for (std::size_t m = 0; m < ens.size(); ++m) {
        if (mode == CouplingMode::unified) {
            g[m] = particle_coupling(ens, m);
        } else if (ens.kappa > 1.0) {
            g[m] = cdouble(four_pi * ens.a, 0.0);
        } else {
            g[m] = four_pi * ens.zeta[m] * ens.a * ens.a;
        }
    }
    return g;
}

// y = u + K u with (K u)_j = sum_{m != j} G(x_j, x_m) g_m u_m.
// Each row is a fixed-order sequential sum, so the result is deterministic
// for any thread count.
void apply_system(const ParticleEnsemble& ens, const std::vector<cdouble>& g, double k,
                  const Eigen::VectorXcd& u, Eigen::VectorXcd& y) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(ens.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        cdouble acc(0.0, 0.0);
        const Vec3 xj = ens.centers[j];
        for (std::ptrdiff_t m = 0; m < n; ++m) {
            if (m == j) continue;
            acc += green_free(xj, ens.centers[m], k) * g[m] * u(m);
        }
        y(j) = u(j) + acc;
    }
}

}  // namespace

EffectiveFieldSolution solve_effective_field(const ParticleEnsemble& ens, const WaveContext& ctx,
                                             const SolveOptions& opts) {
    if (!ctx.is_free_space())
        throw UnsupportedBackgroundError(
            "solve_effective_field: variable background requires the background Green function, "
            "which has no closed form");
    if (!(ens.kappa1 < 1.0))
        throw ValidationError(
            "solve_effective_field: kappa1 >= 1 is outside the monopole approximation's validity");
    if (!(opts.tol > 0.0)) throw ValidationError("solve_effective_field: tol must be positive");

    const std::size_t n = ens.size();
    EffectiveFieldSolution sol;
    if (opts.incident_override && opts.incident_override->size() != n)
        throw ValidationError("solve_effective_field: incident override has wrong length");

    Eigen::VectorXcd rhs(n);
    for (std::size_t j = 0; j < n; ++j)
        rhs(j) = opts.incident_override ? (*opts.incident_override)[j]
                                        : incident_field(ctx, ens.centers[j]);

    const std::vector<cdouble> g = couplings(ens, opts.coupling);

    SolverKind kind = opts.solver;
    if (kind == SolverKind::automatic)
        kind = n <= opts.dense_threshold ? SolverKind::dense : SolverKind::iterative;
    sol.solver_kind = kind;

    Eigen::VectorXcd u;
    if (n == 0) {
        sol.residual_norm = 0.0;
    } else if (kind == SolverKind::dense) {
        Eigen::MatrixXcd A(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t m = 0; m < n; ++m)
                A(j, m) = (m == j) ? cdouble(1.0, 0.0)
                                   : green_free(ens.centers[j], ens.centers[m], ctx.k) * g[m];
        }
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
        u = lu.solve(rhs);
        const double rel = (A * u - rhs).norm() / rhs.norm();
        sol.residual_norm = rel;
        sol.iterations = 0;
        if (!(rel <= std::fmax(opts.tol, 1e-8))) {
            const double rcond = lu.rcond();
            std::ostringstream msg;
            msg << "solve_effective_field: dense solve residual " << rel
                << " exceeds tolerance; reciprocal condition estimate " << rcond;
            throw SolverError(msg.str());
        }
    } else {
        auto apply = [&](const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
            apply_system(ens, g, ctx.k, x, y);
        };
        GmresResult res = gmres(apply, rhs, opts.tol, opts.max_iterations);
        if (!res.converged) {
            std::ostringstream msg;
            msg << "solve_effective_field: GMRES stalled at relative residual "
                << res.rel_residual << " after " << res.iterations << " iterations";
            throw SolverError(msg.str());
        }
        u = std::move(res.x);
        sol.residual_norm = res.rel_residual;
        sol.iterations = res.iterations;
    }

    sol.u_at_centers.resize(n);
    sol.charges.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        sol.u_at_centers[m] = n ? u(m) : cdouble();
        sol.charges[m] = -g[m] * sol.u_at_centers[m];
    }
    return sol;
}

double min_distance_to_particles(const ParticleEnsemble& ens, const Vec3& x) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& c : ens.centers) best = std::fmin(best, norm(x - c));
    return best;
}

cdouble evaluate_field(const EffectiveFieldSolution& sol, const ParticleEnsemble& ens,
                       const WaveContext& ctx, const Vec3& x, double guard_multiple) {
    const double guard = guard_multiple * ens.a;
    cdouble acc = incident_field(ctx, x);
    for (std::size_t m = 0; m < ens.size(); ++m) {
        const double r = norm(x - ens.centers[m]);
        if (r < guard) {
            std::ostringstream msg;
            msg << "evaluate_field: point is inside the near-field guard zone of particle " << m
                << " (distance " << r << " < " << guard << ")";
            throw NearFieldError(msg.str());
        }
        acc += green_free(x, ens.centers[m], ctx.k) * sol.charges[m];
    }
    return acc;
}

double validity_ratio(const ParticleEnsemble& ens) {
    return std::pow(ens.a, 1.0 - ens.kappa1);
}

cdouble far_field_amplitude(const EffectiveFieldSolution& sol, const ParticleEnsemble& ens,
                            double k, const Vec3& dir) {
    cdouble acc(0.0, 0.0);
    for (std::size_t m = 0; m < ens.size(); ++m)
        acc += sol.charges[m] * std::polar(1.0, -k * dot(dir, ens.centers[m]));
    return acc;
}

double system_residual(const EffectiveFieldSolution& sol, const ParticleEnsemble& ens,
                       const WaveContext& ctx, CouplingMode coupling) {
    const std::size_t n = ens.size();
    if (n == 0) return 0.0;
    const std::vector<cdouble> g = couplings(ens, coupling);
    Eigen::VectorXcd u(n), y(n);
    for (std::size_t m = 0; m < n; ++m) u(m) = sol.u_at_centers[m];
    apply_system(ens, g, ctx.k, u, y);
    double worst = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const cdouble rhs = incident_field(ctx, ens.centers[j]);
        worst = std::fmax(worst, std::abs(y(j) - rhs));
        scale = std::fmax(scale, std::abs(rhs));
    }
    return worst / std::fmax(scale, 1e-300);
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_solution(const EffectiveFieldSolution& sol, const ParticleEnsemble& ens,
                    const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("write_solution: cannot open " + path);
    out << "smallscat-solution-v1\n";
    out << "particles " << sol.u_at_centers.size() << '\n';
    out << "a " << fmt(ens.a) << '\n';
    out << "kappa " << fmt(ens.kappa) << '\n';
    out << "kappa1 " << fmt(ens.kappa1) << '\n';
    out << "residual " << fmt(sol.residual_norm) << '\n';
    out << "iterations " << sol.iterations << '\n';
    out << "solver " << (sol.solver_kind == SolverKind::dense ? "dense" : "iterative") << '\n';
    for (std::size_t m = 0; m < sol.u_at_centers.size(); ++m)
        out << m << ' ' << fmt(sol.u_at_centers[m].real()) << ' '
            << fmt(sol.u_at_centers[m].imag()) << ' ' << fmt(sol.charges[m].real()) << ' '
            << fmt(sol.charges[m].imag()) << '\n';
    if (!out) throw IoError("write_solution: write failed for " + path);
}

EffectiveFieldSolution read_solution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("read_solution: cannot open " + path);
    std::string magic;
    std::getline(in, magic);
    if (magic != "smallscat-solution-v1") throw IoError("read_solution: bad magic in " + path);
    EffectiveFieldSolution sol;
    std::string key, solver;
    std::size_t n = 0;
    double a = 0.0, kappa = 0.0, kappa1 = 0.0;
    in >> key >> n >> key >> a >> key >> kappa >> key >> kappa1;
    in >> key >> sol.residual_norm >> key >> sol.iterations >> key >> solver;
    sol.solver_kind = solver == "dense" ? SolverKind::dense : SolverKind::iterative;
    sol.u_at_centers.resize(n);
    sol.charges.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t idx;
        double ur, ui, qr, qi;
        in >> idx >> ur >> ui >> qr >> qi;
        sol.u_at_centers[i] = {ur, ui};
        sol.charges[i] = {qr, qi};
    }
    if (!in) throw IoError("read_solution: truncated file " + path);
    return sol;
}

}  // namespace smallscat
