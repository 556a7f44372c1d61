#pragma once

#include <functional>

#include "smallscat/types.hpp"

namespace smallscat {

using ImpedanceFn = std::function<cdouble(const Vec3&)>;  // h(x), Im h <= 0
using DensityFn = std::function<double(const Vec3&)>;     // N(x) >= 0

/// Scaling family of particle configurations: boundary impedance
/// zeta(x) = h(x) / a^kappa and neighbor spacing d = O(a^kappa1), with
/// number density weight N(x).
struct ScalingLaw {
    double kappa = 1.0;
    double kappa1 = 1.0 / 3.0;
    double a = 0.01;
    ImpedanceFn h;
    DensityFn N;

    /// Scalar-parameter checks (kappa > -1, kappa1 >= 0, a > 0, h and N set).
    /// Pointwise passivity (Im h <= 0, N >= 0) is checked where the functions
    /// are actually sampled by consumers.
    void validate() const;

    cdouble zeta_at(const Vec3& x) const;  // h(x) / a^kappa
};

enum class RegimeCase { case1, theorem1, case2, unsupported };

/// Which effective-potential formula applies in the homogenized limit.
enum class PotentialLaw {
    h_times_n,        // p = 4 pi h N        (kappa < 1)
    h_over_1ph,       // p = 4 pi N h/(1+h)  (kappa = 1)
    n_only,           // p = 4 pi N          (kappa > 1)
    none,
};

struct RegimeReport {
    RegimeCase case_label = RegimeCase::unsupported;
    bool limit_exists = false;
    double matched_kappa1 = 0.0;       // the kappa1 a homogenized limit requires
    bool approximation_valid = false;  // kappa1 < 1: monopole reduction trustworthy
    double volume_fraction_exponent = 0.0;  // 3 - 3*kappa1
    PotentialLaw potential_law = PotentialLaw::none;
};

const char* to_string(RegimeCase c);

/// Total classifier: Case 1 (kappa < 1, limit iff kappa1 = (2-kappa)/3),
/// Theorem-1 medium (kappa = 1, limit iff kappa1 = 1/3), Case 2 (kappa > 1,
/// limit iff kappa1 = 1/3). kappa1 >= 1 is reported unsupported: no rigorous
/// theory covers spacing of the order of the particle size.
/// Exponent matches use a 1e-12 tolerance.
RegimeReport classify_regime(const ScalingLaw& law);

// Canonical charge algebra in terms of zeta = h/a^kappa. All call paths share
// these expressions so the exact identities (Q = 4 pi a^2 sigma, Q = -g u_e)
// hold bitwise.
cdouble surface_density_from_zeta(cdouble zeta, double a, cdouble u_e);
cdouble monopole_coupling_from_zeta(cdouble zeta, double a);  // g, with Q = -g u_e

/// Asymptotic surface density sigma_m = -h u_e a^{-kappa} / (1 + h a^{1-kappa}).
cdouble surface_density(const ScalingLaw& law, const Vec3& x_m, cdouble u_e_at_xm);

/// Monopole charge Q_m = -4 pi h a^{2-kappa} u_e / (1 + h a^{1-kappa})
/// = 4 pi a^2 sigma_m. The O(a^3) Laplacian correction is dropped; it is
/// subdominant in every covered regime.
cdouble monopole_charge(const ScalingLaw& law, const Vec3& x_m, cdouble u_e_at_xm);

/// Effective potential p(x) of the limiting medium (requires limit_exists).
cdouble effective_potential(const ScalingLaw& law, const Vec3& x);

/// Total particle volume scale a^{3 - 3*kappa1}.
double volume_fraction(const ScalingLaw& law);

}  // namespace smallscat
