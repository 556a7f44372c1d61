#include "smallscat/scaling.hpp"

#include <cmath>

#include "smallscat/errors.hpp"

namespace smallscat {

namespace {
constexpr double exponent_tol = 1e-12;
}

void ScalingLaw::validate() const {
    if (!(kappa > -1.0)) throw ValidationError("ScalingLaw: kappa must be > -1");
    if (!(kappa1 >= 0.0)) throw ValidationError("ScalingLaw: kappa1 must be >= 0");
    if (!(a > 0.0)) throw ValidationError("ScalingLaw: a must be > 0");
    if (!h) throw ValidationError("ScalingLaw: impedance function h is not set");
    if (!N) throw ValidationError("ScalingLaw: density function N is not set");
}

cdouble ScalingLaw::zeta_at(const Vec3& x) const {
    return h(x) / std::pow(a, kappa);
}

const char* to_string(RegimeCase c) {
    switch (c) {
        case RegimeCase::case1: return "Case1";
        case RegimeCase::theorem1: return "Theorem1";
        case RegimeCase::case2: return "Case2";
        default: return "Unsupported";
    }
}

RegimeReport classify_regime(const ScalingLaw& law) {
    law.validate();
    RegimeReport r;
    r.approximation_valid = law.kappa1 < 1.0;
    r.volume_fraction_exponent = 3.0 - 3.0 * law.kappa1;
    if (!r.approximation_valid) {
        // Includes the kappa = -1, kappa1 = 1 remark case: not proven exact.
        r.case_label = RegimeCase::unsupported;
        return r;
    }
    if (law.kappa < 1.0 - exponent_tol) {
        r.case_label = RegimeCase::case1;
        r.matched_kappa1 = (2.0 - law.kappa) / 3.0;
        r.potential_law = PotentialLaw::h_times_n;
    } else if (law.kappa <= 1.0 + exponent_tol) {
        r.case_label = RegimeCase::theorem1;
        r.matched_kappa1 = 1.0 / 3.0;
        r.potential_law = PotentialLaw::h_over_1ph;
    } else {
        r.case_label = RegimeCase::case2;
        r.matched_kappa1 = 1.0 / 3.0;
        r.potential_law = PotentialLaw::n_only;
    }
    r.limit_exists = std::abs(law.kappa1 - r.matched_kappa1) <= exponent_tol;
    if (!r.limit_exists) r.potential_law = PotentialLaw::none;
    return r;
}

cdouble surface_density_from_zeta(cdouble zeta, double a, cdouble u_e) {
    const cdouble denom = 1.0 + zeta * a;
    if (std::abs(denom) < 1e-12 * std::fmax(1.0, std::abs(zeta * a)))
        throw ResonanceError("surface_density: 1 + zeta*a vanishes");
    return -zeta * u_e / denom;
}

cdouble monopole_coupling_from_zeta(cdouble zeta, double a) {
    return -four_pi * a * a * surface_density_from_zeta(zeta, a, cdouble(1.0, 0.0));
}

cdouble surface_density(const ScalingLaw& law, const Vec3& x_m, cdouble u_e_at_xm) {
    return surface_density_from_zeta(law.zeta_at(x_m), law.a, u_e_at_xm);
}

cdouble monopole_charge(const ScalingLaw& law, const Vec3& x_m, cdouble u_e_at_xm) {
    return four_pi * law.a * law.a * surface_density(law, x_m, u_e_at_xm);
}

cdouble effective_potential(const ScalingLaw& law, const Vec3& x) {
    const RegimeReport r = classify_regime(law);
    if (!r.limit_exists)
        throw ValidationError("effective_potential: no homogenized limit for this (kappa, kappa1)");
    switch (r.potential_law) {
        case PotentialLaw::h_times_n:
            return four_pi * law.h(x) * law.N(x);
        case PotentialLaw::h_over_1ph: {
            const cdouble hx = law.h(x);
            if (std::abs(1.0 + hx) < 1e-12 * std::fmax(1.0, std::abs(hx)))
                throw ResonanceError("effective_potential: h(x) = -1 makes p singular");
            return four_pi * law.N(x) * hx / (1.0 + hx);
        }
        case PotentialLaw::n_only:
            return cdouble(four_pi * law.N(x), 0.0);
        default:
            throw ValidationError("effective_potential: unsupported regime");
    }
}

double volume_fraction(const ScalingLaw& law) {
    law.validate();
    return std::pow(law.a, 3.0 - 3.0 * law.kappa1);
}

}  // namespace smallscat
