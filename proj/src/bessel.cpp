#include "smallscat/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace smallscat {

SphericalBesselTable spherical_bessel_table(int lmax, double x) {
    if (lmax < 0) throw std::invalid_argument("spherical_bessel_table: lmax must be >= 0");
    if (!(x > 0.0)) throw std::invalid_argument("spherical_bessel_table: x must be > 0");
    SphericalBesselTable t;
    const int n = lmax + 1;
    t.j.resize(n);
    t.jp.resize(n);
    t.y.resize(n);
    t.yp.resize(n);
    t.h.resize(n);
    t.hp.resize(n);
    for (int l = 0; l <= lmax; ++l) {
        t.j[l] = std::sph_bessel(static_cast<unsigned>(l), x);
        t.y[l] = std::sph_neumann(static_cast<unsigned>(l), x);
    }
    // f_0' = -f_1; f_l' = f_{l-1} - (l+1)/x f_l for l >= 1.
    t.jp[0] = -(lmax >= 1 ? t.j[1] : std::sph_bessel(1u, x));
    t.yp[0] = -(lmax >= 1 ? t.y[1] : std::sph_neumann(1u, x));
    for (int l = 1; l <= lmax; ++l) {
        t.jp[l] = t.j[l - 1] - (l + 1.0) / x * t.j[l];
        t.yp[l] = t.y[l - 1] - (l + 1.0) / x * t.y[l];
    }
    for (int l = 0; l <= lmax; ++l) {
        t.h[l] = cdouble(t.j[l], t.y[l]);
        t.hp[l] = cdouble(t.jp[l], t.yp[l]);
    }
    return t;
}

std::vector<double> legendre_table(int lmax, double u) {
    if (lmax < 0) throw std::invalid_argument("legendre_table: lmax must be >= 0");
    std::vector<double> p(lmax + 1);
    p[0] = 1.0;
    if (lmax >= 1) p[1] = u;
    for (int l = 2; l <= lmax; ++l)
        p[l] = ((2.0 * l - 1.0) * u * p[l - 1] - (l - 1.0) * p[l - 2]) / l;
    return p;
}

}  // namespace smallscat
