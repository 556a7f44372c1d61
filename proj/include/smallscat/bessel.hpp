#pragma once

#include <vector>

#include "smallscat/types.hpp"

namespace smallscat {

// Spherical Bessel/Hankel function tables for l = 0..lmax at a real argument,
// plus derivatives via f_l' = f_{l-1} - (l+1)/x f_l. Backed by the C++17
// special functions; accurate for the x <= O(10), lmax <= O(40) range the
// solvers use.
struct SphericalBesselTable {
    std::vector<double> j, jp;    // j_l(x), j_l'(x)
    std::vector<double> y, yp;    // y_l(x), y_l'(x)
    std::vector<cdouble> h, hp;   // h1_l = j + i y and derivative
};

SphericalBesselTable spherical_bessel_table(int lmax, double x);

/// Legendre polynomials P_0..P_lmax at u in [-1, 1].
std::vector<double> legendre_table(int lmax, double u);

}  // namespace smallscat
