#pragma once

#include <vector>

namespace smallscat {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n), n >= 1.
GaussLegendre gauss_legendre(int n);

/// Product rule on the unit sphere: Gauss-Legendre in cos(theta) x uniform in phi.
/// 2*order^2 points; weights sum to 4*pi.
struct SphereRule {
    std::vector<double> x, y, z;  // unit directions
    std::vector<double> w;
};

SphereRule sphere_rule(int order);

}  // namespace smallscat
