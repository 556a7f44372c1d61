#include "smallscat/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "smallscat/types.hpp"

namespace smallscat {

GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess for the i-th root of P_n.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Evaluate P_n(x) and P_n'(x) by the three-term recurrence.
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

SphereRule sphere_rule(int order) {
    if (order < 1) throw std::invalid_argument("sphere_rule: order must be >= 1");
    const GaussLegendre gl = gauss_legendre(order);
    const int nphi = 2 * order;
    SphereRule rule;
    const std::size_t npts = static_cast<std::size_t>(order) * nphi;
    rule.x.reserve(npts);
    rule.y.reserve(npts);
    rule.z.reserve(npts);
    rule.w.reserve(npts);
    for (int i = 0; i < order; ++i) {
        const double ct = gl.nodes[i];  // cos(theta)
        const double st = std::sqrt(std::fmax(0.0, 1.0 - ct * ct));
        const double wt = gl.weights[i] * (2.0 * pi / nphi);
        for (int j = 0; j < nphi; ++j) {
            const double phi = (2.0 * pi * (j + 0.5)) / nphi;
            rule.x.push_back(st * std::cos(phi));
            rule.y.push_back(st * std::sin(phi));
            rule.z.push_back(ct);
            rule.w.push_back(wt);
        }
    }
    return rule;
}

}  // namespace smallscat
