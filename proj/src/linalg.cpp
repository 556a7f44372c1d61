#include "smallscat/linalg.hpp"

#include <cmath>

namespace smallscat {

using Eigen::VectorXcd;
using cplx = std::complex<double>;

GmresResult gmres(const std::function<void(const VectorXcd&, VectorXcd&)>& apply,
                  const VectorXcd& b, double tol, int max_iterations, int restart) {
    GmresResult res;
    const Eigen::Index n = b.size();
    res.x = VectorXcd::Zero(n);
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        res.converged = true;
        return res;
    }

    VectorXcd r(n), w(n);
    int total_iters = 0;
    while (total_iters < max_iterations) {
        apply(res.x, w);
        r = b - w;
        double beta = r.norm();
        res.rel_residual = beta / bnorm;
        res.residual_history.push_back(res.rel_residual);
        if (res.rel_residual <= tol) {
            res.converged = true;
            res.iterations = total_iters;
            return res;
        }

        const int m = std::min(restart, max_iterations - total_iters);
        std::vector<VectorXcd> V;
        V.reserve(m + 1);
        V.push_back(r / beta);
        Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
        std::vector<cplx> cs(m), sn(m);
        VectorXcd g = VectorXcd::Zero(m + 1);
        g(0) = beta;

        int j = 0;
        for (; j < m; ++j) {
            apply(V[j], w);
            for (int i = 0; i <= j; ++i) {
                H(i, j) = V[i].dot(w);  // conjugated dot
                w -= H(i, j) * V[i];
            }
            H(j + 1, j) = w.norm();
            if (std::abs(H(j + 1, j)) > 0.0) V.push_back(w / H(j + 1, j));

            // Apply the accumulated Givens rotations to the new column.
            for (int i = 0; i < j; ++i) {
                const cplx t = std::conj(cs[i]) * H(i, j) + std::conj(sn[i]) * H(i + 1, j);
                H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
                H(i, j) = t;
            }
            const double denom =
                std::sqrt(std::norm(H(j, j)) + std::norm(H(j + 1, j)));
            if (denom == 0.0) {
                cs[j] = 1.0;
                sn[j] = 0.0;
            } else {
                cs[j] = H(j, j) / denom;
                sn[j] = H(j + 1, j) / denom;
            }
            H(j, j) = std::conj(cs[j]) * H(j, j) + std::conj(sn[j]) * H(j + 1, j);
            H(j + 1, j) = 0.0;
            g(j + 1) = -sn[j] * g(j);
            g(j) = std::conj(cs[j]) * g(j);

            ++total_iters;
            res.rel_residual = std::abs(g(j + 1)) / bnorm;
            res.residual_history.push_back(res.rel_residual);
            if (res.rel_residual <= tol || std::abs(H(j, j)) == 0.0 ||
                static_cast<int>(V.size()) == j + 1) {
                ++j;
                break;
            }
        }

        // Back-substitution for the least-squares coefficients.
        VectorXcd ycoef = VectorXcd::Zero(j);
        for (int i = j - 1; i >= 0; --i) {
            cplx s = g(i);
            for (int l = i + 1; l < j; ++l) s -= H(i, l) * ycoef(l);
            ycoef(i) = s / H(i, i);
        }
        for (int i = 0; i < j; ++i) res.x += ycoef(i) * V[i];

        if (res.rel_residual <= tol) {
            res.converged = true;
            res.iterations = total_iters;
            // Recompute the true residual for reporting.
            apply(res.x, w);
            res.rel_residual = (b - w).norm() / bnorm;
            return res;
        }
    }
    res.iterations = total_iters;
    apply(res.x, w);
    res.rel_residual = (b - w).norm() / bnorm;
    res.converged = res.rel_residual <= tol;
    return res;
}

}  // namespace smallscat
