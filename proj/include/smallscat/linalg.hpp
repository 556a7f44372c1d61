#pragma once

#include <Eigen/Dense>
#include <functional>

namespace smallscat {

struct GmresResult {
    Eigen::VectorXcd x;
    double rel_residual = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> residual_history;
};

/// Restarted GMRES with modified Gram-Schmidt and Givens rotations.
/// `apply` computes y = A x; convergence is ||b - Ax|| <= tol * ||b||.
/// Deterministic: no randomized starts, fixed reduction order.
GmresResult gmres(const std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>& apply,
                  const Eigen::VectorXcd& b, double tol, int max_iterations, int restart = 200);

}  // namespace smallscat
