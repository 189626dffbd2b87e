#pragma once

#include <Eigen/Dense>

namespace goalctl::analysis {

using Mat = Eigen::MatrixXd;

struct DlqrResult {
    Mat gain;       // u = -K x
    Mat cost_to_go; // Riccati fixed point P
    int iterations = 0;
};

// Discounted discrete-time LQR via Riccati iteration to the given tolerance:
//   P <- Q + g A'PA - g^2 A'PB (R + g B'PB)^-1 B'PA,  K = g (R + g B'PB)^-1 B'PA.
// gamma = 1 recovers the undiscounted equation. Throws NonConvergence when
// (sqrt(g) A, sqrt(g) B) is not stabilizable within the iteration budget.
DlqrResult dlqr(const Mat& a, const Mat& b, const Mat& q, const Mat& r, double gamma,
                double tol = 1e-12, int max_iters = 1000000);

} // namespace goalctl::analysis
