#pragma once

#include <vector>

#include "goalctl/env/model.hpp"

namespace goalctl::analysis {

using env::EnvModel;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct KalmanEstimate {
    Vec mean;
    Mat cov;
};

// Exact recursive Bayesian estimator for linear-Gaussian models; the oracle
// the particle filter is checked against.
//
// With observations y_0..y_T and actions u_0..u_{T-1}, returns the posterior
// (mean, cov) after each update, length T+1. With no observations, returns
// the open-loop predicted moments x_0..x_T following the
// A P A^T + sigma_w recursion, length actions+1.
std::vector<KalmanEstimate> kalman_filter(const EnvModel& model,
                                          const std::vector<Vec>& observations,
                                          const std::vector<Vec>& actions);

// Fixed point of the predict/update covariance recursion, iterated to tol.
Mat kalman_steady_state_cov(const EnvModel& model, double tol = 1e-12,
                            int max_iters = 100000);

} // namespace goalctl::analysis
