#pragma once

// Shared model builders for the test suites.

#include "goalctl/env/model.hpp"

namespace goalctl::testing {

using goalctl::env::EnvModel;
using goalctl::env::LinearGaussianParams;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Mildly unstable, fully observed 2D system with moderate noise.
inline EnvModel lg2d(double proc_std = 0.3, double meas_std = 0.5) {
    LinearGaussianParams p;
    p.A = (Mat(2, 2) << 0.95, 0.10, -0.05, 0.90).finished();
    p.B = (Mat(2, 1) << 0.0, 1.0).finished();
    p.sigma_w = proc_std * proc_std * Mat::Identity(2, 2);
    p.C = Mat::Identity(2, 2);
    p.sigma_v = meas_std * meas_std * Mat::Identity(2, 2);
    p.x0_mean = (Vec(2) << 1.0, -0.5).finished();
    p.x0_cov = Mat::Identity(2, 2);
    return EnvModel::linear_gaussian(p);
}

inline EnvModel lg_scalar(double a, double b, double proc_std, double meas_std,
                          double x0_mean = 0.0, double x0_std = 1.0) {
    LinearGaussianParams p;
    p.A = Mat::Constant(1, 1, a);
    p.B = Mat::Constant(1, 1, b);
    p.sigma_w = Mat::Constant(1, 1, proc_std * proc_std);
    p.C = Mat::Identity(1, 1);
    p.sigma_v = Mat::Constant(1, 1, meas_std * meas_std);
    p.x0_mean = Vec::Constant(1, x0_mean);
    p.x0_cov = Mat::Constant(1, 1, x0_std * x0_std);
    return EnvModel::linear_gaussian(p);
}

} // namespace goalctl::testing
