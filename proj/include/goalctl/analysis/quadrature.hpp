#pragma once

#include <Eigen/Dense>

namespace goalctl::analysis {

// Gauss-Hermite rule rescaled for standard-normal expectations:
// E[f(Z)] ~= sum_k weights(k) * f(points(k)), weights summing to 1.
struct GaussHermite {
    Eigen::VectorXd points;
    Eigen::VectorXd weights;

    static GaussHermite make(int order);
};

} // namespace goalctl::analysis
