#include "goalctl/analysis/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "goalctl/core/errors.hpp"

namespace goalctl::analysis {

GaussHermite GaussHermite::make(int order) {
    if (order < 1) throw ConfigError("GaussHermite: order must be >= 1");
    // Golub-Welsch on the physicists' Hermite Jacobi matrix
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        const double beta = std::sqrt(0.5 * k);
        jacobi(k, k - 1) = beta;
        jacobi(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    if (es.info() != Eigen::Success) throw NonConvergence("GaussHermite: eigensolver failed");

    GaussHermite gh;
    gh.points = std::numbers::sqrt2 * es.eigenvalues();
    gh.weights.resize(order);
    for (int k = 0; k < order; ++k) {
        const double v0 = es.eigenvectors()(0, k);
        gh.weights(k) = v0 * v0;
    }
    gh.weights /= gh.weights.sum();
    return gh;
}

} // namespace goalctl::analysis
