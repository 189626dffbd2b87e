#pragma once

#include <Eigen/Dense>

#include "goalctl/core/random.hpp"

namespace goalctl {

// Cached Cholesky factorization of an SPD covariance, for repeated logpdf
// evaluation and sampling.
class GaussianDensity {
public:
    GaussianDensity() = default;
    explicit GaussianDensity(const Eigen::MatrixXd& cov);

    bool valid() const { return valid_; }
    Eigen::Index dim() const { return chol_.rows(); }

    double logpdf(const Eigen::VectorXd& residual) const;
    double max_logpdf() const { return log_norm_; } // attained at zero residual
    Eigen::VectorXd sample(RandomStream& rng) const;

private:
    Eigen::MatrixXd chol_;  // lower factor L, cov = L L^T
    double log_norm_ = 0.0; // -(n/2) log(2 pi) - (1/2) log det
    bool valid_ = false;
};

} // namespace goalctl
