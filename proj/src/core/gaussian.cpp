#include "goalctl/core/gaussian.hpp"

#include <cmath>
#include <numbers>

namespace goalctl {

GaussianDensity::GaussianDensity(const Eigen::MatrixXd& cov) {
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        valid_ = false;
        return;
    }
    chol_ = llt.matrixL();
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < chol_.rows(); ++i) logdet += 2.0 * std::log(chol_(i, i));
    if (!std::isfinite(logdet)) {
        valid_ = false;
        return;
    }
    log_norm_ = -0.5 * static_cast<double>(cov.rows()) * std::log(2.0 * std::numbers::pi)
                - 0.5 * logdet;
    valid_ = true;
}

double GaussianDensity::logpdf(const Eigen::VectorXd& residual) const {
    const Eigen::VectorXd z = chol_.triangularView<Eigen::Lower>().solve(residual);
    return log_norm_ - 0.5 * z.squaredNorm();
}

Eigen::VectorXd GaussianDensity::sample(RandomStream& rng) const {
    return chol_ * rng.normal_vector(chol_.rows());
}

} // namespace goalctl
