#include "goalctl/analysis/kalman.hpp"

namespace goalctl::analysis {

namespace {

KalmanEstimate measurement_update(const env::LinearGaussianParams& p, const KalmanEstimate& prior,
                                  const Vec& y) {
    const Mat s = p.C * prior.cov * p.C.transpose() + p.sigma_v;
    Eigen::LLT<Mat> llt(s);
    if (llt.info() != Eigen::Success)
        throw SingularInnovation("kalman_filter: innovation covariance is singular");
    const Mat gain = llt.solve(p.C * prior.cov).transpose();
    KalmanEstimate post;
    post.mean = prior.mean + gain * (y - p.C * prior.mean);
    post.cov = prior.cov - gain * p.C * prior.cov;
    return post;
}

} // namespace

std::vector<KalmanEstimate> kalman_filter(const EnvModel& model,
                                          const std::vector<Vec>& observations,
                                          const std::vector<Vec>& actions) {
    const auto& p = model.lg();
    KalmanEstimate est{p.x0_mean, p.x0_cov};

    std::vector<KalmanEstimate> out;
    if (observations.empty()) {
        out.push_back(est);
        for (const Vec& u : actions) {
            est.mean = p.A * est.mean + p.B * u;
            est.cov = p.A * est.cov * p.A.transpose() + p.sigma_w;
            out.push_back(est);
        }
        return out;
    }

    if (actions.size() + 1 != observations.size())
        throw ShapeMismatch("kalman_filter: need one more observation than actions");

    est = measurement_update(p, est, observations[0]);
    out.push_back(est);
    for (std::size_t t = 0; t < actions.size(); ++t) {
        est.mean = p.A * est.mean + p.B * actions[t];
        est.cov = p.A * est.cov * p.A.transpose() + p.sigma_w;
        est = measurement_update(p, est, observations[t + 1]);
        out.push_back(est);
    }
    return out;
}

Mat kalman_steady_state_cov(const EnvModel& model, double tol, int max_iters) {
    const auto& p = model.lg();
    Mat cov = p.x0_cov;
    for (int i = 0; i < max_iters; ++i) {
        Mat pred = p.A * cov * p.A.transpose() + p.sigma_w;
        const Mat s = p.C * pred * p.C.transpose() + p.sigma_v;
        Eigen::LLT<Mat> llt(s);
        if (llt.info() != Eigen::Success)
            throw SingularInnovation("kalman_steady_state_cov: singular innovation");
        const Mat gain = llt.solve(p.C * pred).transpose();
        Mat next = pred - gain * p.C * pred;
        if ((next - cov).cwiseAbs().maxCoeff() < tol) return next;
        cov = std::move(next);
    }
    throw NonConvergence("kalman_steady_state_cov: no fixed point within iteration budget");
}

} // namespace goalctl::analysis
