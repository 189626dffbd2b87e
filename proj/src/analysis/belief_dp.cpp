#include "goalctl/analysis/belief_dp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "goalctl/analysis/quadrature.hpp"

namespace goalctl::analysis {

namespace {

double gaussian_pdf(double x, double mean, double var) {
    const double d = x - mean;
    return std::exp(-0.5 * d * d / var) / std::sqrt(2.0 * std::numbers::pi * var);
}

struct AxisStencil {
    int cell;
    double frac;
};

AxisStencil locate(double lo, double step, int n, double x) {
    double pos = (x - lo) / step;
    pos = std::clamp(pos, 0.0, static_cast<double>(n - 1));
    const int cell = std::min(n - 2, static_cast<int>(pos));
    return {cell, pos - cell};
}

} // namespace

double BeliefGridResult::value_at(double mean, double log_var) const {
    const int nx = static_cast<int>(means.size()), nv = static_cast<int>(log_vars.size());
    const auto sx = locate(means(0), (means(nx - 1) - means(0)) / (nx - 1), nx, mean);
    const auto sv =
        locate(log_vars(0), (log_vars(nv - 1) - log_vars(0)) / (nv - 1), nv, log_var);
    const double v00 = value(sx.cell, sv.cell), v10 = value(sx.cell + 1, sv.cell);
    const double v01 = value(sx.cell, sv.cell + 1), v11 = value(sx.cell + 1, sv.cell + 1);
    return (1 - sx.frac) * ((1 - sv.frac) * v00 + sv.frac * v01)
         + sx.frac * ((1 - sv.frac) * v10 + sv.frac * v11);
}

BeliefGridResult belief_grid_value_iteration(const EnvModel& model,
                                             const reward::RewardSpec& spec, double gamma,
                                             const GridSpec& mean_grid,
                                             const GridSpec& logvar_grid,
                                             const GridSpec& action_grid,
                                             RewardPlacement placement, int quad_order,
                                             double tol, int max_iters) {
    const auto& p = model.lg();
    if (p.A.rows() != 1 || p.B.cols() != 1 || p.C.rows() != 1)
        throw ConfigError("belief_grid_value_iteration: needs a scalar model");
    if (!(gamma >= 0.0 && gamma < 1.0))
        throw ConfigError("belief_grid_value_iteration: gamma must lie in [0,1)");
    const double a = p.A(0, 0), b = p.B(0, 0), c = p.C(0, 0);
    const double var_w = p.sigma_w(0, 0), var_v = p.sigma_v(0, 0);
    const double goal = spec.goal.size() > 0 ? spec.goal(0) : 0.0;

    const auto* density = std::get_if<reward::GoalDensity>(&spec.variant);
    const auto* shaped = std::get_if<reward::GaussianShaped>(&spec.variant);
    if (density == nullptr && shaped == nullptr)
        throw ConfigError(
            "belief_grid_value_iteration: supports GoalDensity and GaussianShaped rewards");
    const double shaped_m = shaped != nullptr ? shaped->M(0, 0) : 0.0;
    auto stage = [&](double mean, double var) {
        if (density != nullptr) return gaussian_pdf(goal, mean, var);
        const double d = mean - goal;
        return std::exp(-0.5 * shaped_m * d * d);
    };

    const Vec mus = mean_grid.axis();
    const Vec lvs = logvar_grid.axis();
    const Vec us = action_grid.axis();
    const int nx = mean_grid.points, nv = logvar_grid.points, nu = action_grid.points;
    const GaussHermite gh = GaussHermite::make(quad_order);
    const int nq = quad_order;

    const double mu_step = (mean_grid.hi - mean_grid.lo) / (nx - 1);
    const double lv_step = (logvar_grid.hi - logvar_grid.lo) / (nv - 1);

    // per-variance-row quantities; the posterior variance does not depend on
    // the action or the observation
    Vec pred_var(nv), post_var(nv), spread(nv);
    std::vector<AxisStencil> row(nv);
    for (int j = 0; j < nv; ++j) {
        const double v = std::exp(lvs(j));
        const double s = a * a * v + var_w;
        const double innov = c * c * s + var_v;
        const double gain = s * c / innov;
        pred_var(j) = s;
        post_var(j) = std::max(s - gain * c * s, 1e-300);
        spread(j) = gain * std::sqrt(innov);
        row[j] = locate(logvar_grid.lo, lv_step, nv, std::log(post_var(j)));
    }

    // The observation-conditioned stage reward integrates a Gaussian whose
    // width can be much narrower than the node spacing of the V-expectation
    // rule, so it gets its own high-order rule, precomputed once per
    // (mean, variance-row, action).
    Mat reward_table(static_cast<Eigen::Index>(nx) * nv, nu);
    if (placement == RewardPlacement::PriorReward) {
        for (int j = 0; j < nv; ++j)
            for (int i = 0; i < nx; ++i)
                for (int k = 0; k < nu; ++k)
                    reward_table(static_cast<Eigen::Index>(j) * nx + i, k) =
                        stage(a * mus(i) + b * us(k), pred_var(j));
    } else {
        const GaussHermite fine = GaussHermite::make(512);
        for (int j = 0; j < nv; ++j)
            for (int i = 0; i < nx; ++i)
                for (int k = 0; k < nu; ++k) {
                    const double m_pred = a * mus(i) + b * us(k);
                    double r = 0.0;
                    for (int q = 0; q < 512; ++q)
                        r += fine.weights(q)
                           * stage(m_pred + spread(j) * fine.points(q), post_var(j));
                    reward_table(static_cast<Eigen::Index>(j) * nx + i, k) = r;
                }
    }

    Mat value = Mat::Zero(nx, nv);
    Mat next(nx, nv);
    int iterations = 0;
    for (int it = 1; it <= max_iters; ++it) {
        for (int j = 0; j < nv; ++j) {
            const double vrow_frac = row[j].frac;
            const int jlo = row[j].cell;
            for (int i = 0; i < nx; ++i) {
                double best = -std::numeric_limits<double>::infinity();
                for (int k = 0; k < nu; ++k) {
                    const double m_pred = a * mus(i) + b * us(k);
                    double ev = 0.0;
                    for (int q = 0; q < nq; ++q) {
                        const double m_post = m_pred + spread(j) * gh.points(q);
                        const auto sx = locate(mean_grid.lo, mu_step, nx, m_post);
                        const double v00 = value(sx.cell, jlo), v10 = value(sx.cell + 1, jlo);
                        const double v01 = value(sx.cell, jlo + 1),
                                     v11 = value(sx.cell + 1, jlo + 1);
                        ev += gh.weights(q)
                            * ((1 - sx.frac) * ((1 - vrow_frac) * v00 + vrow_frac * v01)
                               + sx.frac * ((1 - vrow_frac) * v10 + vrow_frac * v11));
                    }
                    const double cand =
                        reward_table(static_cast<Eigen::Index>(j) * nx + i, k) + gamma * ev;
                    best = std::max(best, cand);
                }
                next(i, j) = best;
            }
        }
        const double delta = (next - value).cwiseAbs().maxCoeff();
        value = next;
        iterations = it;
        if (delta < tol) {
            BeliefGridResult out;
            out.means = mus;
            out.log_vars = lvs;
            out.value = value;
            out.iterations = iterations;
            return out;
        }
    }
    throw NonConvergence("belief_grid_value_iteration: sup-norm tolerance not reached");
}

} // namespace goalctl::analysis
