#include "goalctl/analysis/objectives.hpp"

#include <cmath>
#include <limits>

namespace goalctl::analysis {

TrajectoryScores score_trajectory(const Trajectory& traj) {
    traj.require_valid();
    double quad_sum = 0.0, goal_sum = 0.0, g = 1.0;
    for (const Vec& x : traj.states) {
        const double q = x.squaredNorm();
        quad_sum += g * q;
        goal_sum += g * std::exp(-0.5 * q);
        g *= traj.gamma;
    }
    return {std::exp(-0.5 * quad_sum), goal_sum};
}

JensenCheck jensen_check(const std::vector<double>& densities, double gamma) {
    if (densities.empty()) throw ConfigError("jensen_check: empty density sequence");
    double norm = 0.0, g = 1.0;
    for (std::size_t t = 0; t < densities.size(); ++t) {
        norm += g;
        g *= gamma;
    }
    double lhs = 0.0, rhs_arg = 0.0;
    g = 1.0;
    for (double p : densities) {
        const double lambda = g / norm;
        lhs += lambda * std::log(p);
        rhs_arg += lambda * p;
        g *= gamma;
    }
    JensenCheck out;
    out.lhs = lhs;
    out.rhs = std::log(rhs_arg);
    out.slack = out.rhs - out.lhs;
    out.holds = out.slack >= -1e-12;
    return out;
}

namespace {

struct MonteCarloPair {
    std::vector<double> lhs_terms, rhs_terms;
    double min_slack = std::numeric_limits<double>::infinity();
};

struct MeanStderr {
    double mean, se;
};

MeanStderr mean_stderr(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    double m = 0.0;
    for (double x : v) m += x;
    m /= n;
    if (v.size() < 2) return {m, 0.0};
    double s2 = 0.0;
    for (double x : v) s2 += (x - m) * (x - m);
    s2 /= (n - 1.0);
    return {m, std::sqrt(s2 / n)};
}

} // namespace

BoundReport verify_prob_bound(const Policy& policy, const EnvModel& model, double gamma,
                              int rollouts, int truncation, RandomStream& rng) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ConfigError("verify_prob_bound: gamma must lie strictly in (0,1)");
    const double r_max = model.transition_density_bound();
    const Vec goal = Vec::Zero(model.state_dim());

    MonteCarloPair mc;
    for (int n = 0; n < rollouts; ++n) {
        RandomStream ep = rng.child(n);
        auto [x, psi] = model.sample_initial(ep);
        double s_log = 0.0, s_p = 0.0, g = 1.0;
        std::vector<double> densities;
        densities.reserve(truncation);
        for (int t = 0; t < truncation; ++t) {
            const Vec u = model.clamp_action(policy(x));
            const double logp = model.transition_logpdf(x, u, psi, goal);
            s_log += g * logp;
            s_p += g * std::exp(logp);
            densities.push_back(std::exp(logp));
            g *= gamma;
            x = model.transition(x, u, psi, ep);
        }
        mc.lhs_terms.push_back(s_log);
        mc.rhs_terms.push_back(s_p);
        mc.min_slack = std::min(mc.min_slack, jensen_check(densities, gamma).slack);
    }

    const auto lhs = mean_stderr(mc.lhs_terms);
    const auto rhs = mean_stderr(mc.rhs_terms);

    BoundReport rep;
    rep.samples = rollouts;
    rep.truncation = truncation;
    rep.density_bound = r_max;
    rep.lhs = (1.0 - gamma) * lhs.mean;
    rep.lhs_stderr = (1.0 - gamma) * lhs.se;
    const double rhs_arg = (1.0 - gamma) * rhs.mean;
    rep.rhs = std::log(rhs_arg);
    rep.rhs_stderr = rhs_arg > 0.0 ? (1.0 - gamma) * rhs.se / rhs_arg : 0.0;
    rep.tail_tolerance =
        std::pow(gamma, truncation) * (r_max + std::abs(std::log(r_max)) + 1.0);
    rep.min_trajectory_slack = mc.min_slack;
    rep.gap = rep.rhs - rep.lhs;
    // 1e-12 absolute slack absorbs double-precision accumulation over the
    // truncated sums
    rep.holds = rep.lhs <= rep.rhs + 3.0 * (rep.lhs_stderr + rep.rhs_stderr)
                               + rep.tail_tolerance + 1e-12;
    return rep;
}

BoundReport verify_prob_bound_trajectory(const std::vector<double>& densities, double gamma) {
    const JensenCheck jc = jensen_check(densities, gamma);
    BoundReport rep;
    rep.samples = 1;
    rep.truncation = static_cast<int>(densities.size());
    rep.lhs = jc.lhs;
    rep.rhs = jc.rhs;
    rep.min_trajectory_slack = jc.slack;
    rep.gap = jc.slack;
    rep.holds = jc.holds;
    return rep;
}

BoundReport verify_lqr_bound(const Policy& policy, const EnvModel& model, const Mat& m,
                             const Mat& r, double gamma, int rollouts, int truncation,
                             RandomStream& rng) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ConfigError("verify_lqr_bound: gamma must lie strictly in (0,1)");

    MonteCarloPair mc;
    for (int n = 0; n < rollouts; ++n) {
        RandomStream ep = rng.child(n);
        auto [x, psi] = model.sample_initial(ep);
        double s_cost = 0.0, s_r = 0.0, g = 1.0;
        std::vector<double> rewards;
        rewards.reserve(truncation);
        for (int t = 0; t < truncation; ++t) {
            const Vec u = model.clamp_action(policy(x));
            const double xmx = x.dot(m * x);
            s_cost += g * (xmx + u.dot(r * u));
            const double shaped = std::exp(-0.5 * xmx);
            s_r += g * shaped;
            rewards.push_back(shaped);
            g *= gamma;
            x = model.transition(x, u, psi, ep);
        }
        mc.lhs_terms.push_back(s_cost);
        mc.rhs_terms.push_back(s_r);
        mc.min_slack = std::min(mc.min_slack, jensen_check(rewards, gamma).slack);
    }

    const auto lhs = mean_stderr(mc.lhs_terms);
    const auto rhs = mean_stderr(mc.rhs_terms);

    BoundReport rep;
    rep.samples = rollouts;
    rep.truncation = truncation;
    rep.density_bound = 1.0; // exp(-x'Mx/2) <= 1
    rep.lhs = -0.5 * (1.0 - gamma) * lhs.mean;
    rep.lhs_stderr = 0.5 * (1.0 - gamma) * lhs.se;
    const double rhs_arg = (1.0 - gamma) * rhs.mean;
    rep.rhs = std::log(rhs_arg);
    rep.rhs_stderr = rhs_arg > 0.0 ? (1.0 - gamma) * rhs.se / rhs_arg : 0.0;
    rep.tail_tolerance = std::pow(gamma, truncation) * 2.0;
    rep.min_trajectory_slack = mc.min_slack;
    rep.gap = rep.rhs - rep.lhs;
    rep.holds = rep.lhs <= rep.rhs + 3.0 * (rep.lhs_stderr + rep.rhs_stderr)
                               + rep.tail_tolerance + 1e-12;
    return rep;
}

Estimate policy_eval_goal_objective(const Policy& policy, const EnvModel& model,
                                    const reward::RewardSpec& spec, double gamma,
                                    int rollouts, int truncation, RandomStream& rng) {
    std::vector<double> totals;
    totals.reserve(rollouts);
    for (int n = 0; n < rollouts; ++n) {
        RandomStream ep = rng.child(n);
        auto [x, psi] = model.sample_initial(ep);
        double j = 0.0, g = 1.0;
        for (int t = 0; t < truncation; ++t) {
            const Vec u = model.clamp_action(policy(x));
            const Vec x_next = model.transition(x, u, psi, ep);
            j += g * reward::stage_reward(spec, x, u, x_next, model);
            g *= gamma;
            x = x_next;
        }
        totals.push_back(j);
    }
    const auto ms = mean_stderr(totals);

    double r_max = std::numeric_limits<double>::infinity();
    if (std::holds_alternative<reward::GaussianShaped>(spec.variant) ||
        std::holds_alternative<reward::Indicator>(spec.variant))
        r_max = 1.0;
    else if (std::holds_alternative<reward::GoalDensity>(spec.variant))
        r_max = model.transition_density_bound();

    Estimate est;
    est.value = ms.mean;
    est.std_error = ms.se;
    est.samples = rollouts;
    est.tail_bound = std::isfinite(r_max)
                         ? std::pow(gamma, truncation) * r_max / (1.0 - gamma)
                         : std::numeric_limits<double>::infinity();
    return est;
}

Estimate policy_eval_difference(const Policy& a, const Policy& b, const EnvModel& model,
                                const reward::RewardSpec& spec, double gamma, int rollouts,
                                int truncation, RandomStream& rng) {
    std::vector<double> diffs;
    diffs.reserve(rollouts);
    for (int n = 0; n < rollouts; ++n) {
        double j[2];
        for (int side = 0; side < 2; ++side) {
            RandomStream ep = rng.child(n); // common random numbers
            auto [x, psi] = model.sample_initial(ep);
            double total = 0.0, g = 1.0;
            const Policy& pol = side == 0 ? a : b;
            for (int t = 0; t < truncation; ++t) {
                const Vec u = model.clamp_action(pol(x));
                const Vec x_next = model.transition(x, u, psi, ep);
                total += g * reward::stage_reward(spec, x, u, x_next, model);
                g *= gamma;
                x = x_next;
            }
            j[side] = total;
        }
        diffs.push_back(j[0] - j[1]);
    }
    const auto ms = mean_stderr(diffs);
    Estimate est;
    est.value = ms.mean;
    est.std_error = ms.se;
    est.samples = rollouts;
    return est;
}

} // namespace goalctl::analysis
