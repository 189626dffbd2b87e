#pragma once

#include <functional>
#include <vector>

#include "goalctl/core/trajectory.hpp"
#include "goalctl/env/model.hpp"
#include "goalctl/reward/reward.hpp"

namespace goalctl::analysis {

using env::EnvModel;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

using Policy = std::function<Vec(const Vec&)>;

struct TrajectoryScores {
    double classical;     // exp(-(1/2) sum_t gamma^t ||x_t||^2)
    double goal_oriented; // sum_t gamma^t exp(-(1/2) ||x_t||^2)
};

// Both motivating objectives evaluated on the same trajectory (goal at the
// origin; shift states beforehand for other goals).
TrajectoryScores score_trajectory(const Trajectory& traj);

// Per-trajectory Jensen form with the exact convex weights
// lambda_t = gamma^t / sum_k gamma^k over the trajectory length:
//   sum lambda_t log p_t <= log sum lambda_t p_t,
// with equality iff all p_t are equal.
struct JensenCheck {
    double lhs, rhs, slack; // slack = rhs - lhs
    bool holds;
};
JensenCheck jensen_check(const std::vector<double>& densities, double gamma);

// Two-sided Monte-Carlo estimate of a bound with its acceptance verdict.
struct BoundReport {
    double lhs = 0.0, rhs = 0.0;
    double lhs_stderr = 0.0, rhs_stderr = 0.0;
    int samples = 0;
    int truncation = 0;
    double density_bound = 0.0;  // r_max of the bounded-density hypothesis
    double tail_tolerance = 0.0; // truncation slack folded into the verdict
    double min_trajectory_slack = 0.0;
    bool holds = false;
    double gap = 0.0; // rhs - lhs
};

// Theorem-style log-probability bound:
//   (1-g) E[sum g^t log p_t] <= log((1-g) E[sum g^t p_t]),
// p_t the transition density at the origin. Also records the worst
// per-trajectory Jensen slack across the sampled rollouts.
BoundReport verify_prob_bound(const Policy& policy, const EnvModel& model, double gamma,
                              int rollouts, int truncation, RandomStream& rng);

// Deterministic single-trajectory mode over an explicit density sequence.
BoundReport verify_prob_bound_trajectory(const std::vector<double>& densities, double gamma);

// Quadratic-vs-Gaussian-shaped bound:
//   -((1-g)/2) E[sum g^t (x'Mx + u'Ru)] <= log((1-g) E[sum g^t exp(-x'Mx/2)]).
BoundReport verify_lqr_bound(const Policy& policy, const EnvModel& model, const Mat& m,
                             const Mat& r, double gamma, int rollouts, int truncation,
                             RandomStream& rng);

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    int samples = 0;
    double tail_bound = 0.0; // gamma^T r_max / (1-gamma); infinite if unbounded
};

// Monte-Carlo J(pi) = E[sum_{t<T} gamma^t r_t] under the given stage reward.
Estimate policy_eval_goal_objective(const Policy& policy, const EnvModel& model,
                                    const reward::RewardSpec& spec, double gamma,
                                    int rollouts, int truncation, RandomStream& rng);

// Paired-difference estimate of J(a) - J(b) with common random numbers.
Estimate policy_eval_difference(const Policy& a, const Policy& b, const EnvModel& model,
                                const reward::RewardSpec& spec, double gamma, int rollouts,
                                int truncation, RandomStream& rng);

} // namespace goalctl::analysis
