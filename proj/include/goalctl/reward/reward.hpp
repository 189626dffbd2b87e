#pragma once

#include <variant>
#include <vector>

#include "goalctl/belief/particle_filter.hpp"
#include "goalctl/core/trajectory.hpp"
#include "goalctl/env/model.hpp"

namespace goalctl::reward {

using belief::ParticleBelief;
using env::EnvModel;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Stage-reward variants. Quadratic is stored as a negative cost so that every
// variant is maximized under one sign convention.
struct Quadratic {
    Mat M, R;
};
struct GaussianShaped {
    Mat M;
};
struct GoalDensity {};
struct Indicator {
    double epsilon = 0.05;
};
struct MeasurementConditioned {
    double epsilon = 0.05;
    std::vector<int> goal_dims;
};

struct RewardSpec {
    std::variant<Quadratic, GaussianShaped, GoalDensity, Indicator, MeasurementConditioned> variant;
    Vec goal;
};

// Goal residual the quadratic/Gaussian/indicator variants act on: x - goal,
// except the double pendulum, where the component-wise criterion is
// [1 - cos(theta1), 1 - cos(theta2)].
Vec goal_residual(const RewardSpec& spec, const EnvModel& model, const Vec& x);

// Fully observed stage reward r(x, u). GoalDensity evaluates the transition
// density at the goal and needs a model with a closed-form density.
double stage_reward(const RewardSpec& spec, const Vec& x, const Vec& u, const Vec& x_next,
                    const EnvModel& model);

// Measurement-conditioned dual-control reward: propagates the belief through
// predict(u), applies the Bayes update with y_next, then returns the
// histogram density estimate at the goal. The likelihood weighting realizes
// the probing factor p(y'|b,u) implicitly through the update. rng drives the
// per-particle process noise of the predict step.
double measurement_conditioned_reward(const RewardSpec& spec, const ParticleBelief& b,
                                      const Vec& u, const Vec& y_next, const EnvModel& model,
                                      RandomStream& rng);

// Same, but also returns the propagated posterior so closed-loop code can
// reuse it as the next belief instead of filtering twice.
double measurement_conditioned_reward(const RewardSpec& spec, const ParticleBelief& b,
                                      const Vec& u, const Vec& y_next, const EnvModel& model,
                                      RandomStream& rng, ParticleBelief* posterior_out);

// sum_t exp(-(goal_value - x_t[dim])^2 / (2 sigma^2)) over true states.
double time_near_goal(const Trajectory& traj, double goal_value, double sigma, int dim);

} // namespace goalctl::reward
