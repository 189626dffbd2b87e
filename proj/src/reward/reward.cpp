#include "goalctl/reward/reward.hpp"

#include <cmath>

namespace goalctl::reward {

Vec goal_residual(const RewardSpec& spec, const EnvModel& model, const Vec& x) {
    if (model.kind() == env::EnvKind::DoublePendulum) {
        Vec r(2);
        r(0) = 1.0 - std::cos(x(0));
        r(1) = 1.0 - std::cos(x(1));
        return r;
    }
    return x - spec.goal;
}

double stage_reward(const RewardSpec& spec, const Vec& x, const Vec& u, const Vec&,
                    const EnvModel& model) {
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Quadratic>) {
                const Vec r = goal_residual(spec, model, x);
                double cost = r.dot(v.M * r);
                if (v.R.size() > 0) cost += u.dot(v.R * u);
                return -0.5 * cost;
            } else if constexpr (std::is_same_v<T, GaussianShaped>) {
                const Vec r = goal_residual(spec, model, x);
                return std::exp(-0.5 * r.dot(v.M * r));
            } else if constexpr (std::is_same_v<T, Indicator>) {
                return goal_residual(spec, model, x).norm() < v.epsilon ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, GoalDensity>) {
                return std::exp(model.transition_logpdf(x, u, {}, spec.goal));
            } else {
                throw ConfigError(
                    "stage_reward: MeasurementConditioned needs a belief; use "
                    "measurement_conditioned_reward");
            }
        },
        spec.variant);
}

double measurement_conditioned_reward(const RewardSpec& spec, const ParticleBelief& b,
                                      const Vec& u, const Vec& y_next, const EnvModel& model,
                                      RandomStream& rng, ParticleBelief* posterior_out) {
    const auto* mc = std::get_if<MeasurementConditioned>(&spec.variant);
    if (mc == nullptr)
        throw ConfigError("measurement_conditioned_reward: spec variant mismatch");
    ParticleBelief post = belief::update(belief::predict(b, model, u, rng), model, y_next);
    const double r = belief::indicator_box_density(post, spec.goal, mc->epsilon, mc->goal_dims);
    if (posterior_out != nullptr) *posterior_out = std::move(post);
    return r;
}

double measurement_conditioned_reward(const RewardSpec& spec, const ParticleBelief& b,
                                      const Vec& u, const Vec& y_next, const EnvModel& model,
                                      RandomStream& rng) {
    return measurement_conditioned_reward(spec, b, u, y_next, model, rng, nullptr);
}

double time_near_goal(const Trajectory& traj, double goal_value, double sigma, int dim) {
    if (sigma <= 0.0) throw ConfigError("time_near_goal: sigma must be positive");
    double total = 0.0;
    for (const Vec& x : traj.states) {
        if (dim >= x.size()) throw ShapeMismatch("time_near_goal: state lacks the goal coordinate");
        const double d = goal_value - x(dim);
        total += std::exp(-d * d / (2.0 * sigma * sigma));
    }
    return total;
}

} // namespace goalctl::reward
