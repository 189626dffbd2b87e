#include "goalctl/dpc/dpc.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace goalctl::dpc {

using nnopt::Mat;
using nnopt::Tape;
using nnopt::Var;
using Vec = Eigen::VectorXd;

namespace {

// feature scaling keeps tanh inputs in a sane range; angles enter as sin/cos
// so wrapping never matters
constexpr double kRateScale = 0.2; // 1 / (5 rad/s)
constexpr double kPosScale = 0.5;  // 1 / (2 m)

} // namespace

int policy_feature_dim() { return 8; }

Vec policy_features(const Vec& state) {
    Vec f(8);
    f(0) = std::sin(state(0));
    f(1) = std::cos(state(0));
    f(2) = std::sin(state(1));
    f(3) = std::cos(state(1));
    f(4) = kRateScale * state(2);
    f(5) = kRateScale * state(3);
    f(6) = kPosScale * state(4);
    f(7) = kRateScale * state(5);
    return f;
}

Vec policy_action(const nnopt::MLP& policy, const env::EnvModel& model, const Vec& state) {
    const double limit = model.pendulum_params().force_limit;
    Mat out = policy.forward(policy_features(state));
    return Vec::Constant(1, limit * std::tanh(out(0, 0)));
}

double objective_from_costs(ObjectiveKind kind, const std::vector<double>& costs) {
    const double t = static_cast<double>(costs.size());
    if (kind == ObjectiveKind::Classical) {
        double s = 0.0;
        for (double c : costs) s += c;
        return s / t;
    }
    double mean_r = 0.0;
    for (double c : costs) mean_r += std::exp(-c);
    mean_r /= t;
    return -std::log(mean_r);
}

double raw_objective_from_costs(ObjectiveKind kind, const std::vector<double>& costs) {
    if (kind == ObjectiveKind::Classical)
        return std::exp(-objective_from_costs(kind, costs));
    double mean_r = 0.0;
    for (double c : costs) mean_r += std::exp(-c);
    return std::log(mean_r / static_cast<double>(costs.size()));
}

RolloutLoss rollout_loss(const nnopt::MLP& policy, const env::EnvModel& model,
                         const DpcObjective& objective) {
    if (model.kind() != env::EnvKind::DoublePendulum)
        throw ConfigError("rollout_loss: the dpc trainer drives the double pendulum");
    if (objective.horizon < 1) throw ConfigError("rollout_loss: horizon must be >= 1");
    const auto& pp = model.pendulum_params();
    const int t_len = objective.horizon;

    RolloutLoss out;
    Tape& tape = out.tape;
    out.slots = nnopt::bind(tape, policy);

    // feature map as a constant linear op on [sin th; cos th; rates; cart]
    Mat feat_scale = Mat::Identity(8, 8);
    feat_scale(4, 4) = feat_scale(5, 5) = feat_scale(7, 7) = kRateScale;
    feat_scale(6, 6) = kPosScale;

    Vec x0 = Vec::Zero(6);
    x0(0) = std::numbers::pi;
    x0(1) = std::numbers::pi;

    Var x = tape.input(x0);
    std::vector<std::pair<double, Var>> reward_terms, cost_terms;
    out.rollout.states.push_back(x0);
    out.rollout.gamma = 0.99; // objectives below are undiscounted; metadata only

    double cos_sum = 0.0;
    for (int t = 0; t < t_len; ++t) {
        // features and squashed action
        Var th = tape.slice_rows(x, 0, 2);
        Var rest = tape.slice_rows(x, 2, 4);
        Var feats = tape.left_mul(
            feat_scale, tape.concat_rows({tape.sin(th), tape.cos(th), rest}));
        Var u_raw = nnopt::forward_on_tape(tape, out.slots, policy, feats);
        Var u = tape.scale(pp.force_limit, tape.tanh(u_raw));

        // exact dynamics step as one jacobian node
        Eigen::Matrix<double, 6, 1> xv = tape.value(x).col(0);
        Eigen::Matrix<double, 6, 1> xn;
        Eigen::Matrix<double, 6, 7> jac;
        dip_step_with_jacobian(pp, xv, tape.value(u)(0, 0), xn, jac);
        if (!xn.allFinite())
            throw NonFiniteState("rollout_loss: pendulum integration diverged");
        x = tape.jacobian_op({x, u}, xn, jac);

        out.rollout.states.push_back(Vec(xn));
        out.rollout.actions.push_back(Vec::Constant(1, tape.value(u)(0, 0)));
        cos_sum += 0.5 * (std::cos(xn(0)) + std::cos(xn(1)));

        // stage cost s_t = 0.5 ||1 - cos(theta)||^2 on the controlled state
        Var res = tape.add_const(tape.scale(-1.0, tape.cos(tape.slice_rows(x, 0, 2))),
                                 Mat::Ones(2, 1));
        Var s = tape.scale(0.5, tape.dot(res, res));
        if (objective.kind == ObjectiveKind::Classical)
            cost_terms.emplace_back(1.0 / t_len, s);
        else
            reward_terms.emplace_back(1.0 / t_len, tape.exp(tape.scale(-1.0, s)));
    }

    if (objective.kind == ObjectiveKind::Classical) {
        out.loss_var = tape.linear(cost_terms);
    } else {
        out.loss_var = tape.scale(-1.0, tape.log(tape.linear(reward_terms)));
    }

    out.loss = tape.value(out.loss_var)(0, 0);
    out.mean_cos = cos_sum / t_len;

    std::vector<double> costs;
    for (std::size_t t = 1; t < out.rollout.states.size(); ++t) {
        const Vec& s = out.rollout.states[t];
        const double r1 = 1.0 - std::cos(s(0)), r2 = 1.0 - std::cos(s(1));
        costs.push_back(0.5 * (r1 * r1 + r2 * r2));
    }
    out.raw_objective = raw_objective_from_costs(objective.kind, costs);
    return out;
}

DpcRun train_dpc(const DpcConfig& config, const env::EnvModel& model) {
    RandomStream init_rng = named_stream(config.seed, "net-init");
    std::vector<int> sizes{policy_feature_dim()};
    for (int h : config.hidden) sizes.push_back(h);
    sizes.push_back(1);

    DpcRun run;
    run.seed = config.seed;
    run.policy = nnopt::MLP::make(sizes, init_rng);

    nnopt::AdamConfig acfg;
    acfg.lr = config.lr;
    nnopt::AdamState adam(acfg);
    nnopt::SoapConfig scfg;
    scfg.adam = acfg;
    scfg.precondition_frequency = config.soap_frequency;
    scfg.factor_beta = config.soap_factor_beta;
    nnopt::SoapState soap(scfg);

    int consecutive_failures = 0;
    for (int it = 0; it < config.iterations; ++it) {
        try {
            RolloutLoss rl = rollout_loss(run.policy, model, config.objective);
            rl.tape.backward(rl.loss_var);
            auto grads = nnopt::collect_grads(rl.tape, rl.slots);
            if (config.optimizer == OptimizerKind::Soap)
                soap.step(run.policy, grads);
            else
                adam.step(run.policy, grads);
            run.curve.push_back({rl.loss, rl.raw_objective, rl.mean_cos});
            consecutive_failures = 0;
        } catch (const NonFiniteState&) {
            ++consecutive_failures;
            run.curve.push_back({std::numeric_limits<double>::quiet_NaN(),
                                 std::numeric_limits<double>::quiet_NaN(),
                                 std::numeric_limits<double>::quiet_NaN()});
            if (consecutive_failures >= 3) throw;
        }
    }

    RolloutLoss fin = rollout_loss(run.policy, model, config.objective);
    run.final_rollout = std::move(fin.rollout);
    return run;
}

double mean_cos_last(const Trajectory& traj, int k) {
    const int n = static_cast<int>(traj.states.size());
    const int start = std::max(0, n - k);
    double acc = 0.0;
    int cnt = 0;
    for (int t = start; t < n; ++t) {
        acc += 0.5 * (std::cos(traj.states[t](0)) + std::cos(traj.states[t](1)));
        ++cnt;
    }
    return cnt ? acc / cnt : 0.0;
}

} // namespace goalctl::dpc
