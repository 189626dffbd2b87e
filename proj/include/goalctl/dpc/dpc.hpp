#pragma once

#include <cstdint>
#include <vector>

#include "goalctl/core/trajectory.hpp"
#include "goalctl/env/model.hpp"
#include "goalctl/nnopt/mlp.hpp"
#include "goalctl/nnopt/optim.hpp"

namespace goalctl::dpc {

enum class ObjectiveKind { GoalOriented, Classical };
enum class OptimizerKind { Adam, Soap };

struct DpcObjective {
    ObjectiveKind kind = ObjectiveKind::GoalOriented;
    int horizon = 75;
};

struct DpcConfig {
    DpcObjective objective;
    OptimizerKind optimizer = OptimizerKind::Soap;
    double lr = 3e-3;
    int iterations = 2000;
    std::vector<int> hidden = {64, 64};
    long soap_frequency = 10;
    double soap_factor_beta = 0.95;
    std::uint64_t seed = 0;
};

struct DpcIterate {
    double loss;          // minimized value (log form / reduced exponent)
    double raw_objective; // the un-reduced objective value, for reporting
    double mean_cos;      // mean of cos(theta) over both links and all steps
};

struct DpcRun {
    nnopt::MLP policy;
    std::vector<DpcIterate> curve;
    Trajectory final_rollout;
    std::uint64_t seed = 0;
};

// Loss aggregation from per-step costs s_t = 0.5 * ||1 - cos(theta_t)||^2.
// GoalOriented: -log((1/T) sum exp(-s_t)). Classical: (1/T) sum s_t, the
// monotone exponent of the paper-form exp(-(1/T) sum s_t); optimizing the
// exponent directly avoids the vanishing-gradient degeneracy of the outer
// exp, which is exactly what the comparison is about. Both raw values are
// logged.
double objective_from_costs(ObjectiveKind kind, const std::vector<double>& costs);
double raw_objective_from_costs(ObjectiveKind kind, const std::vector<double>& costs);

struct RolloutLoss {
    double loss = 0.0;
    double raw_objective = 0.0;
    double mean_cos = 0.0;
    nnopt::Tape tape;
    nnopt::MlpSlots slots;
    nnopt::Var loss_var;
    Trajectory rollout; // states x_0..x_T, actions u_0..u_{T-1}
};

// Unrolls the deterministic pendulum under the policy for T steps from the
// hanging rest state, recording the full tape through the dynamics. The
// policy must not be mutated until the tape is consumed.
RolloutLoss rollout_loss(const nnopt::MLP& policy, const env::EnvModel& model,
                         const DpcObjective& objective);

// Policy input features from a pendulum state.
Eigen::VectorXd policy_features(const Eigen::VectorXd& state);
int policy_feature_dim();

// Deterministic policy action (squashed to the force limit).
Eigen::VectorXd policy_action(const nnopt::MLP& policy, const env::EnvModel& model,
                              const Eigen::VectorXd& state);

DpcRun train_dpc(const DpcConfig& config, const env::EnvModel& model);

// Mean of cos(theta) over both links for the last k steps of a rollout.
double mean_cos_last(const Trajectory& traj, int k);

} // namespace goalctl::dpc
