#pragma once

#include <optional>

#include "goalctl/core/trajectory.hpp"
#include "goalctl/nnopt/optim.hpp"
#include "goalctl/reward/reward.hpp"
#include "goalctl/rl/replay.hpp"

namespace goalctl::rl {

using env::EnvModel;
using nnopt::MLP;
using Mat = Eigen::MatrixXd;

enum class Regime { Full, Partial, Minimal };

struct SacConfig {
    std::vector<int> hidden = {64, 64};
    double gamma = 0.99;
    double lr = 3e-4;
    double polyak = 0.995;
    int batch_size = 128;
    std::size_t buffer_capacity = 100000;
    bool twin_critics = true;   // single-critic mode exists for the literal
                                // particle-critic mean test
    bool auto_entropy = true;
    double init_alpha = 0.1;
    double log_std_min = -5.0, log_std_max = 2.0;
};

// Actor network emits [pre-squash mean; log-std] per action dimension;
// actions live in the environment bounds via tanh squashing. Critics consume
// (normalized state, normalized action) pairs. Observation normalization is
// plain affine standardization fixed at construction.
struct AgentBundle {
    MLP actor;
    MLP critic1, critic2;
    MLP target1, target2;
    double log_alpha = 0.0;
    bool twin = true;

    Vec obs_shift, obs_scale; // x_norm = (x - shift) / scale
    Vec u_mid, u_half;        // u = mid + half * tanh(z)

    int action_dim() const { return static_cast<int>(u_mid.size()); }
    Mat normalize_states(const Mat& states) const;
    Vec normalize_action(const Vec& u) const;
};

AgentBundle make_agent(const EnvModel& model, const SacConfig& cfg, RandomStream& rng);

// Weighted mean over particles of the (clipped double) critic at (x_i, u).
// Terms are accumulated in sorted order, so the value is bit-identical under
// particle permutation.
double particle_critic(const AgentBundle& agent, const ParticleBelief& b, const Vec& u);

// Weighted mean over particles of the deterministic actor action, clipped to
// bounds.
Vec particle_actor(const AgentBundle& agent, const ParticleBelief& b);

// Stochastic belief-level action for training: particle-averaged pre-squash
// mean and log-std, tanh-squashed reparameterized sample.
struct SampledAction {
    Vec action;
    double log_prob = 0.0;
};
SampledAction sample_action(const AgentBundle& agent, const ParticleBelief& b,
                            RandomStream& rng);

struct SacDiagnostics {
    double critic_loss = 0.0;
    double actor_objective = 0.0;
    double alpha = 0.0;
    double mean_target = 0.0;
};

// One SAC gradient step: critic regression toward the bootstrapped
// belief-critic target, actor ascent on the particle critic minus entropy,
// Polyak target update, temperature update toward -action_dim entropy.
struct SacOptimizers {
    nnopt::AdamState actor, critic1, critic2, alpha;
};

SacDiagnostics sac_update(AgentBundle& agent, SacOptimizers& opt,
                          const std::vector<const BeliefTransition*>& batch,
                          const SacConfig& cfg, RandomStream& rng);

struct EpisodeOptions {
    Regime regime = Regime::Full;
    int steps = 100;
    int particles = 8;
    bool explore = false;    // sample actions (training) vs deterministic mean
    bool eval_truth = false; // Partial: time-varying true scenario
    int psi_resample_period = 25;
};

struct EpisodeResult {
    Trajectory trajectory; // true states, actions, rewards
    std::vector<BeliefTransition> transitions;
    int filter_resets = 0; // DegenerateWeights events (belief reset to prior)
    std::vector<double> estimated_rewards; // belief-side reward trace
    std::vector<double> estimate_mean_cb, particle_min_cb, particle_max_cb;
};

EpisodeResult run_episode(const AgentBundle& agent, const EnvModel& model,
                          const reward::RewardSpec& spec, const EpisodeOptions& opts,
                          RandomStream& env_rng, RandomStream& filter_rng,
                          RandomStream& explore_rng);

} // namespace goalctl::rl
