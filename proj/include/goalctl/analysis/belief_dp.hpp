#pragma once

#include "goalctl/analysis/grid_dp.hpp"

namespace goalctl::analysis {

// Where the stage reward sits in the belief Bellman operator. The two
// placements agree after the observation expectation (law of total
// expectation), which is exactly what the tower-property check verifies.
enum class RewardPlacement {
    PriorReward,           // r(b,u) = density of x' at the goal given (b,u)
    ObservationConditioned // r = E_{y'}[ density of x' at goal given (b,u,y') ]
};

struct BeliefGridResult {
    Vec means;    // belief-mean axis
    Vec log_vars; // log-variance axis
    Mat value;    // V(mean_i, logvar_j), rows = means
    int iterations = 0;

    double value_at(double mean, double log_var) const;
};

// Value iteration over exact Gaussian beliefs (mean, variance) of a scalar
// linear-Gaussian model. Observation expectations use Gauss-Hermite
// quadrature; off-grid posteriors interpolate bilinearly in (mean, log var).
// Rewards: GoalDensity evaluates the next-state density at the goal
// (marginalized over the belief); GaussianShaped acts on the predicted belief
// mean (certainty-equivalent shaping).
BeliefGridResult belief_grid_value_iteration(const EnvModel& model,
                                             const reward::RewardSpec& spec, double gamma,
                                             const GridSpec& mean_grid,
                                             const GridSpec& logvar_grid,
                                             const GridSpec& action_grid,
                                             RewardPlacement placement, int quad_order = 32,
                                             double tol = 1e-8, int max_iters = 20000);

} // namespace goalctl::analysis
