#pragma once

#include "goalctl/analysis/objectives.hpp"
#include "goalctl/env/model.hpp"
#include "goalctl/reward/reward.hpp"

namespace goalctl::analysis {

struct GridSpec {
    double lo = -5.0, hi = 5.0;
    int points = 201;

    Vec axis() const { return Vec::LinSpaced(points, lo, hi); }
};

struct GridDpResult {
    Vec states;        // grid axis
    Vec value;         // V*(x_i)
    Vec greedy_action; // argmax over the action grid
    int iterations = 0;

    // piecewise-linear interpolant, clamped at the grid edges
    double value_at(double x) const;
    double action_at(double x) const;
    Policy greedy_policy() const;
};

// Exact desk-scale solver for scalar linear-Gaussian models: value iteration
// on a state grid with Gauss-Hermite process-noise expectations, greedy
// policy by grid search over actions.
GridDpResult grid_value_iteration(const EnvModel& model, const reward::RewardSpec& spec,
                                  double gamma, const GridSpec& state_grid,
                                  const GridSpec& action_grid, int quad_order = 16,
                                  double tol = 1e-8, int max_iters = 20000);

} // namespace goalctl::analysis
