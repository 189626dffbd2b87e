#pragma once

#include <vector>

#include <Eigen/Dense>

#include "goalctl/core/errors.hpp"

namespace goalctl {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Time-indexed rollout record. states has length T (or T+1 when the final
// state is kept); actions/rewards have length T; observations are optional.
// rewards holds the per-step goal reward p(x_{t+1} = goal | x_t, u_t) or the
// configured surrogate.
struct Trajectory {
    std::vector<Vec> states;
    std::vector<Vec> actions;
    std::vector<Vec> observations;
    std::vector<double> rewards;
    double gamma = 0.99;

    int length() const { return static_cast<int>(actions.size()); }

    void require_valid() const {
        if (!(gamma > 0.0 && gamma < 1.0))
            throw ConfigError("Trajectory: gamma must lie strictly in (0,1)");
        if (!rewards.empty() && rewards.size() != actions.size())
            throw ShapeMismatch("Trajectory: rewards/actions length mismatch");
    }
};

} // namespace goalctl
