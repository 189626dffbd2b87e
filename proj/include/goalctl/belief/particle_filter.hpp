#pragma once

#include <functional>
#include <vector>

#include "goalctl/env/model.hpp"

namespace goalctl::belief {

using env::EnvModel;
using env::ScenarioParams;
using Vec = Eigen::VectorXd;

struct Particle {
    Vec state;
    ScenarioParams psi;
};

// Weighted particle set over (state, scenario) pairs; the computational form
// of the belief state. Immutable snapshot: operations return new beliefs.
class ParticleBelief {
public:
    ParticleBelief(std::vector<Particle> particles, Vec weights);

    const std::vector<Particle>& particles() const { return particles_; }
    const Vec& weights() const { return weights_; }
    double ess() const { return ess_; }
    int size() const { return static_cast<int>(particles_.size()); }

private:
    std::vector<Particle> particles_;
    Vec weights_; // nonnegative, sums to 1 within 1e-12
    double ess_;
};

// p independent draws of (state, psi) from the environment priors, uniform
// weights.
ParticleBelief init_from_prior(const EnvModel& model, int p, RandomStream& rng);

// Advances each particle through the transition model with its own psi;
// weights unchanged. Draws are indexed per particle so the result does not
// depend on iteration order.
ParticleBelief predict(const ParticleBelief& b, const EnvModel& model, const Vec& u,
                       RandomStream& rng);

// Bayes update: w_i <- w_i * p(y | x_i), renormalized in log space. Throws
// DegenerateWeights when every likelihood underflows (caller resets to prior).
ParticleBelief update(const ParticleBelief& b, const EnvModel& model, const Vec& y);

// Systematic (low-variance) resampling to uniform weights. Callers trigger it
// when ess < p/2.
ParticleBelief resample(const ParticleBelief& b, RandomStream& rng);

// sum_i w_i f(x_i)
Vec expectation(const ParticleBelief& b, const std::function<Vec(const Vec&)>& f);

Vec weighted_mean(const ParticleBelief& b);

// Weighted fraction of particles whose state lies within the eps-box around
// goal on the given dims, divided by the box volume (2 eps)^|dims|. Histogram
// estimate of the next-state density at the goal. Terms are summed in sorted
// order so the value is bit-identical under particle permutation.
double indicator_box_density(const ParticleBelief& b, const Vec& goal, double eps,
                             const std::vector<int>& dims);

// Deterministic permutation-invariant sum: sorts addends before accumulating.
double stable_sum(std::vector<double> terms);

} // namespace goalctl::belief
