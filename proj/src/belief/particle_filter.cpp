#include "goalctl/belief/particle_filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace goalctl::belief {

ParticleBelief::ParticleBelief(std::vector<Particle> particles, Vec weights)
    : particles_(std::move(particles)), weights_(std::move(weights)) {
    if (particles_.empty()) throw ConfigError("ParticleBelief: particle count must be >= 1");
    if (weights_.size() != static_cast<Eigen::Index>(particles_.size()))
        throw ShapeMismatch("ParticleBelief: weights/particles length mismatch");
    if (weights_.minCoeff() < 0.0) throw ConfigError("ParticleBelief: negative weight");
    const double sum = weights_.sum();
    if (std::abs(sum - 1.0) > 1e-12) {
        if (sum <= 0.0 || !std::isfinite(sum))
            throw DegenerateWeights("ParticleBelief: weight sum is zero or non-finite");
        weights_ /= sum;
    }
    ess_ = 1.0 / weights_.squaredNorm();
}

ParticleBelief init_from_prior(const EnvModel& model, int p, RandomStream& rng) {
    if (p < 1) throw ConfigError("init_from_prior: particle count must be >= 1");
    // one parent draw per operation, then per-particle child streams: fresh
    // randomness each call, independent of particle iteration order
    RandomStream base(rng.next_u64());
    std::vector<Particle> particles(p);
    for (int i = 0; i < p; ++i) {
        RandomStream sub = base.child(static_cast<std::uint64_t>(i));
        auto [x, psi] = model.sample_initial(sub);
        particles[i] = Particle{std::move(x), psi};
    }
    return ParticleBelief(std::move(particles), Vec::Constant(p, 1.0 / p));
}

ParticleBelief predict(const ParticleBelief& b, const EnvModel& model, const Vec& u,
                       RandomStream& rng) {
    RandomStream base(rng.next_u64());
    std::vector<Particle> next(b.size());
    for (int i = 0; i < b.size(); ++i) {
        RandomStream sub = base.child(static_cast<std::uint64_t>(i));
        const Particle& pi = b.particles()[i];
        next[i] = Particle{model.transition(pi.state, u, pi.psi, sub), pi.psi};
    }
    return ParticleBelief(std::move(next), b.weights());
}

ParticleBelief update(const ParticleBelief& b, const EnvModel& model, const Vec& y) {
    if (!y.allFinite()) throw ShapeMismatch("update: observation must be finite");
    const int p = b.size();
    Vec logw(p);
    for (int i = 0; i < p; ++i) {
        const double prior = b.weights()(i);
        logw(i) = (prior > 0.0 ? std::log(prior) : -std::numeric_limits<double>::infinity())
                  + model.measurement_logpdf(b.particles()[i].state, y);
    }
    const double m = logw.maxCoeff();
    if (!std::isfinite(m))
        throw DegenerateWeights("update: all measurement likelihoods underflowed");
    Vec w = (logw.array() - m).exp();
    const double sum = w.sum();
    if (!(sum > 0.0) || !std::isfinite(sum))
        throw DegenerateWeights("update: all measurement likelihoods underflowed");
    return ParticleBelief(b.particles(), w / sum);
}

ParticleBelief resample(const ParticleBelief& b, RandomStream& rng) {
    const int p = b.size();
    const double u0 = rng.uniform() / p;
    std::vector<Particle> next;
    next.reserve(p);
    double cum = b.weights()(0);
    int j = 0;
    for (int k = 0; k < p; ++k) {
        const double point = u0 + static_cast<double>(k) / p;
        while (point > cum && j + 1 < p) cum += b.weights()(++j);
        next.push_back(b.particles()[j]);
    }
    return ParticleBelief(std::move(next), Vec::Constant(p, 1.0 / p));
}

Vec expectation(const ParticleBelief& b, const std::function<Vec(const Vec&)>& f) {
    Vec acc;
    for (int i = 0; i < b.size(); ++i) {
        Vec v = f(b.particles()[i].state);
        if (i == 0)
            acc = b.weights()(i) * v;
        else
            acc += b.weights()(i) * v;
    }
    return acc;
}

Vec weighted_mean(const ParticleBelief& b) {
    return expectation(b, [](const Vec& x) { return x; });
}

double stable_sum(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end());
    double acc = 0.0;
    for (double t : terms) acc += t;
    return acc;
}

double indicator_box_density(const ParticleBelief& b, const Vec& goal, double eps,
                             const std::vector<int>& dims) {
    if (eps <= 0.0) throw ConfigError("indicator_box_density: eps must be positive");
    std::vector<double> hits;
    hits.reserve(b.size());
    for (int i = 0; i < b.size(); ++i) {
        bool inside = true;
        for (int d : dims)
            if (std::abs(b.particles()[i].state(d) - goal(d)) >= eps) {
                inside = false;
                break;
            }
        if (inside) hits.push_back(b.weights()(i));
    }
    const double volume = std::pow(2.0 * eps, static_cast<double>(dims.size()));
    return stable_sum(std::move(hits)) / volume;
}

} // namespace goalctl::belief
