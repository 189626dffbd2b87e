#pragma once

#include <vector>

#include "goalctl/belief/particle_filter.hpp"

namespace goalctl::rl {

using belief::ParticleBelief;
using Vec = Eigen::VectorXd;

struct BeliefTransition {
    ParticleBelief b;
    Vec action;
    double reward = 0.0;
    ParticleBelief b_next;
    Vec y_next;
    bool done = false;
};

// FIFO ring buffer with uniform sampling. Every stored transition stays
// retrievable (oldest first) until capacity evicts it.
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
        if (capacity_ == 0) throw ConfigError("ReplayBuffer: capacity must be positive");
    }

    void push(BeliefTransition t);
    std::size_t size() const { return data_.size(); }
    std::size_t capacity() const { return capacity_; }

    // index 0 = oldest live transition
    const BeliefTransition& at(std::size_t i) const;

    std::vector<const BeliefTransition*> sample(std::size_t n, RandomStream& rng) const;

private:
    std::size_t capacity_;
    std::size_t head_ = 0; // slot of the oldest element once full
    std::vector<BeliefTransition> data_;
};

} // namespace goalctl::rl
