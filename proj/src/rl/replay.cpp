#include "goalctl/rl/replay.hpp"

namespace goalctl::rl {

void ReplayBuffer::push(BeliefTransition t) {
    if (data_.size() < capacity_) {
        data_.push_back(std::move(t));
    } else {
        data_[head_] = std::move(t);
        head_ = (head_ + 1) % capacity_;
    }
}

const BeliefTransition& ReplayBuffer::at(std::size_t i) const {
    if (i >= data_.size()) throw ConfigError("ReplayBuffer: index out of range");
    return data_[(head_ + i) % data_.size()];
}

std::vector<const BeliefTransition*> ReplayBuffer::sample(std::size_t n,
                                                          RandomStream& rng) const {
    if (data_.empty()) throw ConfigError("ReplayBuffer: cannot sample from an empty buffer");
    std::vector<const BeliefTransition*> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        out.push_back(&data_[rng.uniform_index(data_.size())]);
    return out;
}

} // namespace goalctl::rl
