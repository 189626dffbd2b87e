#pragma once

#include <stdexcept>
#include <string>

namespace goalctl {

// Transition density requested for a model kind that has none (deterministic
// dynamics). Callers fall back to particle/histogram estimators.
struct DensityUnavailable : std::runtime_error {
    explicit DensityUnavailable(const std::string& what) : std::runtime_error(what) {}
};

// Integration produced non-finite state entries (dt or force too large).
struct NonFiniteState : std::runtime_error {
    explicit NonFiniteState(const std::string& what) : std::runtime_error(what) {}
};

// All particle likelihoods underflowed to zero; the filter has diverged and
// the caller should reset the belief to the prior.
struct DegenerateWeights : std::runtime_error {
    explicit DegenerateWeights(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct SingularInnovation : std::runtime_error {
    explicit SingularInnovation(const std::string& what) : std::runtime_error(what) {}
};

struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct SchemaMismatch : std::runtime_error {
    explicit SchemaMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace goalctl
