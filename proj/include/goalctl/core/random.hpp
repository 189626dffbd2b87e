#pragma once

#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

namespace goalctl {

// Deterministic random stream. Uniform draws come from xoshiro-style splitmix
// mixing of a 64-bit counter; normals use Box-Muller on those uniforms, so the
// same seed produces bit-identical sequences on every platform and standard
// library. std::normal_distribution is implementation-defined and would break
// the byte-identical-rerun requirement.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();

    // Uniform on [0, 1).
    double uniform();
    double uniform(double lo, double hi);

    // Standard normal via Box-Muller. Consumes exactly two uniforms per call.
    double normal();

    Eigen::VectorXd normal_vector(Eigen::Index n);

    // Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n);

    // Derives an independent child stream keyed by index. Children with
    // distinct keys are statistically independent of each other and of the
    // parent's future draws; deriving does not advance the parent, so
    // per-particle streams are reproducible regardless of iteration order.
    RandomStream child(std::uint64_t key) const;

private:
    std::uint64_t state_;
};

// Named substream of a master seed (e.g. "env", "filter", "net-init",
// "exploration"), so components can be varied independently.
RandomStream named_stream(std::uint64_t master_seed, std::string_view name);

std::uint64_t splitmix64(std::uint64_t x);

// FNV-1a over bytes; used for substream naming and config hashing.
std::uint64_t fnv1a64(std::string_view bytes);

} // namespace goalctl
