#pragma once

#include <string>
#include <vector>

#include "goalctl/core/random.hpp"
#include "goalctl/nnopt/tape.hpp"

namespace goalctl::nnopt {

// Dense feed-forward network: tanh hidden activations, linear output. Columns
// of the input matrix are batch entries.
struct MLP {
    std::vector<Mat> weights; // layer l: (sizes[l+1] x sizes[l])
    std::vector<Mat> biases;  // (sizes[l+1] x 1)

    static MLP make(const std::vector<int>& sizes, RandomStream& rng);

    Mat forward(const Mat& x) const;

    int input_dim() const { return static_cast<int>(weights.front().cols()); }
    int output_dim() const { return static_cast<int>(weights.back().rows()); }
    std::vector<int> layer_sizes() const;
    int layer_count() const { return static_cast<int>(weights.size()); }
};

// Parameter slot ids of one MLP registered on one tape.
struct MlpSlots {
    std::vector<int> w, b;
};

MlpSlots bind(Tape& tape, const MLP& net);
Var forward_on_tape(Tape& tape, const MlpSlots& slots, const MLP& net, Var x);

struct MlpGrads {
    std::vector<Mat> weights, biases;

    static MlpGrads zeros_like(const MLP& net);
    MlpGrads& operator+=(const MlpGrads& o);
    MlpGrads& operator*=(double c);
    double squared_norm() const;
};

MlpGrads collect_grads(const Tape& tape, const MlpSlots& slots);

// Versioned text checkpoint with a shape header; reload must reproduce the
// parameters bit-exactly (round-trips through hex floats).
void save_mlp(const MLP& net, const std::string& path);
MLP load_mlp(const std::string& path);

} // namespace goalctl::nnopt
