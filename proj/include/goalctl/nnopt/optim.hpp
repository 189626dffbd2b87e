#pragma once

#include <vector>

#include "goalctl/nnopt/mlp.hpp"

namespace goalctl::nnopt {

struct AdamConfig {
    double lr = 3e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// Standard Adam with bias correction. Descent on the supplied gradients;
// callers doing ascent negate the loss.
class AdamState {
public:
    explicit AdamState(AdamConfig cfg = {}) : cfg_(cfg) {}

    void step(const std::vector<Mat*>& params, const std::vector<const Mat*>& grads);
    void step(MLP& net, const MlpGrads& grads);

    long steps_taken() const { return t_; }
    const AdamConfig& config() const { return cfg_; }
    void set_lr(double lr) { cfg_.lr = lr; }

private:
    AdamConfig cfg_;
    long t_ = 0;
    std::vector<Mat> m_, v_; // lazily sized to the first step's shapes
};

struct SoapConfig {
    AdamConfig adam;
    double factor_beta = 0.95;        // EMA rate of the Kronecker factors
    long precondition_frequency = 10; // <= 0: never refresh (reduces to Adam)
};

// SOAP: Adam run in the eigenbasis of Kronecker-factored gradient covariance
// EMAs (L = EMA[G G^T], R = EMA[G^T G]), bases refreshed every
// precondition_frequency steps. Vector-shaped tensors (biases) fall back to
// plain Adam. A failed eigendecomposition keeps the previous basis for that
// step.
class SoapState {
public:
    explicit SoapState(SoapConfig cfg = {}) : cfg_(cfg) {}

    void step(const std::vector<Mat*>& params, const std::vector<const Mat*>& grads);
    void step(MLP& net, const MlpGrads& grads);

    long steps_taken() const { return t_; }
    const SoapConfig& config() const { return cfg_; }
    void set_lr(double lr) { cfg_.adam.lr = lr; }

private:
    struct TensorState {
        Mat l, r;   // factor EMAs
        Mat ql, qr; // eigenbases; empty means identity
        Mat m, v;   // Adam moments in the rotated coordinates
    };

    SoapConfig cfg_;
    long t_ = 0;
    std::vector<TensorState> tensors_;
};

} // namespace goalctl::nnopt
