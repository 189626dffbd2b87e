#include "goalctl/nnopt/optim.hpp"

#include <cmath>

namespace goalctl::nnopt {

namespace {

// shared Adam moment update; returns the (lr-scaled) parameter decrement so
// Adam and SOAP produce identical arithmetic when SOAP's rotation is identity
Mat adam_update(Mat& m, Mat& v, long t, const Mat& g, const AdamConfig& cfg) {
    if (m.size() == 0) {
        m = Mat::Zero(g.rows(), g.cols());
        v = Mat::Zero(g.rows(), g.cols());
    }
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
    v = cfg.beta2 * v + (1.0 - cfg.beta2) * g.cwiseProduct(g);
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t));
    const Mat m_hat = m / bc1;
    const Mat v_hat = v / bc2;
    return cfg.lr * (m_hat.array() / (v_hat.array().sqrt() + cfg.eps)).matrix();
}

std::vector<Mat*> flatten(MLP& net) {
    std::vector<Mat*> out;
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        out.push_back(&net.weights[l]);
        out.push_back(&net.biases[l]);
    }
    return out;
}

std::vector<const Mat*> flatten(const MlpGrads& g) {
    std::vector<const Mat*> out;
    for (std::size_t l = 0; l < g.weights.size(); ++l) {
        out.push_back(&g.weights[l]);
        out.push_back(&g.biases[l]);
    }
    return out;
}

} // namespace

void AdamState::step(const std::vector<Mat*>& params, const std::vector<const Mat*>& grads) {
    if (params.size() != grads.size()) throw ShapeMismatch("AdamState: params/grads mismatch");
    if (m_.empty()) {
        m_.resize(params.size());
        v_.resize(params.size());
    }
    ++t_;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (params[i]->rows() != grads[i]->rows() || params[i]->cols() != grads[i]->cols())
            throw ShapeMismatch("AdamState: gradient shape mismatch");
        *params[i] -= adam_update(m_[i], v_[i], t_, *grads[i], cfg_);
    }
}

void AdamState::step(MLP& net, const MlpGrads& grads) {
    auto p = flatten(net);
    step(p, flatten(grads));
}

void SoapState::step(const std::vector<Mat*>& params, const std::vector<const Mat*>& grads) {
    if (params.size() != grads.size()) throw ShapeMismatch("SoapState: params/grads mismatch");
    if (tensors_.empty()) tensors_.resize(params.size());
    ++t_;
    const bool refresh =
        cfg_.precondition_frequency > 0 && (t_ - 1) % cfg_.precondition_frequency == 0;

    for (std::size_t i = 0; i < params.size(); ++i) {
        Mat& w = *params[i];
        const Mat& g = *grads[i];
        TensorState& ts = tensors_[i];

        if (w.cols() == 1 || w.rows() == 1) { // bias / vector tensor: plain Adam
            w -= adam_update(ts.m, ts.v, t_, g, cfg_.adam);
            continue;
        }

        if (cfg_.precondition_frequency > 0) {
            const double bf = cfg_.factor_beta;
            if (ts.l.size() == 0) {
                ts.l = Mat::Zero(g.rows(), g.rows());
                ts.r = Mat::Zero(g.cols(), g.cols());
            }
            ts.l = bf * ts.l + (1.0 - bf) * (g * g.transpose());
            ts.r = bf * ts.r + (1.0 - bf) * (g.transpose() * g);
        }

        if (refresh) {
            Eigen::SelfAdjointEigenSolver<Mat> el(ts.l), er(ts.r);
            if (el.info() == Eigen::Success && er.info() == Eigen::Success) {
                // carry momentum into the new basis; second moments stay
                // coordinatewise (the usual SOAP approximation)
                if (ts.m.size() != 0) {
                    Mat m_flat = ts.m;
                    if (ts.ql.size() != 0) m_flat = ts.ql * ts.m * ts.qr.transpose();
                    ts.m = el.eigenvectors().transpose() * m_flat * er.eigenvectors();
                }
                ts.ql = el.eigenvectors();
                ts.qr = er.eigenvectors();
            }
            // on eigensolver failure the previous basis (or identity) stands
        }

        if (ts.ql.size() == 0) {
            w -= adam_update(ts.m, ts.v, t_, g, cfg_.adam);
        } else {
            const Mat g_rot = ts.ql.transpose() * g * ts.qr;
            const Mat upd = adam_update(ts.m, ts.v, t_, g_rot, cfg_.adam);
            w -= ts.ql * upd * ts.qr.transpose();
        }
    }
}

void SoapState::step(MLP& net, const MlpGrads& grads) {
    auto p = flatten(net);
    step(p, flatten(grads));
}

} // namespace goalctl::nnopt
