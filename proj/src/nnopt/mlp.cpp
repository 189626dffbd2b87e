#include "goalctl/nnopt/mlp.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace goalctl::nnopt {

MLP MLP::make(const std::vector<int>& sizes, RandomStream& rng) {
    if (sizes.size() < 2) throw ConfigError("MLP: need at least input and output sizes");
    MLP net;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        const int in = sizes[l], out = sizes[l + 1];
        if (in < 1 || out < 1) throw ConfigError("MLP: layer sizes must be positive");
        const double limit = std::sqrt(6.0 / (in + out));
        Mat w(out, in);
        for (int r = 0; r < out; ++r)
            for (int c = 0; c < in; ++c) w(r, c) = rng.uniform(-limit, limit);
        net.weights.push_back(std::move(w));
        net.biases.push_back(Mat::Zero(out, 1));
    }
    return net;
}

Mat MLP::forward(const Mat& x) const {
    if (x.rows() != input_dim()) throw ShapeMismatch("MLP::forward: wrong input dimension");
    Mat h = x;
    for (int l = 0; l < layer_count(); ++l) {
        h = (weights[l] * h).colwise() + biases[l].col(0);
        if (l + 1 < layer_count()) h = h.array().tanh();
    }
    return h;
}

std::vector<int> MLP::layer_sizes() const {
    std::vector<int> s{input_dim()};
    for (const Mat& w : weights) s.push_back(static_cast<int>(w.rows()));
    return s;
}

MlpSlots bind(Tape& tape, const MLP& net) {
    MlpSlots slots;
    for (int l = 0; l < net.layer_count(); ++l) {
        slots.w.push_back(tape.param(&net.weights[l]));
        slots.b.push_back(tape.param(&net.biases[l]));
    }
    return slots;
}

Var forward_on_tape(Tape& tape, const MlpSlots& slots, const MLP& net, Var x) {
    Var h = x;
    for (int l = 0; l < net.layer_count(); ++l) {
        h = tape.affine(slots.w[l], slots.b[l], h);
        if (l + 1 < net.layer_count()) h = tape.tanh(h);
    }
    return h;
}

MlpGrads MlpGrads::zeros_like(const MLP& net) {
    MlpGrads g;
    for (int l = 0; l < net.layer_count(); ++l) {
        g.weights.push_back(Mat::Zero(net.weights[l].rows(), net.weights[l].cols()));
        g.biases.push_back(Mat::Zero(net.biases[l].rows(), 1));
    }
    return g;
}

MlpGrads& MlpGrads::operator+=(const MlpGrads& o) {
    for (std::size_t l = 0; l < weights.size(); ++l) {
        weights[l] += o.weights[l];
        biases[l] += o.biases[l];
    }
    return *this;
}

MlpGrads& MlpGrads::operator*=(double c) {
    for (std::size_t l = 0; l < weights.size(); ++l) {
        weights[l] *= c;
        biases[l] *= c;
    }
    return *this;
}

double MlpGrads::squared_norm() const {
    double s = 0.0;
    for (std::size_t l = 0; l < weights.size(); ++l)
        s += weights[l].squaredNorm() + biases[l].squaredNorm();
    return s;
}

MlpGrads collect_grads(const Tape& tape, const MlpSlots& slots) {
    MlpGrads g;
    for (std::size_t l = 0; l < slots.w.size(); ++l) {
        g.weights.push_back(tape.param_grad(slots.w[l]));
        g.biases.push_back(tape.param_grad(slots.b[l]));
    }
    return g;
}

void save_mlp(const MLP& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("save_mlp: cannot open " + path);
    out << "goalctl-mlp 1\n";
    const auto sizes = net.layer_sizes();
    for (std::size_t i = 0; i < sizes.size(); ++i) out << (i ? " " : "") << sizes[i];
    out << "\n";
    char buf[40];
    auto emit = [&](const Mat& m) {
        for (int r = 0; r < m.rows(); ++r) {
            for (int c = 0; c < m.cols(); ++c) {
                std::snprintf(buf, sizeof buf, "%a", m(r, c));
                out << (c ? " " : "") << buf;
            }
            out << "\n";
        }
    };
    for (int l = 0; l < net.layer_count(); ++l) {
        emit(net.weights[l]);
        emit(net.biases[l]);
    }
    if (!out) throw ConfigError("save_mlp: write failed for " + path);
}

MLP load_mlp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("load_mlp: cannot open " + path);
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "goalctl-mlp" || version != 1)
        throw SchemaMismatch("load_mlp: unrecognized checkpoint header in " + path);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    std::istringstream hdr(line);
    std::vector<int> sizes;
    for (int s; hdr >> s;) sizes.push_back(s);
    if (sizes.size() < 2) throw SchemaMismatch("load_mlp: bad shape header in " + path);

    MLP net;
    auto read_mat = [&](int rows, int cols) {
        Mat m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                std::string tok;
                if (!(in >> tok)) throw SchemaMismatch("load_mlp: truncated checkpoint " + path);
                m(r, c) = std::strtod(tok.c_str(), nullptr);
            }
        return m;
    };
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        net.weights.push_back(read_mat(sizes[l + 1], sizes[l]));
        net.biases.push_back(read_mat(sizes[l + 1], 1));
    }
    return net;
}

} // namespace goalctl::nnopt
