#include "goalctl/nnopt/tape.hpp"

#include <cmath>

namespace goalctl::nnopt {

int Tape::check(Var v) const {
    if (v.idx < 0 || v.idx >= static_cast<int>(nodes_.size()))
        throw ShapeMismatch("Tape: variable does not belong to this tape");
    return v.idx;
}

Var Tape::push(Node n) {
    nodes_.push_back(std::move(n));
    return Var{static_cast<int>(nodes_.size()) - 1};
}

Var Tape::input(Mat value) {
    Node n;
    n.op = Op::Input;
    n.value = std::move(value);
    return push(std::move(n));
}

int Tape::param(const Mat* value) {
    param_values_.push_back(value);
    param_grads_.emplace_back(Mat::Zero(value->rows(), value->cols()));
    return static_cast<int>(param_values_.size()) - 1;
}

Var Tape::affine(int w, int b, Var x) {
    const Mat& W = *param_values_[w];
    const Mat& B = *param_values_[b];
    const Mat& X = value(x);
    if (W.cols() != X.rows() || B.rows() != W.rows() || B.cols() != 1)
        throw ShapeMismatch("affine: weight/bias/input shapes disagree");
    Node n;
    n.op = Op::Affine;
    n.value = (W * X).colwise() + B.col(0);
    n.in = {x.idx};
    n.w = w;
    n.b = b;
    return push(std::move(n));
}

Var Tape::left_mul(Mat constant, Var x) {
    if (constant.cols() != value(x).rows()) throw ShapeMismatch("left_mul: shapes disagree");
    Node n;
    n.op = Op::LeftMul;
    n.value = constant * value(x);
    n.aux = std::move(constant);
    n.in = {x.idx};
    return push(std::move(n));
}

Var Tape::right_mul(Var x, Mat constant) {
    if (value(x).cols() != constant.rows()) throw ShapeMismatch("right_mul: shapes disagree");
    Node n;
    n.op = Op::RightMul;
    n.value = value(x) * constant;
    n.aux = std::move(constant);
    n.in = {x.idx};
    return push(std::move(n));
}

Var Tape::linear(const std::vector<std::pair<double, Var>>& terms) {
    if (terms.empty()) throw ShapeMismatch("linear: needs at least one term");
    Node n;
    n.op = Op::Linear;
    n.value = terms[0].first * value(terms[0].second);
    n.in.push_back(terms[0].second.idx);
    n.coeffs.push_back(terms[0].first);
    for (std::size_t k = 1; k < terms.size(); ++k) {
        const Mat& v = value(terms[k].second);
        if (v.rows() != n.value.rows() || v.cols() != n.value.cols())
            throw ShapeMismatch("linear: operand shapes disagree");
        n.value += terms[k].first * v;
        n.in.push_back(terms[k].second.idx);
        n.coeffs.push_back(terms[k].first);
    }
    return push(std::move(n));
}

Var Tape::add(Var a, Var b) { return linear({{1.0, a}, {1.0, b}}); }
Var Tape::sub(Var a, Var b) { return linear({{1.0, a}, {-1.0, b}}); }
Var Tape::scale(double c, Var x) { return linear({{c, x}}); }

Var Tape::add_const(Var x, Mat c) {
    if (c.rows() != value(x).rows() || c.cols() != value(x).cols())
        throw ShapeMismatch("add_const: shapes disagree");
    Node n;
    n.op = Op::Linear;
    n.value = value(x) + c;
    n.in = {x.idx};
    n.coeffs = {1.0};
    return push(std::move(n));
}

Var Tape::cwise(Var x, Mat val, Mat dval) {
    Node n;
    n.op = Op::CwiseUnary;
    n.value = std::move(val);
    n.aux = std::move(dval);
    n.in = {x.idx};
    return push(std::move(n));
}

Var Tape::tanh(Var x) {
    Mat v = value(x).array().tanh();
    Mat d = 1.0 - v.array().square();
    return cwise(x, std::move(v), std::move(d));
}

Var Tape::sin(Var x) {
    Mat v = value(x).array().sin();
    Mat d = value(x).array().cos();
    return cwise(x, std::move(v), std::move(d));
}

Var Tape::cos(Var x) {
    Mat v = value(x).array().cos();
    Mat d = -value(x).array().sin();
    return cwise(x, std::move(v), std::move(d));
}

Var Tape::exp(Var x) {
    Mat v = value(x).array().exp();
    return cwise(x, v, v);
}

Var Tape::log(Var x) {
    Mat v = value(x).array().log();
    Mat d = value(x).array().inverse();
    return cwise(x, std::move(v), std::move(d));
}

Var Tape::square(Var x) {
    Mat v = value(x).array().square();
    Mat d = 2.0 * value(x).array();
    return cwise(x, std::move(v), std::move(d));
}

Var Tape::cwise_mul(Var a, Var b) {
    if (value(a).rows() != value(b).rows() || value(a).cols() != value(b).cols())
        throw ShapeMismatch("cwise_mul: shapes disagree");
    Node n;
    n.op = Op::CwiseMul;
    n.value = value(a).cwiseProduct(value(b));
    n.in = {a.idx, b.idx};
    return push(std::move(n));
}

Var Tape::cwise_min(Var a, Var b) {
    if (value(a).rows() != value(b).rows() || value(a).cols() != value(b).cols())
        throw ShapeMismatch("cwise_min: shapes disagree");
    Node n;
    n.op = Op::CwiseMin;
    n.value = value(a).cwiseMin(value(b));
    n.aux = (value(a).array() <= value(b).array()).cast<double>();
    n.in = {a.idx, b.idx};
    return push(std::move(n));
}

Var Tape::clamp(Var x, double lo, double hi) {
    Node n;
    n.op = Op::Clamp;
    n.value = value(x).cwiseMax(lo).cwiseMin(hi);
    n.aux = ((value(x).array() >= lo) && (value(x).array() <= hi)).cast<double>();
    n.in = {x.idx};
    return push(std::move(n));
}

Var Tape::concat_rows(const std::vector<Var>& xs) {
    if (xs.empty()) throw ShapeMismatch("concat_rows: needs at least one input");
    Eigen::Index rows = 0;
    const Eigen::Index cols = value(xs[0]).cols();
    for (Var x : xs) {
        if (value(x).cols() != cols) throw ShapeMismatch("concat_rows: column counts disagree");
        rows += value(x).rows();
    }
    Node n;
    n.op = Op::Concat;
    n.value.resize(rows, cols);
    Eigen::Index r = 0;
    for (Var x : xs) {
        n.value.middleRows(r, value(x).rows()) = value(x);
        r += value(x).rows();
        n.in.push_back(x.idx);
    }
    return push(std::move(n));
}

Var Tape::slice_rows(Var x, int r0, int nrows) {
    if (r0 < 0 || r0 + nrows > value(x).rows()) throw ShapeMismatch("slice_rows: out of range");
    Node n;
    n.op = Op::Slice;
    n.value = value(x).middleRows(r0, nrows);
    n.in = {x.idx};
    n.r0 = r0;
    return push(std::move(n));
}

Var Tape::sum(Var x) {
    Node n;
    n.op = Op::Sum;
    n.value = Mat::Constant(1, 1, value(x).sum());
    n.in = {x.idx};
    return push(std::move(n));
}

Var Tape::dot(Var a, Var b) {
    if (value(a).rows() != value(b).rows() || value(a).cols() != value(b).cols())
        throw ShapeMismatch("dot: shapes disagree");
    Node n;
    n.op = Op::Dot;
    n.value = Mat::Constant(1, 1, value(a).cwiseProduct(value(b)).sum());
    n.in = {a.idx, b.idx};
    return push(std::move(n));
}

Var Tape::mul_scalar(Var x, Var s) {
    if (value(s).rows() != 1 || value(s).cols() != 1)
        throw ShapeMismatch("mul_scalar: scalar operand must be 1x1");
    Node n;
    n.op = Op::MulScalar;
    n.value = value(s)(0, 0) * value(x);
    n.in = {x.idx, s.idx};
    return push(std::move(n));
}

Var Tape::jacobian_op(const std::vector<Var>& xs, Mat value_, Mat jac) {
    Eigen::Index in_rows = 0;
    for (Var x : xs) {
        if (value(x).cols() != 1) throw ShapeMismatch("jacobian_op: inputs must be single-column");
        in_rows += value(x).rows();
    }
    if (value_.cols() != 1 || jac.rows() != value_.rows() || jac.cols() != in_rows)
        throw ShapeMismatch("jacobian_op: jacobian shape disagrees with inputs/output");
    Node n;
    n.op = Op::Jacobian;
    n.value = std::move(value_);
    n.aux = std::move(jac);
    for (Var x : xs) n.in.push_back(x.idx);
    return push(std::move(n));
}

Mat& Tape::adj(int idx) {
    Mat& a = adjoints_[idx];
    if (a.size() == 0) a = Mat::Zero(nodes_[idx].value.rows(), nodes_[idx].value.cols());
    return a;
}

const Mat& Tape::grad(Var v) const {
    if (!ran_backward_) throw ShapeMismatch("grad: call backward first");
    return adjoints_[check(v)];
}

void Tape::backward(Var loss) {
    const int root = check(loss);
    if (nodes_[root].value.rows() != 1 || nodes_[root].value.cols() != 1)
        throw ShapeMismatch("backward: loss must be a 1x1 scalar");
    if (ran_backward_) throw ShapeMismatch("backward: tape already consumed");
    ran_backward_ = true;

    adjoints_.assign(nodes_.size(), Mat());
    adj(root) = Mat::Constant(1, 1, 1.0);

    for (int i = root; i >= 0; --i) {
        const Node& n = nodes_[i];
        const Mat& g = adjoints_[i];
        if (g.size() == 0) continue; // not on any path to the loss
        switch (n.op) {
            case Op::Input:
                break;
            case Op::Affine: {
                const Mat& W = *param_values_[n.w];
                const Mat& X = nodes_[n.in[0]].value;
                adj(n.in[0]).noalias() += W.transpose() * g;
                param_grads_[n.w].noalias() += g * X.transpose();
                param_grads_[n.b].col(0).noalias() += g.rowwise().sum();
                break;
            }
            case Op::LeftMul:
                adj(n.in[0]).noalias() += n.aux.transpose() * g;
                break;
            case Op::RightMul:
                adj(n.in[0]).noalias() += g * n.aux.transpose();
                break;
            case Op::Linear:
                for (std::size_t k = 0; k < n.in.size(); ++k)
                    adj(n.in[k]).noalias() += n.coeffs[k] * g;
                break;
            case Op::CwiseUnary:
            case Op::Clamp:
                adj(n.in[0]).array() += n.aux.array() * g.array();
                break;
            case Op::CwiseMul:
                adj(n.in[0]).array() += nodes_[n.in[1]].value.array() * g.array();
                adj(n.in[1]).array() += nodes_[n.in[0]].value.array() * g.array();
                break;
            case Op::CwiseMin:
                adj(n.in[0]).array() += n.aux.array() * g.array();
                adj(n.in[1]).array() += (1.0 - n.aux.array()) * g.array();
                break;
            case Op::Concat: {
                Eigen::Index r = 0;
                for (int in : n.in) {
                    const Eigen::Index nr = nodes_[in].value.rows();
                    adj(in) += g.middleRows(r, nr);
                    r += nr;
                }
                break;
            }
            case Op::Slice:
                adj(n.in[0]).middleRows(n.r0, n.value.rows()) += g;
                break;
            case Op::Sum:
                adj(n.in[0]).array() += g(0, 0);
                break;
            case Op::Dot:
                adj(n.in[0]) += g(0, 0) * nodes_[n.in[1]].value;
                adj(n.in[1]) += g(0, 0) * nodes_[n.in[0]].value;
                break;
            case Op::MulScalar:
                adj(n.in[0]) += nodes_[n.in[1]].value(0, 0) * g;
                adj(n.in[1])(0, 0) += nodes_[n.in[0]].value.cwiseProduct(g).sum();
                break;
            case Op::Jacobian: {
                const Mat pull = n.aux.transpose() * g; // (sum in_rows) x 1
                Eigen::Index r = 0;
                for (int in : n.in) {
                    const Eigen::Index nr = nodes_[in].value.rows();
                    adj(in) += pull.middleRows(r, nr);
                    r += nr;
                }
                break;
            }
        }
    }
}

} // namespace goalctl::nnopt
