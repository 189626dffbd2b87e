#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "goalctl/core/errors.hpp"

namespace goalctl::nnopt {

using Mat = Eigen::MatrixXd;

struct Var {
    int idx = -1;
};

// Reverse-mode gradient tape over matrix-valued nodes. One tape records one
// forward pass; backward() walks it once in reverse. Values are column-major
// matrices; a batch is a set of columns, scalars are 1x1. Parameter matrices
// are referenced by pointer and must stay alive and unmodified until after
// backward().
class Tape {
public:
    // ---- leaves ----
    Var input(Mat value);
    int param(const Mat* value); // returns parameter slot id

    // ---- structured ops ----
    Var affine(int w, int b, Var x);         // W x + b, b broadcast over columns
    Var left_mul(Mat constant, Var x);       // C x
    Var right_mul(Var x, Mat constant);      // x C
    Var linear(const std::vector<std::pair<double, Var>>& terms);
    Var add(Var a, Var b);
    Var sub(Var a, Var b);
    Var scale(double c, Var x);
    Var add_const(Var x, Mat c);

    // ---- elementwise ----
    Var tanh(Var x);
    Var sin(Var x);
    Var cos(Var x);
    Var exp(Var x);
    Var log(Var x);
    Var square(Var x);
    Var cwise_mul(Var a, Var b);
    Var cwise_min(Var a, Var b);
    Var clamp(Var x, double lo, double hi); // zero gradient outside [lo, hi]

    // ---- shape ----
    Var concat_rows(const std::vector<Var>& xs);
    Var slice_rows(Var x, int r0, int nrows);

    // ---- reductions ----
    Var sum(Var x);        // 1x1
    Var dot(Var a, Var b); // 1x1
    Var mul_scalar(Var x, Var s); // s (1x1) * x

    // Single-column nonlinear map with a precomputed local Jacobian:
    // value = f(x_0, .., x_k), jac = d value / d [x_0; ..; x_k]. Lets exact
    // dynamics-step Jacobians (dual-number RK4) join the reverse pass.
    Var jacobian_op(const std::vector<Var>& xs, Mat value, Mat jac);

    const Mat& value(Var v) const { return nodes_[check(v)].value; }
    void backward(Var loss);
    const Mat& grad(Var v) const;
    const Mat& param_grad(int pid) const { return param_grads_[pid]; }
    int size() const { return static_cast<int>(nodes_.size()); }

private:
    enum class Op : unsigned char {
        Input, Affine, LeftMul, RightMul, Linear, CwiseUnary, CwiseMul, CwiseMin,
        Clamp, Concat, Slice, Sum, Dot, MulScalar, Jacobian
    };

    struct Node {
        Op op;
        Mat value;
        Mat aux; // unary derivative / constant factor / min mask / clamp mask / jacobian
        std::vector<int> in;
        std::vector<double> coeffs;
        int w = -1, b = -1;
        int r0 = 0;
    };

    int check(Var v) const;
    Var push(Node n);
    Var cwise(Var x, Mat value, Mat dvalue);
    Mat& adj(int idx);

    std::vector<Node> nodes_;
    std::vector<const Mat*> param_values_;
    std::vector<Mat> param_grads_;
    std::vector<Mat> adjoints_;
    bool ran_backward_ = false;
};

} // namespace goalctl::nnopt
