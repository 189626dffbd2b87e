#pragma once

#include <cmath>

#include <Eigen/Dense>

namespace goalctl {

// Fixed-width forward-mode dual number: value plus N-vector of derivatives.
// Used to get exact Jacobians of small dynamics maps (one RK4 step) that the
// reverse-mode tape then consumes as a single node.
template <int N>
struct Dual {
    double v = 0.0;
    Eigen::Matrix<double, N, 1> d = Eigen::Matrix<double, N, 1>::Zero();

    Dual() = default;
    Dual(double value) : v(value) {}
    static Dual seed(double value, int index) {
        Dual x(value);
        x.d(index) = 1.0;
        return x;
    }

    Dual operator-() const { Dual r; r.v = -v; r.d = -d; return r; }

    friend Dual operator+(const Dual& a, const Dual& b) { Dual r; r.v = a.v + b.v; r.d = a.d + b.d; return r; }
    friend Dual operator-(const Dual& a, const Dual& b) { Dual r; r.v = a.v - b.v; r.d = a.d - b.d; return r; }
    friend Dual operator*(const Dual& a, const Dual& b) {
        Dual r;
        r.v = a.v * b.v;
        r.d = a.v * b.d + b.v * a.d;
        return r;
    }
    friend Dual operator/(const Dual& a, const Dual& b) {
        Dual r;
        r.v = a.v / b.v;
        r.d = (a.d - r.v * b.d) / b.v;
        return r;
    }

    Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }

    friend Dual sin(const Dual& x) { Dual r; r.v = std::sin(x.v); r.d = std::cos(x.v) * x.d; return r; }
    friend Dual cos(const Dual& x) { Dual r; r.v = std::cos(x.v); r.d = -std::sin(x.v) * x.d; return r; }
    friend Dual exp(const Dual& x) { Dual r; r.v = std::exp(x.v); r.d = r.v * x.d; return r; }
};

} // namespace goalctl
