#include "goalctl/env/double_pendulum.hpp"

#include <cmath>

namespace goalctl::env {

namespace {

// state: [th1, th2, w1, w2, s, v] -> time derivative
template <typename T>
void dip_rhs(const DoublePendulumParams& p, const T x[6], const T& u, T out[6]) {
    T acc, a1, a2;
    dip_accelerations(p, x[0], x[1], x[2], x[3], u, acc, a1, a2);
    out[0] = x[2];
    out[1] = x[3];
    out[2] = a1;
    out[3] = a2;
    out[4] = x[5];
    out[5] = acc;
}

template <typename T>
void dip_rk4(const DoublePendulumParams& p, T x[6], const T& u) {
    const double h = p.dt / p.substeps;
    T k1[6], k2[6], k3[6], k4[6], tmp[6];
    for (int s = 0; s < p.substeps; ++s) {
        dip_rhs(p, x, u, k1);
        for (int i = 0; i < 6; ++i) tmp[i] = x[i] + T(0.5 * h) * k1[i];
        dip_rhs(p, tmp, u, k2);
        for (int i = 0; i < 6; ++i) tmp[i] = x[i] + T(0.5 * h) * k2[i];
        dip_rhs(p, tmp, u, k3);
        for (int i = 0; i < 6; ++i) tmp[i] = x[i] + T(h) * k3[i];
        dip_rhs(p, tmp, u, k4);
        for (int i = 0; i < 6; ++i)
            x[i] = x[i] + T(h / 6.0) * (k1[i] + T(2.0) * k2[i] + T(2.0) * k3[i] + k4[i]);
    }
}

} // namespace

Eigen::Matrix<double, 6, 1> dip_step(const DoublePendulumParams& p,
                                     const Eigen::Matrix<double, 6, 1>& x, double u) {
    double s[6];
    for (int i = 0; i < 6; ++i) s[i] = x(i);
    dip_rk4(p, s, u);
    Eigen::Matrix<double, 6, 1> out;
    for (int i = 0; i < 6; ++i) out(i) = s[i];
    return out;
}

void dip_step_with_jacobian(const DoublePendulumParams& p,
                            const Eigen::Matrix<double, 6, 1>& x, double u,
                            Eigen::Matrix<double, 6, 1>& x_next,
                            Eigen::Matrix<double, 6, 7>& jac) {
    using D = Dual<7>;
    D s[6];
    for (int i = 0; i < 6; ++i) s[i] = D::seed(x(i), i);
    D du = D::seed(u, 6);
    dip_rk4(p, s, du);
    for (int i = 0; i < 6; ++i) {
        x_next(i) = s[i].v;
        jac.row(i) = s[i].d.transpose();
    }
}

double dip_energy(const DoublePendulumParams& p, const Eigen::Matrix<double, 6, 1>& x) {
    const double c1 = 0.5 * p.l1, c2 = 0.5 * p.l2;
    const double i1 = p.m1 * p.l1 * p.l1 / 12.0;
    const double i2 = p.m2 * p.l2 * p.l2 / 12.0;
    const double th1 = x(0), th2 = x(1), w1 = x(2), w2 = x(3), v = x(5);

    const double v1x = v + c1 * std::cos(th1) * w1;
    const double v1y = -c1 * std::sin(th1) * w1;
    const double v2x = v + p.l1 * std::cos(th1) * w1 + c2 * std::cos(th2) * w2;
    const double v2y = -p.l1 * std::sin(th1) * w1 - c2 * std::sin(th2) * w2;

    const double kin = 0.5 * p.cart_mass * v * v
                     + 0.5 * p.m1 * (v1x * v1x + v1y * v1y) + 0.5 * i1 * w1 * w1
                     + 0.5 * p.m2 * (v2x * v2x + v2y * v2y) + 0.5 * i2 * w2 * w2;
    const double pot = p.m1 * p.gravity * c1 * std::cos(th1)
                     + p.m2 * p.gravity * (p.l1 * std::cos(th1) + c2 * std::cos(th2));
    return kin + pot;
}

} // namespace goalctl::env
