#pragma once

#include <Eigen/Dense>

#include "goalctl/core/dual.hpp"

namespace goalctl::env {

// Double inverted pendulum on a cart, horizontal force input. Angles are
// measured from the upright vertical (theta = 0 is the balancing goal,
// theta = pi is the hanging rest). Uniform thin rods, COM at half length.
// State layout: [theta1, theta2, dtheta1, dtheta2, cart_pos, cart_vel].
struct DoublePendulumParams {
    double cart_mass = 1.0;
    double m1 = 0.2;
    double m2 = 0.2;
    double l1 = 0.5;
    double l2 = 0.5;
    double gravity = 9.81;
    double dt = 0.02;
    int substeps = 2;
    double force_limit = 60.0; // |u| bound, N
};

// Cart/link accelerations from the Lagrangian equations of motion, solved by
// Cramer's rule so the same code runs with doubles and dual numbers.
// Inputs: th1, th2 (from upright), w1, w2 (angular rates), u (cart force).
// Outputs: cart_acc, alpha1, alpha2.
template <typename T>
void dip_accelerations(const DoublePendulumParams& p, const T& th1, const T& th2,
                       const T& w1, const T& w2, const T& u,
                       T& cart_acc, T& alpha1, T& alpha2) {
    const double c1 = 0.5 * p.l1;
    const double c2 = 0.5 * p.l2;
    const double i1 = p.m1 * p.l1 * p.l1 / 12.0;
    const double i2 = p.m2 * p.l2 * p.l2 / 12.0;

    const double d1 = p.cart_mass + p.m1 + p.m2;
    const double d2 = p.m1 * c1 + p.m2 * p.l1;
    const double d3 = p.m2 * c2;
    const double d4 = p.m1 * c1 * c1 + p.m2 * p.l1 * p.l1 + i1;
    const double d5 = p.m2 * p.l1 * c2;
    const double d6 = p.m2 * c2 * c2 + i2;
    const double f1 = d2 * p.gravity;
    const double f2 = d3 * p.gravity;

    const T s1 = sin(th1), co1 = cos(th1);
    const T s2 = sin(th2), co2 = cos(th2);
    const T s12 = sin(th1 - th2), c12 = cos(th1 - th2);

    // M q'' = r,  q = (cart, th1, th2)
    const T m01 = T(d2) * co1;
    const T m02 = T(d3) * co2;
    const T m12 = T(d5) * c12;

    const T r0 = u + T(d2) * s1 * w1 * w1 + T(d3) * s2 * w2 * w2;
    const T r1 = T(f1) * s1 - T(d5) * s12 * w2 * w2;
    const T r2 = T(f2) * s2 + T(d5) * s12 * w1 * w1;

    // symmetric 3x3 solve via cofactors
    const T a00 = T(d1), a11 = T(d4), a22 = T(d6);
    const T co00 = a11 * a22 - m12 * m12;
    const T co01 = m02 * m12 - m01 * a22;
    const T co02 = m01 * m12 - m02 * a11;
    const T co11 = a00 * a22 - m02 * m02;
    const T co12 = m01 * m02 - a00 * m12;
    const T co22 = a00 * a11 - m01 * m01;
    const T det = a00 * co00 + m01 * co01 + m02 * co02;

    cart_acc = (co00 * r0 + co01 * r1 + co02 * r2) / det;
    alpha1 = (co01 * r0 + co11 * r1 + co12 * r2) / det;
    alpha2 = (co02 * r0 + co12 * r1 + co22 * r2) / det;
}

// One dt step of fixed-step RK4 (with substeps), double-valued.
Eigen::Matrix<double, 6, 1> dip_step(const DoublePendulumParams& p,
                                     const Eigen::Matrix<double, 6, 1>& x, double u);

// Same step plus the exact 6x7 Jacobian d(x')/d(x, u), computed by running
// RK4 on dual numbers. Used by the dpc tape to differentiate through unrolled
// dynamics.
void dip_step_with_jacobian(const DoublePendulumParams& p,
                            const Eigen::Matrix<double, 6, 1>& x, double u,
                            Eigen::Matrix<double, 6, 1>& x_next,
                            Eigen::Matrix<double, 6, 7>& jac);

// Total mechanical energy; sanity gate for the integrator.
double dip_energy(const DoublePendulumParams& p, const Eigen::Matrix<double, 6, 1>& x);

} // namespace goalctl::env
