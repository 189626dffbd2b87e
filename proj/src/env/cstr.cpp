#include "goalctl/env/cstr.hpp"

#include <cmath>

namespace goalctl::env {

Eigen::Vector4d cstr_rhs(const CstrConstants& k, const Eigen::Vector4d& x,
                         const Eigen::Vector2d& u, const CstrScenario& psi) {
    const double ca = x(0), cb = x(1), tr = x(2), tk = x(3);
    const double f = u(0), qdot = u(1);
    const double t_abs = tr + 273.15;

    const double k1 = psi.beta * k.k0_ab * std::exp(-k.ea_ab / t_abs);
    const double k2 = k.k0_bc * std::exp(-k.ea_bc / t_abs);
    const double k3 = k.k0_ad * std::exp(-(psi.alpha * k.ea_ad) / t_abs);

    Eigen::Vector4d dx;
    dx(0) = f * (k.c_a0 - ca) - k1 * ca - k3 * ca * ca;
    dx(1) = -f * cb + k1 * ca - k2 * cb;
    dx(2) = (k1 * ca * k.dh_ab + k2 * cb * k.dh_bc + k3 * ca * ca * k.dh_ad) / (-k.rho * k.cp)
          + f * (k.t_in - tr) + k.k_w * k.area * (tk - tr) / (k.rho * k.cp * k.volume);
    dx(3) = (qdot + k.k_w * k.area * (tr - tk)) / (k.m_coolant * k.cp_k);
    return dx;
}

Eigen::Vector4d cstr_step(const CstrConstants& k, const Eigen::Vector4d& x,
                          const Eigen::Vector2d& u, const CstrScenario& psi,
                          double dt, int substeps) {
    const double h = dt / substeps;
    Eigen::Vector4d s = x;
    for (int i = 0; i < substeps; ++i) {
        const Eigen::Vector4d k1 = cstr_rhs(k, s, u, psi);
        const Eigen::Vector4d k2 = cstr_rhs(k, s + 0.5 * h * k1, u, psi);
        const Eigen::Vector4d k3 = cstr_rhs(k, s + 0.5 * h * k2, u, psi);
        const Eigen::Vector4d k4 = cstr_rhs(k, s + h * k3, u, psi);
        s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        s(0) = std::max(s(0), 0.0);
        s(1) = std::max(s(1), 0.0);
    }
    return s;
}

} // namespace goalctl::env
