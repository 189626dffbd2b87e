#pragma once

#include <Eigen/Dense>

namespace goalctl::env {

// Van-de-Vusse benchmark CSTR: reactions A -> B -> C and 2A -> D.
// States [c_A mol/L, c_B mol/L, T_R degC, T_K degC]; actions
// [F normalized inflow 1/h, Qdot coolant heat removal kJ/h].
// Constants are data: defaults below, overridable from the env config file.
struct CstrConstants {
    double k0_ab = 1.287e12;  // 1/h
    double k0_bc = 1.287e12;  // 1/h
    double k0_ad = 9.043e9;   // L/(mol h)
    double ea_ab = 9758.3;    // K (E/R form)
    double ea_bc = 9758.3;    // K
    double ea_ad = 8560.0;    // K
    double dh_ab = 4.2;       // kJ/mol A
    double dh_bc = -11.0;     // kJ/mol B
    double dh_ad = -41.85;    // kJ/mol A
    double rho = 0.9342;      // kg/L
    double cp = 3.01;         // kJ/(kg K)
    double cp_k = 2.0;        // kJ/(kg K)
    double area = 0.215;      // m^2
    double volume = 10.01;    // L
    double m_coolant = 5.0;   // kg
    double t_in = 130.0;      // degC
    double k_w = 4032.0;      // kJ/(h m^2 K)
    double c_a0 = 5.1;        // feed concentration, mol/L
};

struct CstrScenario {
    double alpha = 1.0; // multiplies the A->D activation energy
    double beta = 1.0;  // multiplies the A->B rate coefficient
};

// Reaction ODE right-hand side.
Eigen::Vector4d cstr_rhs(const CstrConstants& k, const Eigen::Vector4d& x,
                         const Eigen::Vector2d& u, const CstrScenario& psi);

// One dt step of fixed-step RK4 with substeps; concentrations clamped at 0
// from below after each substep.
Eigen::Vector4d cstr_step(const CstrConstants& k, const Eigen::Vector4d& x,
                          const Eigen::Vector2d& u, const CstrScenario& psi,
                          double dt, int substeps);

} // namespace goalctl::env
