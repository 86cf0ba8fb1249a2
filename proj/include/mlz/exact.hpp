// exact.hpp: closed-form dynamics through the dynamical invariant
//
// The sweep admits the invariant
//
//   I(t) = alpha(t) . J,   alpha(t) = (kappa, nu/eta, nu t) / sqrt(1 + nu^2 t^2),
//
// which satisfies i dI/dt = [H, I]. With G(t) = exp(i phi J_z) exp(i theta(t) J_y),
// theta(t) = arccos(-nu t / sqrt(1 + nu^2 t^2)) and phi = -arcsin(nu/eta), the
// eigenvectors |phi_m(t)> = G(t)|m> solve the Schrodinger equation up to the phase
//
//   Phi_m(t1, t0) = m eta kappa [asinh(nu t1) - asinh(nu t0)] / nu,
//
// because the connection <phi_m| i d/dt |phi_m> vanishes identically. Phases are
// only ever formed over finite windows; Phi_m(t, -inf) diverges logarithmically.

#pragma once

#include "mlz/model.hpp"

#include <Eigen/Dense>
#include <complex>

namespace mlz {

enum class Asymptote { past, future };

struct InvariantFrame {
    double t{0.0};
    double theta{0.0};     // in [0, pi], increasing in t
    double phi{0.0};       // constant: -arcsin(nu / eta)
    Eigen::Vector3d alpha;  // unit vector
};

InvariantFrame invariant_frame(const ModelParams& params, double t);
// t -> -inf gives theta = 0, alpha = -z; t -> +inf gives theta = pi, alpha = +z.
InvariantFrame invariant_frame(const ModelParams& params, Asymptote limit);

Eigen::MatrixXcd invariant_matrix(const ModelParams& params, const SpinOperators& ops, double t);
Eigen::MatrixXcd invariant_matrix(const ModelParams& params, const SpinOperators& ops, Asymptote limit);

// Default finite-difference step 1e-5 / nu.
double default_fd_step(const ModelParams& params);

// Spectral norm of i (I(t+dt) - I(t-dt)) / (2 dt) - [H(t), I(t)]. Throws Errc::invalid_step for dt <= 0.
double invariant_defect(const ModelParams& params, const SpinOperators& ops, double t, double dt);

// Columns are |phi_m(t)>, m = +j ... -j. I(t) |phi_m> = -m |phi_m>.
Eigen::MatrixXcd eigenbasis(const ModelParams& params, double t);
Eigen::MatrixXcd eigenbasis(const ModelParams& params, Asymptote limit);

// <phi_m| H |phi_m> = -m eta kappa / sqrt(1 + nu^2 t^2).
double diabatic_energy(const ModelParams& params, HalfInteger m, double t);

// Instantaneous eigenvalue of H(t) belonging to level m: -m |Omega(t)|.
double adiabatic_energy(const ModelParams& params, HalfInteger m, double t);

struct LRPhase {
    HalfInteger m;
    double t0{0.0};
    double t1{0.0};
    double value{0.0};
};

// Throws Errc::invalid_window when t0 > t1.
LRPhase lr_phase(const ModelParams& params, HalfInteger m, double t0, double t1);

// Central-difference estimate of <phi_m(t)| i d/dt |phi_m(t)>.
std::complex<double> geometric_connection(const ModelParams& params, HalfInteger m, double t, double dt);

// U(t1, t0) = sum_m exp(i Phi_m(t1, t0)) |phi_m(t1)><phi_m(t0)|.
Eigen::MatrixXcd propagator(const ModelParams& params, double t0, double t1);

struct TransferReport {
    double tau_c{0.0};
    double probability{0.0};  // P = |<-|U(tau_c, -tau_c)|+>|^2
    double loss{0.0};         // 1 - P
    double phase_plus{0.0};   // Phi_+(tau_c, -tau_c); P = 1 - bound * cos^2(phase_plus)
    double bound{0.0};        // (1 + nu^2 tau_c^2)^-1, upper bound on loss
    bool kappa_zero{false};   // nu == eta: the phase vanishes and loss == bound
};

// Two-level closed form. Throws Errc::unsupported_spin for j != 1/2 (use propagator
// for the multi-level case) and Errc::invalid_window for tau_c <= 0.
TransferReport transfer_probability(const ModelParams& params, double tau_c);

}  // namespace mlz
