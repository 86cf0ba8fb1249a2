// open_system.hpp: two-level sweep under Markovian noise
//
//   d rho/dt = -i [H, rho] - sum_i gamma_i / 2 [J_i, [J_i, rho]],   i = x, y, z
//
// written for the Bloch vector r = (<sigma_x>, <sigma_y>, <sigma_z>) as dr/dt = -M(t) r,
//
//       | (gy+gz)/2    Omega_z       0        |
//   M = | -Omega_z     (gx+gz)/2     Omega_x  |
//       |  0          -Omega_x      (gx+gy)/2 |
//
// Only j = 1/2 is supported; every entry point rejects other spins.

#pragma once

#include "mlz/model.hpp"
#include "mlz/oracle.hpp"

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

namespace mlz {

struct DampingRates {
    double gamma_x{0.0};
    double gamma_y{0.0};
    double gamma_z{0.0};

    static DampingRates dephasing(double gamma_z) { return {0.0, 0.0, gamma_z}; }
    static DampingRates isotropic(double gamma) { return {gamma, gamma, gamma}; }

    bool is_isotropic() const { return gamma_x == gamma_y && gamma_y == gamma_z; }
};

// Throws Errc::invalid_rate on negative or non-finite rates.
void require_rates(const DampingRates& rates);

struct BlochVector {
    double t{0.0};
    Eigen::Vector3d r{Eigen::Vector3d::Zero()};
};

Eigen::Vector3d bloch_rhs(const ModelParams& params, const DampingRates& rates, double t, const Eigen::Vector3d& r);

// Trajectory sampled at `times` (times.front() == r0.t). Throws Errc::unphysical_state
// when |r0| > 1 + 1e-12.
std::vector<BlochVector> integrate_master(const ModelParams& params, const DampingRates& rates, const BlochVector& r0,
                                          std::span<const double> times, double tol = default_tolerance);

// Bloch vector of the target state |phi_+(t)>, taken from the invariant eigenbasis.
Eigen::Vector3d target_bloch_vector(const ModelParams& params, double t);

// F = |<phi_+(t)| rho |phi_+(t)>| = |1 + r . n(t)| / 2.
double fidelity(const ModelParams& params, const BlochVector& r);

struct FidelityCurve {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<BlochVector> states;
    // Isotropic channels only: max_k | |r(t_k)| - |r(t_0)| exp(-gamma (t_k - t_0)) |.
    std::optional<double> decay_law_residual;

    double final_fidelity() const { return values.back(); }
};

// Starts in |+> (r = (0, 0, 1)) at -tau_c and records F on a uniform grid up to +tau_c.
FidelityCurve noise_scenario(const ModelParams& params, const DampingRates& rates, double tau_c,
                             int num_points = default_grid_points, double tol = default_tolerance);

// Pure phase damping: gamma_x = gamma_y = 0.
FidelityCurve dephasing_scenario(const ModelParams& params, double gamma_z, double tau_c,
                                 int num_points = default_grid_points, double tol = default_tolerance);

// Isotropic spin flip: gamma_x = gamma_y = gamma_z = gamma.
FidelityCurve spin_flip_scenario(const ModelParams& params, double gamma, double tau_c,
                                 int num_points = default_grid_points, double tol = default_tolerance);

}  // namespace mlz
