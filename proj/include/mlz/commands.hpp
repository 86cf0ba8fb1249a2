// commands.hpp: dataset emitters behind the CLI subcommands
//
// Every dataset starts with the dimensionless nu_t column. Time grids are uniform in
// nu t over [-nu_tau_c, +nu_tau_c] with config.points samples.

#pragma once

#include "mlz/config.hpp"
#include "mlz/dataset.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mlz::cli {

// nu_t, omega_x_over_eta, omega_z_over_eta
Dataset cmd_fields(const ScenarioConfig& config);

// nu_t, then E_ad[m=...]/eta for every m, then E_diab[m=...]/eta for every m.
Dataset cmd_levels(const ScenarioConfig& config);

// nu_t, p[m=...] for every m, starting in level config.m (default +j). scenario
// exact uses the closed-form propagator, otherwise the ODE oracle.
Dataset cmd_populations(const ScenarioConfig& config);

// nu_t, T[m=...,n=...] for every row m, n = config.m.
Dataset cmd_transitions(const ScenarioConfig& config);

// nu_t, fidelity, p_minus, bloch_norm. j must be 1/2.
Dataset cmd_noise(const ScenarioConfig& config);

// One row per sweep value:
//   tau_c:       nu_t, P, P_delta, bound       (nu_t = swept nu tau_c)
//   eta_over_nu: nu_t, eta_over_nu, P, P_delta, bound
//   gamma:       nu_t, gamma_over_nu, fidelity
Dataset cmd_sweep(const ScenarioConfig& config);

struct CheckResult {
    std::string name;
    double value{0.0};
    double gate{0.0};
    bool passed{false};
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool passed() const;
    std::string to_json() const;
    std::string to_csv() const;
};

struct VerifyOptions {
    // When set, the model is built with this kappa instead of the derived one.
    std::optional<double> kappa_override;
};

// Cross-module invariant suite at the configured eta, nu and window:
// su(2) closure, Wigner composition, invariant defect, geometric connection,
// exact-vs-oracle propagator, closed-form transfer, T-matrix stochasticity and
// the isotropic decay law.
VerifyReport cmd_verify(const ScenarioConfig& config, const VerifyOptions& options = {});

// Gate applied to the exact-vs-oracle propagator check at a given tolerance.
double oracle_gate(double tol);

}  // namespace mlz::cli
