// model.hpp: sweep parameters, spin-j operators and the modulated sweep Hamiltonian
//
//   H(t) = eta / (1 + nu^2 t^2) * (J_x + kappa nu t J_z),   kappa = sqrt(1 - (nu/eta)^2)
//
// Units: hbar = 1, eta and nu are angular frequencies, t is raw time.
// Basis ordering is m = +j, +j-1, ..., -j everywhere in the library.

#pragma once

#include "mlz/spin.hpp"

#include <Eigen/Dense>

namespace mlz {

class ModelParams {
public:
    // Validates 0 < nu <= eta and 1/2 <= j <= 50; kappa is derived.
    static ModelParams make(double eta, double nu, HalfInteger j);

    // Bypasses the kappa constraint. Exists only so verification code can
    // demonstrate that an inconsistent kappa is detected.
    static ModelParams with_inconsistent_kappa(double eta, double nu, double kappa, HalfInteger j);

    double eta() const noexcept { return eta_; }
    double nu() const noexcept { return nu_; }
    double kappa() const noexcept { return kappa_; }
    HalfInteger j() const noexcept { return j_; }
    int dim() const noexcept { return j_.twice() + 1; }

private:
    ModelParams(double eta, double nu, double kappa, HalfInteger j)
        : eta_(eta), nu_(nu), kappa_(kappa), j_(j) {}

    double eta_;
    double nu_;
    double kappa_;
    HalfInteger j_;
};

// J_x, J_y, J_z in the J_z eigenbasis (descending m).
struct SpinOperators {
    int dim{0};
    Eigen::MatrixXcd jx;
    Eigen::MatrixXcd jy;
    Eigen::MatrixXcd jz;
};

SpinOperators spin_operators(HalfInteger j);

struct FieldComponents {
    double omega_x{0.0};
    double omega_z{0.0};
};

FieldComponents field_components(const ModelParams& params, double t);

Eigen::MatrixXcd hamiltonian(const ModelParams& params, const SpinOperators& ops, double t);

// Instantaneous field strength |Omega(t)|; the adiabatic levels are -m |Omega(t)|.
double field_magnitude(const ModelParams& params, double t);

}  // namespace mlz
