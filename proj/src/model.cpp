#include "mlz/model.hpp"

#include "mlz/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace mlz {

ModelParams ModelParams::make(double eta, double nu, HalfInteger j) {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw Error(Errc::eta_not_positive, fmt::format("eta = {} must be positive and finite", eta));
    }
    if (!(nu > 0.0) || !std::isfinite(nu)) {
        throw Error(Errc::nu_not_positive, fmt::format("nu = {} must be positive and finite", nu));
    }
    if (nu > eta) {
        throw Error(Errc::nu_exceeds_eta,
                    fmt::format("nu = {} exceeds eta = {}: kappa = sqrt(1 - (nu/eta)^2) would be imaginary", nu, eta));
    }
    require_spin(j);
    const double ratio = nu / eta;
    return ModelParams(eta, nu, std::sqrt((1.0 - ratio) * (1.0 + ratio)), j);
}

ModelParams ModelParams::with_inconsistent_kappa(double eta, double nu, double kappa, HalfInteger j) {
    require_spin(j);
    return ModelParams(eta, nu, kappa, j);
}

SpinOperators spin_operators(HalfInteger j) {
    const int d = spin_dimension(j);
    const double jv = j.value();
    SpinOperators ops;
    ops.dim = d;
    ops.jz = Eigen::MatrixXcd::Zero(d, d);
    Eigen::MatrixXcd raise = Eigen::MatrixXcd::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const double m = jv - k;
        ops.jz(k, k) = m;
        // J_+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits one row above |m>.
        if (k > 0) raise(k - 1, k) = std::sqrt(jv * (jv + 1.0) - m * (m + 1.0));
    }
    const Eigen::MatrixXcd lower = raise.adjoint();
    ops.jx = 0.5 * (raise + lower);
    ops.jy = std::complex<double>(0.0, -0.5) * (raise - lower);
    return ops;
}

FieldComponents field_components(const ModelParams& params, double t) {
    const double nt = params.nu() * t;
    const double envelope = params.eta() / (1.0 + nt * nt);
    return {envelope, envelope * params.kappa() * nt};
}

Eigen::MatrixXcd hamiltonian(const ModelParams& params, const SpinOperators& ops, double t) {
    const auto [ox, oz] = field_components(params, t);
    return ox * ops.jx + oz * ops.jz;
}

double field_magnitude(const ModelParams& params, double t) {
    const auto [ox, oz] = field_components(params, t);
    return std::hypot(ox, oz);
}

}  // namespace mlz
