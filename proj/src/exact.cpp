#include "mlz/exact.hpp"

#include "mlz/errors.hpp"
#include "mlz/wigner.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace mlz {

namespace {

using cd = std::complex<double>;

double frame_phi(const ModelParams& params) { return -std::asin(params.nu() / params.eta()); }

Eigen::MatrixXcd rotation(const ModelParams& params, double theta) {
    const HalfInteger j = params.j();
    const Eigen::MatrixXd d = wigner_d(j, theta).d;
    const double phi = frame_phi(params);
    Eigen::MatrixXcd g(d.rows(), d.cols());
    for (int row = 0; row < d.rows(); ++row) {
        const cd phase = std::polar(1.0, level_at(j, row).value() * phi);
        g.row(row) = phase * d.row(row).cast<cd>();
    }
    return g;
}

Eigen::MatrixXcd alpha_dot_j(const SpinOperators& ops, const Eigen::Vector3d& alpha) {
    return alpha.x() * ops.jx + alpha.y() * ops.jy + alpha.z() * ops.jz;
}

double spectral_norm(const Eigen::MatrixXcd& m) {
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

}  // namespace

InvariantFrame invariant_frame(const ModelParams& params, double t) {
    const double nt = params.nu() * t;
    const double s = std::sqrt(1.0 + nt * nt);
    InvariantFrame f;
    f.t = t;
    // cos(theta) = -nu t / s and sin(theta) = 1 / s >= 0 pin the [0, pi] branch.
    f.theta = std::atan2(1.0, -nt);
    f.phi = frame_phi(params);
    f.alpha = Eigen::Vector3d(params.kappa(), params.nu() / params.eta(), nt) / s;
    return f;
}

InvariantFrame invariant_frame(const ModelParams& params, Asymptote limit) {
    const bool past = limit == Asymptote::past;
    InvariantFrame f;
    f.t = past ? -HUGE_VAL : HUGE_VAL;
    f.theta = past ? 0.0 : std::numbers::pi;
    f.phi = frame_phi(params);
    f.alpha = Eigen::Vector3d(0.0, 0.0, past ? -1.0 : 1.0);
    return f;
}

Eigen::MatrixXcd invariant_matrix(const ModelParams& params, const SpinOperators& ops, double t) {
    return alpha_dot_j(ops, invariant_frame(params, t).alpha);
}

Eigen::MatrixXcd invariant_matrix(const ModelParams& params, const SpinOperators& ops, Asymptote limit) {
    return alpha_dot_j(ops, invariant_frame(params, limit).alpha);
}

double default_fd_step(const ModelParams& params) { return 1e-5 / params.nu(); }

double invariant_defect(const ModelParams& params, const SpinOperators& ops, double t, double dt) {
    if (!(dt > 0.0)) throw Error(Errc::invalid_step, fmt::format("finite-difference step dt = {} must be positive", dt));
    const Eigen::MatrixXcd h = hamiltonian(params, ops, t);
    const Eigen::MatrixXcd inv = invariant_matrix(params, ops, t);
    const Eigen::MatrixXcd derivative =
        (invariant_matrix(params, ops, t + dt) - invariant_matrix(params, ops, t - dt)) / (2.0 * dt);
    const Eigen::MatrixXcd residual = cd(0.0, 1.0) * derivative - (h * inv - inv * h);
    return spectral_norm(residual);
}

Eigen::MatrixXcd eigenbasis(const ModelParams& params, double t) {
    return rotation(params, invariant_frame(params, t).theta);
}

Eigen::MatrixXcd eigenbasis(const ModelParams& params, Asymptote limit) {
    return rotation(params, invariant_frame(params, limit).theta);
}

double diabatic_energy(const ModelParams& params, HalfInteger m, double t) {
    level_index(params.j(), m);
    const double nt = params.nu() * t;
    return -m.value() * params.eta() * params.kappa() / std::sqrt(1.0 + nt * nt);
}

double adiabatic_energy(const ModelParams& params, HalfInteger m, double t) {
    level_index(params.j(), m);
    return -m.value() * field_magnitude(params, t);
}

LRPhase lr_phase(const ModelParams& params, HalfInteger m, double t0, double t1) {
    level_index(params.j(), m);
    if (t0 > t1) throw Error(Errc::invalid_window, fmt::format("phase window [{}, {}] is reversed", t0, t1));
    const double nu = params.nu();
    const double value =
        m.value() * params.eta() * params.kappa() * (std::asinh(nu * t1) - std::asinh(nu * t0)) / nu;
    return {m, t0, t1, value};
}

std::complex<double> geometric_connection(const ModelParams& params, HalfInteger m, double t, double dt) {
    if (!(dt > 0.0)) throw Error(Errc::invalid_step, fmt::format("finite-difference step dt = {} must be positive", dt));
    const int col = level_index(params.j(), m);
    const Eigen::VectorXcd here = eigenbasis(params, t).col(col);
    const Eigen::VectorXcd ahead = eigenbasis(params, t + dt).col(col);
    const Eigen::VectorXcd behind = eigenbasis(params, t - dt).col(col);
    const Eigen::VectorXcd derivative = (ahead - behind) / (2.0 * dt);
    return cd(0.0, 1.0) * here.dot(derivative);
}

Eigen::MatrixXcd propagator(const ModelParams& params, double t0, double t1) {
    if (t0 > t1) throw Error(Errc::invalid_window, fmt::format("propagator window [{}, {}] is reversed", t0, t1));
    const HalfInteger j = params.j();
    const int d = params.dim();
    const Eigen::MatrixXcd g0 = eigenbasis(params, t0);
    const Eigen::MatrixXcd g1 = eigenbasis(params, t1);
    Eigen::VectorXcd phases(d);
    for (int k = 0; k < d; ++k) phases(k) = std::polar(1.0, lr_phase(params, level_at(j, k), t0, t1).value);
    return g1 * phases.asDiagonal() * g0.adjoint();
}

TransferReport transfer_probability(const ModelParams& params, double tau_c) {
    if (params.j().twice() != 1) {
        throw Error(Errc::unsupported_spin,
                    fmt::format("the closed-form transfer probability is two-level only (j = 1/2, got {}); "
                                "use propagator() for multi-level sweeps",
                                params.j().str()));
    }
    if (!(tau_c > 0.0)) throw Error(Errc::invalid_window, fmt::format("tau_c = {} must be positive", tau_c));
    const double nt = params.nu() * tau_c;
    TransferReport r;
    r.tau_c = tau_c;
    r.bound = 1.0 / (1.0 + nt * nt);
    r.phase_plus = lr_phase(params, HalfInteger::from_twice(1), -tau_c, tau_c).value;
    // The phase entering the closed form is the relative one, (Phi_+ - Phi_-) / 2 = Phi_+.
    const double c = std::cos(r.phase_plus);
    r.loss = r.bound * c * c;
    r.probability = 1.0 - r.loss;
    r.kappa_zero = params.kappa() == 0.0;
    return r;
}

}  // namespace mlz
