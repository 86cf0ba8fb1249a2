#include "mlz/open_system.hpp"

#include "mlz/errors.hpp"
#include "mlz/exact.hpp"
#include "mlz/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace mlz {

namespace {

void require_two_level(const ModelParams& params) {
    if (params.j().twice() != 1) {
        throw Error(Errc::unsupported_spin,
                    fmt::format("noise dynamics is implemented for j = 1/2 only, got j = {}", params.j().str()));
    }
}

}  // namespace

void require_rates(const DampingRates& rates) {
    for (double g : {rates.gamma_x, rates.gamma_y, rates.gamma_z}) {
        if (!(g >= 0.0) || !std::isfinite(g)) {
            throw Error(Errc::invalid_rate, fmt::format("damping rate {} must be finite and non-negative", g));
        }
    }
}

Eigen::Vector3d bloch_rhs(const ModelParams& params, const DampingRates& rates, double t, const Eigen::Vector3d& r) {
    require_two_level(params);
    const auto [ox, oz] = field_components(params, t);
    Eigen::Matrix3d m;
    m << 0.5 * (rates.gamma_y + rates.gamma_z), oz, 0.0,
         -oz, 0.5 * (rates.gamma_x + rates.gamma_z), ox,
         0.0, -ox, 0.5 * (rates.gamma_x + rates.gamma_y);
    return -m * r;
}

std::vector<BlochVector> integrate_master(const ModelParams& params, const DampingRates& rates, const BlochVector& r0,
                                          std::span<const double> times, double tol) {
    require_two_level(params);
    require_rates(rates);
    if (r0.r.norm() > 1.0 + 1e-12) {
        throw Error(Errc::unphysical_state, fmt::format("Bloch vector length {} exceeds 1", r0.r.norm()));
    }
    if (times.empty() || times.front() != r0.t) {
        throw Error(Errc::grid_mismatch, "the first output time must equal the initial state's time");
    }
    const auto rhs = [&](const OdeState& y, OdeState& dydt, double t) {
        const Eigen::Vector3d d = bloch_rhs(params, rates, t, Eigen::Vector3d(y[0], y[1], y[2]));
        dydt[0] = d.x();
        dydt[1] = d.y();
        dydt[2] = d.z();
    };
    const OdeResult ode = integrate_dense(rhs, {r0.r.x(), r0.r.y(), r0.r.z()}, times, tol);
    std::vector<BlochVector> out;
    out.reserve(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const OdeState& y = ode.samples[k];
        out.push_back({times[k], Eigen::Vector3d(y[0], y[1], y[2])});
    }
    return out;
}

Eigen::Vector3d target_bloch_vector(const ModelParams& params, double t) {
    require_two_level(params);
    const Eigen::Vector2cd phi = eigenbasis(params, t).col(0);
    const std::complex<double> coherence = std::conj(phi(0)) * phi(1);  // <-|rho|+>
    return {2.0 * coherence.real(), 2.0 * coherence.imag(), std::norm(phi(0)) - std::norm(phi(1))};
}

double fidelity(const ModelParams& params, const BlochVector& r) {
    return 0.5 * std::abs(1.0 + r.r.dot(target_bloch_vector(params, r.t)));
}

FidelityCurve noise_scenario(const ModelParams& params, const DampingRates& rates, double tau_c, int num_points,
                             double tol) {
    require_two_level(params);
    if (!(tau_c > 0.0)) throw Error(Errc::invalid_window, fmt::format("tau_c = {} must be positive", tau_c));
    FidelityCurve curve;
    curve.times = uniform_grid(-tau_c, tau_c, num_points);
    curve.states = integrate_master(params, rates, {-tau_c, Eigen::Vector3d::UnitZ()}, curve.times, tol);
    curve.values.reserve(curve.states.size());
    for (const BlochVector& b : curve.states) curve.values.push_back(fidelity(params, b));
    if (rates.is_isotropic()) {
        const double r0 = curve.states.front().r.norm();
        double worst = 0.0;
        for (const BlochVector& b : curve.states) {
            const double expected = r0 * std::exp(-rates.gamma_x * (b.t - curve.times.front()));
            worst = std::max(worst, std::abs(b.r.norm() - expected));
        }
        curve.decay_law_residual = worst;
    }
    return curve;
}

FidelityCurve dephasing_scenario(const ModelParams& params, double gamma_z, double tau_c, int num_points, double tol) {
    return noise_scenario(params, DampingRates::dephasing(gamma_z), tau_c, num_points, tol);
}

FidelityCurve spin_flip_scenario(const ModelParams& params, double gamma, double tau_c, int num_points, double tol) {
    return noise_scenario(params, DampingRates::isotropic(gamma), tau_c, num_points, tol);
}

}  // namespace mlz
