#include "mlz/integrator.hpp"

#include "mlz/errors.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <fmt/format.h>

namespace mlz {

namespace odeint = boost::numeric::odeint;

// Per-step errors accumulate over thousands of steps; this keeps the global error and
// the norm drift of unitary problems below tol.
constexpr double local_error_fraction = 1e-2;

void require_tolerance(double tol) {
    if (!(tol >= 1e-13 && tol <= 1e-4)) {
        throw Error(Errc::invalid_tolerance, fmt::format("tolerance {} outside [1e-13, 1e-4]", tol));
    }
}

OdeResult integrate_dense(const OdeRhs& rhs, OdeState y0, std::span<const double> times, double tol) {
    require_tolerance(tol);
    OdeResult result;
    if (times.empty()) return result;
    result.samples.reserve(times.size());
    if (times.size() == 1) {
        result.samples.push_back(std::move(y0));
        return result;
    }
    const double span = times.back() - times.front();
    for (std::size_t k = 1; k < times.size(); ++k) {
        const double step = times[k] - times[k - 1];
        if (step == 0.0 || std::signbit(step) != std::signbit(span)) {
            throw Error(Errc::grid_mismatch, "output times must be strictly monotone");
        }
    }

    const double target = std::max(local_error_fraction * tol, 1e-15);
    auto stepper = odeint::make_dense_output(target, target, odeint::runge_kutta_dopri5<OdeState>());
    const double dt0 = std::copysign(std::min(1e-3, std::abs(times[1] - times[0])), span);
    auto observer = [&](const OdeState& y, double) { result.samples.push_back(y); };
    result.steps = odeint::integrate_times(
        stepper, [&rhs](const OdeState& y, OdeState& dydt, double t) { rhs(y, dydt, t); }, y0, times.begin(), times.end(), dt0, observer);
    return result;
}

std::vector<double> uniform_grid(double t0, double t1, int num_points) {
    if (num_points < 1) throw Error(Errc::grid_mismatch, fmt::format("grid needs at least one point, got {}", num_points));
    std::vector<double> grid(static_cast<std::size_t>(num_points));
    if (num_points == 1) {
        grid[0] = t0;
        return grid;
    }
    const int last = num_points - 1;
    for (int k = 0; k <= last; ++k) {
        // Symmetric formula keeps mirrored samples exact negatives on symmetric windows.
        grid[static_cast<std::size_t>(k)] = (t0 * (last - k) + t1 * k) / last;
    }
    grid.front() = t0;
    grid.back() = t1;
    return grid;
}

}  // namespace mlz
