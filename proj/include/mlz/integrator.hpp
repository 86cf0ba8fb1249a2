#pragma once

#include <functional>
#include <span>
#include <vector>

namespace mlz {

using OdeState = std::vector<double>;

// dy/dt = f(y, t), written into dydt.
using OdeRhs = std::function<void(const OdeState& y, OdeState& dydt, double t)>;

struct OdeResult {
    std::vector<OdeState> samples;  // one per requested output time
    std::size_t steps{0};           // accepted internal steps
};

// Adaptive Dormand-Prince 5(4) with dense output. Output times must be monotone
// (either direction); the first one is the initial time. tol must lie in [1e-13, 1e-4]
// and bounds the accumulated error; the per-step absolute and relative target is tol/100.
OdeResult integrate_dense(const OdeRhs& rhs, OdeState y0, std::span<const double> times, double tol);

void require_tolerance(double tol);

// num_points samples from t0 to t1 inclusive with exact endpoints.
std::vector<double> uniform_grid(double t0, double t1, int num_points);

}  // namespace mlz
