// oracle.hpp: brute-force reference path
//
// Integrates i d|psi>/dt = H(t)|psi> directly, with no knowledge of the invariant,
// and measures the evolved states against the instantaneous eigenvectors of H(t).

#pragma once

#include "mlz/model.hpp"

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace mlz {

inline constexpr double default_tolerance = 1e-10;
inline constexpr int default_grid_points = 2001;

struct QuantumState {
    double t{0.0};
    Eigen::VectorXcd amplitudes;  // J_z basis, m = +j ... -j
};

using Trajectory = std::vector<QuantumState>;

// Samples the solution at every time in `times` (times.front() == psi0.t, monotone in
// either direction). Throws Errc::not_normalized when |psi0| deviates from 1 by more
// than 1e-12, Errc::invalid_tolerance, or Errc::grid_mismatch.
Trajectory integrate_schrodinger(const ModelParams& params, const SpinOperators& ops, const QuantumState& psi0,
                                 std::span<const double> times, double tol = default_tolerance);

// Uniform grid of num_points samples over [t0, t1].
Trajectory integrate_schrodinger(const ModelParams& params, const SpinOperators& ops, const QuantumState& psi0,
                                 double t1, int num_points, double tol = default_tolerance);

// Columns are the evolved basis states |m>, i.e. the numerical U(t1, t0).
Eigen::MatrixXcd oracle_propagator(const ModelParams& params, const SpinOperators& ops, double t0, double t1,
                                   double tol = default_tolerance);

struct AdiabaticFrame {
    double t{0.0};
    Eigen::VectorXd energies;  // ascending; entry k belongs to level m = j - k, energy -m |Omega(t)|
    Eigen::MatrixXcd vectors;  // orthonormal columns
};

// Without a previous frame the gauge makes the largest-magnitude component of each
// vector real and positive. Throws Errc::degenerate_spectrum when two levels are
// closer than 1e-12 eta.
AdiabaticFrame adiabatic_frame(const ModelParams& params, const SpinOperators& ops, double t);

// Continuity gauge: <prev_m | v_m> real and positive. Throws Errc::level_tracking if
// any |<prev_m | v_m>| <= 0.5, which means the time step was too coarse.
AdiabaticFrame adiabatic_frame(const ModelParams& params, const SpinOperators& ops, double t,
                               const AdiabaticFrame& prev);

struct TransitionMatrix {
    double t{0.0};
    // T(m, n) = |<psi_m^ad(t) | psi_n(t)>|^2 with adiabatic rows labelled by energy
    // (row k <-> level j - k) and columns by the initial level of each trajectory.
    Eigen::MatrixXd probabilities;

    // Same matrix with rows relabelled by the J_z state each adiabatic vector tends to
    // at the current time: unchanged for t <= 0, rows reversed for t > 0. In this view
    // complete transfer |n> -> |-n> shows up as T(-n, n) -> 1.
    Eigen::MatrixXd jz_labelled() const;
};

// 2j+1 trajectories, trajectory n starting in the adiabatic eigenvector of level
// j - n at t0, all sampled on the same uniform grid over [t0, t1].
std::vector<Trajectory> adiabatic_trajectories(const ModelParams& params, const SpinOperators& ops, double t0,
                                               double t1, int num_points, double tol = default_tolerance);

// Evaluates T at the grid sample whose time equals t. Throws Errc::grid_mismatch if
// the trajectory count is not 2j+1, the grids differ, or t is not a sample time.
TransitionMatrix transition_matrix(const ModelParams& params, const SpinOperators& ops,
                                   std::span<const Trajectory> trajectories, double t);

// T at every grid sample.
std::vector<TransitionMatrix> transition_history(const ModelParams& params, const SpinOperators& ops,
                                                 std::span<const Trajectory> trajectories);

// Diagonal element T(n, n) at time t.
double survival_probability(const ModelParams& params, const SpinOperators& ops,
                            std::span<const Trajectory> trajectories, HalfInteger n, double t);

}  // namespace mlz
