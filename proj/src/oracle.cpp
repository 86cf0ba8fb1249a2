#include "mlz/oracle.hpp"

#include "mlz/errors.hpp"
#include "mlz/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace mlz {

namespace {

using cd = std::complex<double>;

OdeState pack(const Eigen::VectorXcd& v) {
    OdeState y(static_cast<std::size_t>(2 * v.size()));
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        y[static_cast<std::size_t>(2 * k)] = v(k).real();
        y[static_cast<std::size_t>(2 * k + 1)] = v(k).imag();
    }
    return y;
}

Eigen::VectorXcd unpack(const OdeState& y) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(y.size() / 2));
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        v(k) = cd(y[static_cast<std::size_t>(2 * k)], y[static_cast<std::size_t>(2 * k + 1)]);
    }
    return v;
}

// H(t) = Omega_x J_x + Omega_z J_z with J_x real symmetric tridiagonal and J_z diagonal,
// so -i H psi is evaluated without forming H.
struct SchrodingerRhs {
    const ModelParams& params;
    Eigen::VectorXd jz_diag;
    Eigen::VectorXd jx_upper;  // J_x(k, k+1)

    SchrodingerRhs(const ModelParams& p, const SpinOperators& ops) : params(p) {
        jz_diag = ops.jz.diagonal().real();
        jx_upper.resize(ops.dim - 1);
        for (int k = 0; k + 1 < ops.dim; ++k) jx_upper(k) = ops.jx(k, k + 1).real();
    }

    void operator()(const OdeState& y, OdeState& dydt, double t) const {
        const auto [ox, oz] = field_components(params, t);
        const auto d = static_cast<std::size_t>(jz_diag.size());
        for (std::size_t k = 0; k < d; ++k) {
            double hr = oz * jz_diag(static_cast<Eigen::Index>(k)) * y[2 * k];
            double hi = oz * jz_diag(static_cast<Eigen::Index>(k)) * y[2 * k + 1];
            if (k > 0) {
                const double c = ox * jx_upper(static_cast<Eigen::Index>(k - 1));
                hr += c * y[2 * (k - 1)];
                hi += c * y[2 * (k - 1) + 1];
            }
            if (k + 1 < d) {
                const double c = ox * jx_upper(static_cast<Eigen::Index>(k));
                hr += c * y[2 * (k + 1)];
                hi += c * y[2 * (k + 1) + 1];
            }
            // -i (hr + i hi) = hi - i hr
            dydt[2 * k] = hi;
            dydt[2 * k + 1] = -hr;
        }
    }
};

void fix_largest_component(Eigen::Ref<Eigen::VectorXcd> v) {
    Eigen::Index best = 0;
    double best_mag = -1.0;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        // Ties (to roundoff) resolve to the lowest index for determinism.
        const double mag = std::abs(v(k));
        if (mag > best_mag + 1e-12) {
            best_mag = mag;
            best = k;
        }
    }
    v *= std::conj(v(best)) / std::abs(v(best));
}

void require_common_grid(const ModelParams& params, std::span<const Trajectory> trajectories) {
    if (static_cast<int>(trajectories.size()) != params.dim()) {
        throw Error(Errc::grid_mismatch,
                    fmt::format("expected {} trajectories for j = {}, got {}", params.dim(), params.j().str(),
                                trajectories.size()));
    }
    const Trajectory& first = trajectories.front();
    for (const Trajectory& tr : trajectories) {
        if (tr.size() != first.size()) throw Error(Errc::grid_mismatch, "trajectories have different lengths");
        for (std::size_t k = 0; k < tr.size(); ++k) {
            if (tr[k].t != first[k].t || tr[k].amplitudes.size() != params.dim()) {
                throw Error(Errc::grid_mismatch, "trajectories are not sampled on a common grid");
            }
        }
    }
}

TransitionMatrix transition_at(const ModelParams& params, const SpinOperators& ops,
                               std::span<const Trajectory> trajectories, std::size_t sample) {
    const double t = trajectories.front()[sample].t;
    const AdiabaticFrame frame = adiabatic_frame(params, ops, t);
    const int d = params.dim();
    TransitionMatrix tm{t, Eigen::MatrixXd(d, d)};
    for (int n = 0; n < d; ++n) {
        const Eigen::VectorXcd overlaps = frame.vectors.adjoint() * trajectories[static_cast<std::size_t>(n)][sample].amplitudes;
        tm.probabilities.col(n) = overlaps.cwiseAbs2();
    }
    return tm;
}

}  // namespace

Trajectory integrate_schrodinger(const ModelParams& params, const SpinOperators& ops, const QuantumState& psi0,
                                 std::span<const double> times, double tol) {
    require_tolerance(tol);
    if (psi0.amplitudes.size() != ops.dim || ops.dim != params.dim()) {
        throw Error(Errc::grid_mismatch, "initial state dimension does not match the spin operators");
    }
    if (std::abs(psi0.amplitudes.norm() - 1.0) > 1e-12) {
        throw Error(Errc::not_normalized, fmt::format("initial state has norm {}", psi0.amplitudes.norm()));
    }
    if (times.empty() || times.front() != psi0.t) {
        throw Error(Errc::grid_mismatch, "the first output time must equal the initial state's time");
    }
    const SchrodingerRhs rhs(params, ops);
    const OdeResult ode = integrate_dense(
        [&rhs](const OdeState& y, OdeState& dydt, double t) { rhs(y, dydt, t); }, pack(psi0.amplitudes), times, tol);
    Trajectory out;
    out.reserve(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) out.push_back({times[k], unpack(ode.samples[k])});
    return out;
}

Trajectory integrate_schrodinger(const ModelParams& params, const SpinOperators& ops, const QuantumState& psi0,
                                 double t1, int num_points, double tol) {
    if (psi0.t > t1) throw Error(Errc::invalid_window, fmt::format("window [{}, {}] is reversed", psi0.t, t1));
    const std::vector<double> grid = uniform_grid(psi0.t, t1, num_points);
    return integrate_schrodinger(params, ops, psi0, grid, tol);
}

Eigen::MatrixXcd oracle_propagator(const ModelParams& params, const SpinOperators& ops, double t0, double t1,
                                   double tol) {
    if (t0 > t1) throw Error(Errc::invalid_window, fmt::format("window [{}, {}] is reversed", t0, t1));
    const int d = params.dim();
    Eigen::MatrixXcd u(d, d);
    if (t0 == t1) return Eigen::MatrixXcd::Identity(d, d);
    const double times[] = {t0, t1};
    for (int k = 0; k < d; ++k) {
        const QuantumState basis{t0, Eigen::VectorXcd::Unit(d, k)};
        u.col(k) = integrate_schrodinger(params, ops, basis, times, tol).back().amplitudes;
    }
    return u;
}

AdiabaticFrame adiabatic_frame(const ModelParams& params, const SpinOperators& ops, double t) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian(params, ops, t));
    AdiabaticFrame frame{t, solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index k = 0; k + 1 < frame.energies.size(); ++k) {
        if (frame.energies(k + 1) - frame.energies(k) < 1e-12 * params.eta()) {
            throw Error(Errc::degenerate_spectrum,
                        fmt::format("adiabatic levels {} and {} are degenerate at t = {}", k, k + 1, t));
        }
    }
    for (Eigen::Index k = 0; k < frame.vectors.cols(); ++k) fix_largest_component(frame.vectors.col(k));
    return frame;
}

AdiabaticFrame adiabatic_frame(const ModelParams& params, const SpinOperators& ops, double t,
                               const AdiabaticFrame& prev) {
    AdiabaticFrame frame = adiabatic_frame(params, ops, t);
    if (prev.vectors.cols() != frame.vectors.cols()) {
        throw Error(Errc::grid_mismatch, "previous adiabatic frame has a different dimension");
    }
    for (Eigen::Index k = 0; k < frame.vectors.cols(); ++k) {
        const cd overlap = prev.vectors.col(k).dot(frame.vectors.col(k));
        if (std::abs(overlap) <= 0.5) {
            throw Error(Errc::level_tracking,
                        fmt::format("lost track of adiabatic level {} between t = {} and t = {} (overlap {}); "
                                    "use a finer grid",
                                    k, prev.t, t, std::abs(overlap)));
        }
        frame.vectors.col(k) *= std::conj(overlap) / std::abs(overlap);
    }
    return frame;
}

Eigen::MatrixXd TransitionMatrix::jz_labelled() const {
    if (t <= 0.0) return probabilities;
    return probabilities.colwise().reverse();
}

std::vector<Trajectory> adiabatic_trajectories(const ModelParams& params, const SpinOperators& ops, double t0,
                                               double t1, int num_points, double tol) {
    const AdiabaticFrame start = adiabatic_frame(params, ops, t0);
    std::vector<Trajectory> out;
    out.reserve(static_cast<std::size_t>(params.dim()));
    for (int n = 0; n < params.dim(); ++n) {
        out.push_back(integrate_schrodinger(params, ops, {t0, start.vectors.col(n)}, t1, num_points, tol));
    }
    return out;
}

TransitionMatrix transition_matrix(const ModelParams& params, const SpinOperators& ops,
                                   std::span<const Trajectory> trajectories, double t) {
    require_common_grid(params, trajectories);
    const Trajectory& first = trajectories.front();
    const auto it = std::find_if(first.begin(), first.end(), [t](const QuantumState& s) { return s.t == t; });
    if (it == first.end()) throw Error(Errc::grid_mismatch, fmt::format("t = {} is not a sample time", t));
    return transition_at(params, ops, trajectories, static_cast<std::size_t>(it - first.begin()));
}

std::vector<TransitionMatrix> transition_history(const ModelParams& params, const SpinOperators& ops,
                                                 std::span<const Trajectory> trajectories) {
    require_common_grid(params, trajectories);
    std::vector<TransitionMatrix> out;
    out.reserve(trajectories.front().size());
    for (std::size_t k = 0; k < trajectories.front().size(); ++k) {
        out.push_back(transition_at(params, ops, trajectories, k));
    }
    return out;
}

double survival_probability(const ModelParams& params, const SpinOperators& ops,
                            std::span<const Trajectory> trajectories, HalfInteger n, double t) {
    const int idx = level_index(params.j(), n);
    return transition_matrix(params, ops, trajectories, t).probabilities(idx, idx);
}

}  // namespace mlz
