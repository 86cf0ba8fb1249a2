#include "mlz/commands.hpp"

#include "mlz/errors.hpp"
#include "mlz/exact.hpp"
#include "mlz/integrator.hpp"
#include "mlz/model.hpp"
#include "mlz/open_system.hpp"
#include "mlz/oracle.hpp"

#include <cmath>
#include <fmt/format.h>

namespace mlz::cli {

namespace {

ModelParams params_of(const ScenarioConfig& c) { return ModelParams::make(c.eta, c.nu(), c.j); }

Dataset start(const ScenarioConfig& c, std::vector<std::string> columns) {
    Dataset d;
    d.meta = dataset_meta(c);
    d.columns = std::move(columns);
    return d;
}

std::vector<double> nu_t_grid(const ScenarioConfig& c) { return uniform_grid(-c.nu_tau_c, c.nu_tau_c, c.points); }

std::string level_tag(HalfInteger m) { return fmt::format("m={}", m.str(true)); }

void require_scenario(const ScenarioConfig& c, std::initializer_list<Scenario> allowed, std::string_view command) {
    if (!c.scenario) return;
    for (Scenario s : allowed) {
        if (*c.scenario == s) return;
    }
    throw Error(Errc::config, fmt::format("scenario '{}' does not apply to the {} command", to_string(*c.scenario), command));
}

}  // namespace

Dataset cmd_fields(const ScenarioConfig& config) {
    require_scenario(config, {Scenario::fields}, "fields");
    const ModelParams p = params_of(config);
    Dataset d = start(config, {"nu_t", "omega_x_over_eta", "omega_z_over_eta"});
    for (double nt : nu_t_grid(config)) {
        const auto [ox, oz] = field_components(p, nt / p.nu());
        d.rows.push_back({nt, ox / p.eta(), oz / p.eta()});
    }
    return d;
}

Dataset cmd_levels(const ScenarioConfig& config) {
    require_scenario(config, {Scenario::levels}, "levels");
    const ModelParams p = params_of(config);
    std::vector<std::string> cols{"nu_t"};
    for (int k = 0; k < p.dim(); ++k) cols.push_back(fmt::format("E_ad[{}]/eta", level_tag(level_at(p.j(), k))));
    for (int k = 0; k < p.dim(); ++k) cols.push_back(fmt::format("E_diab[{}]/eta", level_tag(level_at(p.j(), k))));
    Dataset d = start(config, std::move(cols));
    for (double nt : nu_t_grid(config)) {
        const double t = nt / p.nu();
        std::vector<double> row{nt};
        for (int k = 0; k < p.dim(); ++k) row.push_back(adiabatic_energy(p, level_at(p.j(), k), t) / p.eta());
        for (int k = 0; k < p.dim(); ++k) row.push_back(diabatic_energy(p, level_at(p.j(), k), t) / p.eta());
        d.rows.push_back(std::move(row));
    }
    return d;
}

Dataset cmd_populations(const ScenarioConfig& config) {
    require_scenario(config, {Scenario::oracle, Scenario::exact}, "populations");
    const ModelParams p = params_of(config);
    const SpinOperators ops = spin_operators(p.j());
    const int level = level_index(p.j(), config.initial_level());
    const double t0 = -config.tau_c();

    const Eigen::VectorXcd psi0 = config.initial == InitialState::asymptotic
                                      ? Eigen::VectorXcd(eigenbasis(p, t0).col(level))
                                      : Eigen::VectorXcd(Eigen::VectorXcd::Unit(p.dim(), level));

    std::vector<std::string> cols{"nu_t"};
    for (int k = 0; k < p.dim(); ++k) cols.push_back(fmt::format("p[{}]", level_tag(level_at(p.j(), k))));
    Dataset d = start(config, std::move(cols));

    const std::vector<double> grid = nu_t_grid(config);
    std::vector<double> times(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) times[k] = grid[k] / p.nu();
    times.front() = t0;

    std::vector<Eigen::VectorXcd> states;
    if (config.scenario == Scenario::exact) {
        for (double t : times) states.push_back(propagator(p, t0, t) * psi0);
    } else {
        for (QuantumState& s : integrate_schrodinger(p, ops, {t0, psi0}, times, config.tol)) {
            states.push_back(std::move(s.amplitudes));
        }
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        std::vector<double> row{grid[k]};
        for (int m = 0; m < p.dim(); ++m) row.push_back(std::norm(states[k](m)));
        d.rows.push_back(std::move(row));
    }
    return d;
}

Dataset cmd_transitions(const ScenarioConfig& config) {
    require_scenario(config, {Scenario::transitions}, "transitions");
    const ModelParams p = params_of(config);
    const SpinOperators ops = spin_operators(p.j());
    const HalfInteger n = config.initial_level();
    const int col = level_index(p.j(), n);

    std::vector<std::string> cols{"nu_t"};
    for (int k = 0; k < p.dim(); ++k) {
        cols.push_back(fmt::format("T[{},n={}]", level_tag(level_at(p.j(), k)), n.str(true)));
    }
    Dataset d = start(config, std::move(cols));

    const std::vector<Trajectory> runs =
        adiabatic_trajectories(p, ops, -config.tau_c(), config.tau_c(), config.points, config.tol);
    const std::vector<double> grid = nu_t_grid(config);
    const std::vector<TransitionMatrix> history = transition_history(p, ops, runs);
    for (std::size_t k = 0; k < history.size(); ++k) {
        const Eigen::MatrixXd t = config.labels == TransitionLabels::jz ? history[k].jz_labelled()
                                                                         : history[k].probabilities;
        std::vector<double> row{grid[k]};
        for (int m = 0; m < p.dim(); ++m) row.push_back(t(m, col));
        d.rows.push_back(std::move(row));
    }
    return d;
}

Dataset cmd_noise(const ScenarioConfig& config) {
    require_scenario(config, {Scenario::dephasing, Scenario::spinflip}, "noise");
    const ModelParams p = params_of(config);
    if (p.j().twice() != 1) {
        throw Error(Errc::unsupported_spin, fmt::format("noise runs need j = 1/2, got j = {}", p.j().str()));
    }
    const DampingRates rates{config.gamma_x * p.nu(), config.gamma_y * p.nu(), config.gamma_z * p.nu()};
    if (config.scenario == Scenario::dephasing && (config.gamma_x != 0.0 || config.gamma_y != 0.0)) {
        throw Error(Errc::config, "the dephasing scenario requires gamma_x = gamma_y = 0");
    }
    if (config.scenario == Scenario::spinflip && !rates.is_isotropic()) {
        throw Error(Errc::config, "the spinflip scenario requires gamma_x = gamma_y = gamma_z (use gamma)");
    }
    const FidelityCurve curve = noise_scenario(p, rates, config.tau_c(), config.points, config.tol);
    const std::vector<double> grid = nu_t_grid(config);
    Dataset d = start(config, {"nu_t", "fidelity", "p_minus", "bloch_norm"});
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const Eigen::Vector3d& r = curve.states[k].r;
        d.rows.push_back({grid[k], curve.values[k], 0.5 * (1.0 - r.z()), r.norm()});
    }
    return d;
}

Dataset cmd_sweep(const ScenarioConfig& config) {
    require_scenario(config, {Scenario::sweep}, "sweep");
    if (!config.sweep_axis) throw Error(Errc::config, "sweep needs sweep_axis (tau_c, gamma or eta_over_nu)");
    const ModelParams p = params_of(config);

    switch (*config.sweep_axis) {
        case SweepAxis::tau_c: {
            Dataset d = start(config, {"nu_t", "P", "P_delta", "bound"});
            for (double nt : config.sweep_values) {
                const TransferReport r = transfer_probability(p, nt / p.nu());
                d.rows.push_back({nt, r.probability, r.loss, r.bound});
            }
            return d;
        }
        case SweepAxis::eta_over_nu: {
            Dataset d = start(config, {"nu_t", "eta_over_nu", "P", "P_delta", "bound"});
            for (double ratio : config.sweep_values) {
                if (!(ratio >= 1.0)) {
                    throw Error(Errc::nu_exceeds_eta, fmt::format("eta_over_nu = {} must be at least 1", ratio));
                }
                const ModelParams q = ModelParams::make(p.eta(), p.eta() / ratio, p.j());
                const TransferReport r = transfer_probability(q, config.nu_tau_c / q.nu());
                d.rows.push_back({config.nu_tau_c, ratio, r.probability, r.loss, r.bound});
            }
            return d;
        }
        case SweepAxis::gamma: {
            Dataset d = start(config, {"nu_t", "gamma_over_nu", "fidelity"});
            for (double g : config.sweep_values) {
                if (!(g >= 0.0)) throw Error(Errc::invalid_rate, fmt::format("gamma/nu = {} must be non-negative", g));
                const DampingRates rates = config.noise == Scenario::dephasing ? DampingRates::dephasing(g * p.nu())
                                                                               : DampingRates::isotropic(g * p.nu());
                const FidelityCurve curve = noise_scenario(p, rates, config.tau_c(), config.points, config.tol);
                d.rows.push_back({config.nu_tau_c, g, curve.final_fidelity()});
            }
            return d;
        }
    }
    return {};
}

}  // namespace mlz::cli
