// mlz: dataset generator and verification runner for the modulated Landau-Zener sweep.
//
// Exit codes: 0 success, 1 invalid input, 2 a verify check failed.

#include "mlz/commands.hpp"
#include "mlz/config.hpp"
#include "mlz/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace {

using namespace mlz::cli;

struct Flag {
    const char* name;
    const char* key;
    const char* help;
};

// Every flag maps 1:1 onto a config key.
constexpr Flag flags[] = {
    {"--eta", "eta", "field amplitude eta (sets the frequency unit, default 1)"},
    {"--nu-over-eta", "nu_over_eta", "sweep ratio nu/eta in (0, 1] (default 0.8, kappa = 0.6)"},
    {"--nu", "nu", "absolute sweep frequency nu (alternative to --nu-over-eta)"},
    {"--j", "j", "spin quantum number, e.g. 1/2, 1, 3/2"},
    {"--nu-tau-c", "nu_tau_c", "half-window nu*tau_c; accepts e.g. 10pi (default 10pi)"},
    {"--tau-c", "tau_c", "absolute half-window tau_c (alternative to --nu-tau-c)"},
    {"--points", "points", "samples on the nu*t grid (default 2001)"},
    {"--m", "m", "initial level m (default +j)"},
    {"--gamma", "gamma", "isotropic damping rate gamma/nu"},
    {"--gamma-x", "gamma_x", "damping rate gamma_x/nu"},
    {"--gamma-y", "gamma_y", "damping rate gamma_y/nu"},
    {"--gamma-z", "gamma_z", "damping rate gamma_z/nu"},
    {"--tol", "tol", "integrator tolerance in [1e-13, 1e-4] (default 1e-10)"},
    {"--out", "out", "output path (default stdout)"},
    {"--format", "format", "csv or json"},
    {"--scenario", "scenario", "scenario variant, e.g. exact|oracle for populations, dephasing|spinflip for noise"},
    {"--initial", "initial", "populations start state: asymptotic (default) or jz"},
    {"--labels", "labels", "transition row labels: energy (default) or jz"},
    {"--sweep-axis", "sweep_axis", "tau_c, gamma or eta_over_nu"},
    {"--sweep-values", "sweep_values", "comma-separated sweep values, e.g. 1e-3,5e-3,1e-2"},
    {"--noise", "noise", "channel for gamma sweeps: spinflip (default) or dephasing"},
};

struct Invocation {
    std::map<std::string, std::string> values;
    std::string config_path;
    std::optional<double> inject_kappa;
};

void add_common(CLI::App* cmd, Invocation& inv) {
    for (const Flag& f : flags) cmd->add_option(f.name, inv.values[f.key], f.help);
    cmd->add_option("--config", inv.config_path, "flat key = value config file; flags override it");
}

ScenarioConfig load(const Invocation& inv) {
    KeyValues overrides;
    for (const auto& [key, value] : inv.values) {
        if (value.empty()) continue;
        overrides[key] = key == "sweep_values" ? "[" + value + "]" : value;
    }
    KeyValues base = inv.config_path.empty() ? KeyValues{} : read_config_file(inv.config_path);
    return resolve(merge(std::move(base), overrides));
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw mlz::Error(mlz::Errc::config, "cannot write '" + path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Modulated Landau-Zener sweep: exact dynamics, ODE cross-checks and noise datasets"};
    app.require_subcommand(1);

    Invocation inv;
    using Emitter = Dataset (*)(const ScenarioConfig&);
    const std::pair<const char*, Emitter> emitters[] = {
        {"fields", cmd_fields},   {"levels", cmd_levels},         {"populations", cmd_populations},
        {"transitions", cmd_transitions}, {"noise", cmd_noise},   {"sweep", cmd_sweep},
    };
    const char* help[] = {
        "field components Omega_x/eta and Omega_z/eta",
        "adiabatic and diabatic energy levels",
        "level populations from level m",
        "transition-probability matrix column T[m, n]",
        "fidelity under dephasing or isotropic spin-flip noise",
        "endpoint transfer probability or fidelity over a parameter sweep",
    };
    std::vector<CLI::App*> dataset_cmds;
    for (std::size_t k = 0; k < std::size(emitters); ++k) {
        CLI::App* cmd = app.add_subcommand(emitters[k].first, help[k]);
        add_common(cmd, inv);
        dataset_cmds.push_back(cmd);
    }
    CLI::App* verify = app.add_subcommand("verify", "run the cross-check suite; exit 2 on failure");
    add_common(verify, inv);
    verify->add_option("--inject-kappa", inv.inject_kappa,
                       "build the model with this kappa instead of sqrt(1 - (nu/eta)^2)")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const ScenarioConfig config = load(inv);
        if (verify->parsed()) {
            const VerifyReport report = cmd_verify(config, {inv.inject_kappa});
            emit(config.format == OutputFormat::json ? report.to_json() : report.to_csv(), config.out);
            return report.passed() ? 0 : 2;
        }
        for (std::size_t k = 0; k < dataset_cmds.size(); ++k) {
            if (dataset_cmds[k]->parsed()) {
                emit(serialize(emitters[k].second(config), config.format), config.out);
                return 0;
            }
        }
    } catch (const mlz::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
