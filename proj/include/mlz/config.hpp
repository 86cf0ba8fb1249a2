// config.hpp: scenario configuration shared by the CLI and config files
//
// A config file is a flat list of `key = value` lines; '#' starts a comment, strings
// may be quoted, lists are written [a, b, c] and numbers may carry a `pi` factor
// ("10pi", "pi/2"). CLI flags map onto the same keys and override file values.
//
// Dimensionless inputs come first: nu_over_eta, nu_tau_c and rates in
// units of nu. eta sets the absolute frequency scale (default 1).

#pragma once

#include "mlz/spin.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mlz::cli {

enum class Scenario { fields, levels, exact, oracle, transitions, dephasing, spinflip, sweep };
enum class OutputFormat { csv, json };
enum class SweepAxis { tau_c, gamma, eta_over_nu };
enum class InitialState { asymptotic, jz };
enum class TransitionLabels { energy, jz };

std::string_view to_string(Scenario s);
std::string_view to_string(OutputFormat f);
std::string_view to_string(SweepAxis a);
std::string_view to_string(InitialState s);
std::string_view to_string(TransitionLabels l);

struct ScenarioConfig {
    double eta{1.0};
    double nu_over_eta{0.8};
    HalfInteger j{HalfInteger::from_twice(1)};
    double nu_tau_c{10.0 * 3.141592653589793};
    int points{2001};
    std::optional<HalfInteger> m;  // initial level; +j when unset
    double gamma_x{0.0};           // rates in units of nu
    double gamma_y{0.0};
    double gamma_z{0.0};
    double tol{1e-10};
    std::string out;  // empty: stdout
    OutputFormat format{OutputFormat::csv};
    std::optional<Scenario> scenario;
    InitialState initial{InitialState::asymptotic};
    TransitionLabels labels{TransitionLabels::energy};
    std::optional<SweepAxis> sweep_axis;
    std::vector<double> sweep_values;
    Scenario noise{Scenario::spinflip};  // channel for gamma sweeps

    double nu() const { return nu_over_eta * eta; }
    double tau_c() const { return nu_tau_c / nu(); }
    HalfInteger initial_level() const { return m.value_or(j); }

    bool operator==(const ScenarioConfig&) const = default;
};

// Ordered key -> raw value text.
using KeyValues = std::map<std::string, std::string>;

// Parses `key = value` lines. Throws Error(Errc::config) on malformed lines, unknown
// keys and duplicates; messages carry the line number.
KeyValues parse_key_values(std::string_view text);

KeyValues read_config_file(const std::string& path);

// Later maps override earlier ones, including mutually exclusive partner keys
// (nu over nu_over_eta, gamma_x over a shared gamma, ...).
KeyValues merge(KeyValues base, const KeyValues& overrides);

// Validates every value and cross-key constraint. Throws Error(Errc::config) or the
// underlying parameter error.
ScenarioConfig resolve(const KeyValues& kv);

// Canonical key/value form: parse_key_values(render(c)) resolves back to c.
KeyValues to_key_values(const ScenarioConfig& config);
std::string render(const ScenarioConfig& config);

std::vector<std::string> known_keys();

// Strips one level of double quotes and resolves \" and \\ escapes; unquoted text
// is returned unchanged.
std::string unquote(std::string_view s);

// 17 significant digits, shortest of %g style.
std::string format_number(double value);

}  // namespace mlz::cli
