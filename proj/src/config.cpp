#include "mlz/config.hpp"

#include "mlz/errors.hpp"
#include "mlz/integrator.hpp"
#include "mlz/model.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace mlz::cli {

namespace {

constexpr std::array key_table{
    "eta",   "nu_over_eta", "nu",      "j",      "nu_tau_c", "tau_c",     "points",      "m",
    "gamma", "gamma_x",     "gamma_y", "gamma_z", "tol",     "out",       "format",      "scenario",
    "initial", "labels",    "sweep_axis", "sweep_values", "noise", "engine_version",
};

Error config_error(const std::string& what) { return Error(Errc::config, what); }

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool is_known(std::string_view key) {
    return std::find(key_table.begin(), key_table.end(), key) != key_table.end();
}

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

// Removes a trailing comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        if (line[k] == '\\' && quoted) {
            ++k;
        } else if (line[k] == '"') {
            quoted = !quoted;
        } else if (line[k] == '#' && !quoted) {
            return line.substr(0, k);
        }
    }
    return line;
}

bool parse_plain_double(std::string_view s, double& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

double parse_number(const std::string& key, std::string_view raw) {
    const std::string_view s = trim(raw);
    const auto bad = [&] { return config_error(fmt::format("{}: '{}' is not a number", key, raw)); };
    double value = 0.0;
    if (const auto pi = s.find("pi"); pi != std::string_view::npos) {
        std::string_view factor = trim(s.substr(0, pi));
        std::string_view divisor = trim(s.substr(pi + 2));
        if (!factor.empty() && factor.back() == '*') factor = trim(factor.substr(0, factor.size() - 1));
        double f = 1.0;
        if (factor == "-") {
            f = -1.0;
        } else if (!factor.empty() && factor != "+" && !parse_plain_double(factor, f)) {
            throw bad();
        }
        double div = 1.0;
        if (!divisor.empty()) {
            if (divisor.front() != '/' || !parse_plain_double(divisor.substr(1), div) || div == 0.0) throw bad();
        }
        value = f * std::numbers::pi / div;
    } else if (!parse_plain_double(s, value)) {
        throw bad();
    }
    if (!std::isfinite(value)) throw bad();
    return value;
}

int parse_int(const std::string& key, std::string_view raw) {
    const std::string_view s = trim(raw);
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw config_error(fmt::format("{}: '{}' is not an integer", key, raw));
    }
    return value;
}

std::vector<double> parse_list(const std::string& key, std::string_view raw) {
    std::string_view s = trim(raw);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
        throw config_error(fmt::format("{}: expected a list like [1, 2, 3], got '{}'", key, raw));
    }
    s = trim(s.substr(1, s.size() - 2));
    std::vector<double> out;
    while (!s.empty()) {
        const auto comma = s.find(',');
        out.push_back(parse_number(key, s.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        s = trim(s.substr(comma + 1));
        if (s.empty()) throw config_error(fmt::format("{}: trailing comma in '{}'", key, raw));
    }
    return out;
}

template <typename Enum, std::size_t N>
Enum parse_enum(const std::string& key, std::string_view raw, const std::array<Enum, N>& options) {
    const std::string value = unquote(trim(raw));
    for (Enum e : options) {
        if (to_string(e) == value) return e;
    }
    std::string allowed;
    for (Enum e : options) allowed += fmt::format("{}{}", allowed.empty() ? "" : ", ", to_string(e));
    throw config_error(fmt::format("{}: '{}' is not one of {{{}}}", key, value, allowed));
}

constexpr std::array all_scenarios{Scenario::fields,      Scenario::levels,    Scenario::exact,
                                   Scenario::oracle,      Scenario::transitions, Scenario::dephasing,
                                   Scenario::spinflip,    Scenario::sweep};

}  // namespace

std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::fields: return "fields";
        case Scenario::levels: return "levels";
        case Scenario::exact: return "exact";
        case Scenario::oracle: return "oracle";
        case Scenario::transitions: return "transitions";
        case Scenario::dephasing: return "dephasing";
        case Scenario::spinflip: return "spinflip";
        case Scenario::sweep: return "sweep";
    }
    return "?";
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

std::string_view to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::tau_c: return "tau_c";
        case SweepAxis::gamma: return "gamma";
        case SweepAxis::eta_over_nu: return "eta_over_nu";
    }
    return "?";
}

std::string_view to_string(InitialState s) { return s == InitialState::asymptotic ? "asymptotic" : "jz"; }

std::string_view to_string(TransitionLabels l) { return l == TransitionLabels::energy ? "energy" : "jz"; }

std::string unquote(std::string_view s) {
    if (s.size() < 2 || s.front() != '"' || s.back() != '"') return std::string(s);
    std::string out;
    for (std::size_t k = 1; k + 1 < s.size(); ++k) {
        if (s[k] == '\\' && k + 2 < s.size()) ++k;
        out.push_back(s[k]);
    }
    return out;
}

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

std::vector<std::string> known_keys() { return {key_table.begin(), key_table.end()}; }

KeyValues parse_key_values(std::string_view text) {
    KeyValues kv;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const std::string_view raw = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        const std::string_view line = trim(strip_comment(raw));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw config_error(fmt::format("line {}: expected 'key = value', got '{}'", line_no, line));
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (!is_known(key)) throw config_error(fmt::format("line {}: unknown key '{}'", line_no, key));
        if (value.empty()) throw config_error(fmt::format("line {}: key '{}' has no value", line_no, key));
        if (!kv.emplace(key, std::string(value)).second) {
            throw config_error(fmt::format("line {}: duplicate key '{}'", line_no, key));
        }
    }
    return kv;
}

KeyValues read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error(fmt::format("cannot open config file '{}'", path));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_key_values(buffer.str());
}

KeyValues merge(KeyValues base, const KeyValues& overrides) {
    // An override replaces its mutually exclusive partner too; a shared gamma in the
    // base is split so that the components not overridden keep its value.
    for (const auto& [key, value] : overrides) {
        if (!is_known(key)) throw config_error(fmt::format("unknown key '{}'", key));
        if (key == "nu") base.erase("nu_over_eta");
        if (key == "nu_over_eta") base.erase("nu");
        if (key == "tau_c") base.erase("nu_tau_c");
        if (key == "nu_tau_c") base.erase("tau_c");
        if (key == "gamma") {
            for (const char* k : {"gamma_x", "gamma_y", "gamma_z"}) base.erase(k);
        }
        if (key.starts_with("gamma_")) {
            if (const auto it = base.find("gamma"); it != base.end()) {
                const std::string shared = it->second;
                base.erase(it);
                for (const char* k : {"gamma_x", "gamma_y", "gamma_z"}) base.emplace(k, shared);
            }
        }
        base[key] = value;
    }
    return base;
}

ScenarioConfig resolve(const KeyValues& kv) {
    for (const auto& [key, value] : kv) {
        if (!is_known(key)) throw config_error(fmt::format("unknown key '{}'", key));
    }
    const auto find = [&](const char* key) -> const std::string* {
        const auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };
    const auto exclusive = [&](const char* a, const char* b) {
        if (find(a) && find(b)) throw config_error(fmt::format("'{}' and '{}' are mutually exclusive", a, b));
    };

    ScenarioConfig c;
    if (auto* v = find("eta")) c.eta = parse_number("eta", *v);
    exclusive("nu", "nu_over_eta");
    if (auto* v = find("nu_over_eta")) c.nu_over_eta = parse_number("nu_over_eta", *v);
    if (auto* v = find("nu")) c.nu_over_eta = parse_number("nu", *v) / c.eta;
    if (auto* v = find("j")) c.j = HalfInteger::parse(unquote(trim(*v)));
    // Validates eta, nu, j and the kappa constraint.
    (void)ModelParams::make(c.eta, c.nu(), c.j);

    exclusive("tau_c", "nu_tau_c");
    if (auto* v = find("nu_tau_c")) c.nu_tau_c = parse_number("nu_tau_c", *v);
    if (auto* v = find("tau_c")) c.nu_tau_c = parse_number("tau_c", *v) * c.nu();
    if (!(c.nu_tau_c > 0.0)) throw config_error(fmt::format("nu_tau_c = {} must be positive", c.nu_tau_c));

    if (auto* v = find("points")) c.points = parse_int("points", *v);
    if (c.points < 2) throw config_error(fmt::format("points = {} must be at least 2", c.points));

    if (auto* v = find("m")) {
        const HalfInteger m = HalfInteger::parse(unquote(trim(*v)));
        level_index(c.j, m);
        c.m = m;
    }

    if (auto* v = find("gamma")) {
        for (const char* k : {"gamma_x", "gamma_y", "gamma_z"}) exclusive("gamma", k);
        c.gamma_x = c.gamma_y = c.gamma_z = parse_number("gamma", *v);
    }
    if (auto* v = find("gamma_x")) c.gamma_x = parse_number("gamma_x", *v);
    if (auto* v = find("gamma_y")) c.gamma_y = parse_number("gamma_y", *v);
    if (auto* v = find("gamma_z")) c.gamma_z = parse_number("gamma_z", *v);
    for (double g : {c.gamma_x, c.gamma_y, c.gamma_z}) {
        if (g < 0.0) throw config_error(fmt::format("damping rate {} must be non-negative", g));
    }

    if (auto* v = find("tol")) c.tol = parse_number("tol", *v);
    require_tolerance(c.tol);

    if (auto* v = find("out")) c.out = unquote(trim(*v));
    if (auto* v = find("format")) {
        c.format = parse_enum("format", *v, std::array{OutputFormat::csv, OutputFormat::json});
    }
    if (auto* v = find("scenario")) c.scenario = parse_enum("scenario", *v, all_scenarios);
    if (auto* v = find("initial")) {
        c.initial = parse_enum("initial", *v, std::array{InitialState::asymptotic, InitialState::jz});
    }
    if (auto* v = find("labels")) {
        c.labels = parse_enum("labels", *v, std::array{TransitionLabels::energy, TransitionLabels::jz});
    }
    if (auto* v = find("sweep_axis")) {
        c.sweep_axis =
            parse_enum("sweep_axis", *v, std::array{SweepAxis::tau_c, SweepAxis::gamma, SweepAxis::eta_over_nu});
    }
    if (auto* v = find("sweep_values")) c.sweep_values = parse_list("sweep_values", *v);
    if (auto* v = find("noise")) c.noise = parse_enum("noise", *v, std::array{Scenario::dephasing, Scenario::spinflip});
    return c;
}

KeyValues to_key_values(const ScenarioConfig& c) {
    KeyValues kv;
    kv["eta"] = format_number(c.eta);
    kv["nu_over_eta"] = format_number(c.nu_over_eta);
    kv["j"] = c.j.str();
    kv["nu_tau_c"] = format_number(c.nu_tau_c);
    kv["points"] = std::to_string(c.points);
    if (c.m) kv["m"] = c.m->str();
    kv["gamma_x"] = format_number(c.gamma_x);
    kv["gamma_y"] = format_number(c.gamma_y);
    kv["gamma_z"] = format_number(c.gamma_z);
    kv["tol"] = format_number(c.tol);
    kv["out"] = quote(c.out);
    kv["format"] = std::string(to_string(c.format));
    if (c.scenario) kv["scenario"] = std::string(to_string(*c.scenario));
    kv["initial"] = std::string(to_string(c.initial));
    kv["labels"] = std::string(to_string(c.labels));
    if (c.sweep_axis) kv["sweep_axis"] = std::string(to_string(*c.sweep_axis));
    std::string list = "[";
    for (std::size_t k = 0; k < c.sweep_values.size(); ++k) {
        list += fmt::format("{}{}", k ? ", " : "", format_number(c.sweep_values[k]));
    }
    kv["sweep_values"] = list + "]";
    kv["noise"] = std::string(to_string(c.noise));
    return kv;
}

std::string render(const ScenarioConfig& config) {
    std::string out;
    for (const auto& [key, value] : to_key_values(config)) out += fmt::format("{} = {}\n", key, value);
    return out;
}

}  // namespace mlz::cli
