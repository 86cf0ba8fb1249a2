#include "mlz/config.hpp"
#include "mlz/errors.hpp"

#include <doctest.h>

#include "check_error.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numbers>

using namespace mlz;
using namespace mlz::cli;
using mlz::testing::error_code;

namespace {

constexpr double pi = std::numbers::pi;

ScenarioConfig parse(std::string_view text) { return resolve(parse_key_values(text)); }

}  // namespace

TEST_CASE("defaults follow the figure captions") {
    const ScenarioConfig c = parse("");
    CHECK(c.eta == 1.0);
    CHECK(c.nu_over_eta == 0.8);
    CHECK(c.j == HalfInteger::from_twice(1));
    CHECK(c.nu_tau_c == doctest::Approx(10 * pi).epsilon(1e-15));
    CHECK(c.points == 2001);
    CHECK(c.tol == 1e-10);
    CHECK(c.initial_level() == c.j);
    CHECK_FALSE(c.scenario.has_value());
    CHECK(c.format == OutputFormat::csv);
}

TEST_CASE("key-value syntax") {
    const KeyValues kv = parse_key_values(R"(
# leading comment
eta = 2.5          # trailing comment
j = "3/2"
out = "a # not a comment.csv"
sweep_values = [pi, 2pi, 10 * pi, 1e-3]
  nu_tau_c=pi/2
)");
    CHECK(kv.size() == 5);
    const ScenarioConfig c = resolve(kv);
    CHECK(c.eta == 2.5);
    CHECK(c.j == HalfInteger::from_twice(3));
    CHECK(c.out == "a # not a comment.csv");
    REQUIRE(c.sweep_values.size() == 4);
    CHECK(c.sweep_values[0] == pi);
    CHECK(c.sweep_values[1] == 2 * pi);
    CHECK(c.sweep_values[2] == 10 * pi);
    CHECK(c.sweep_values[3] == 1e-3);
    CHECK(c.nu_tau_c == pi / 2);

    CHECK(parse("sweep_values = []").sweep_values.empty());
    CHECK(parse("nu_tau_c = 3 * pi / 4").nu_tau_c == 0.75 * pi);
}

TEST_CASE("malformed input is rejected") {
    const auto code = [](std::string_view text) { return error_code([&] { parse(text); }); };
    CHECK(code("eta 2") == Errc::config);
    CHECK(code("etta = 2") == Errc::config);
    CHECK(code("eta = 1\neta = 2") == Errc::config);
    CHECK(code("eta =") == Errc::config);
    CHECK(code("eta = one") == Errc::config);
    CHECK(code("eta = 1.0.0") == Errc::config);
    CHECK(code("points = 2.5") == Errc::config);
    CHECK(code("points = 1") == Errc::config);
    CHECK(code("sweep_values = 1, 2") == Errc::config);
    CHECK(code("sweep_values = [1, 2,]") == Errc::config);
    CHECK(code("format = xml") == Errc::config);
    CHECK(code("scenario = magic") == Errc::config);
    CHECK(code("noise = fields") == Errc::config);
    CHECK(code("nu_tau_c = pi/0") == Errc::config);
    CHECK(code("nu_tau_c = 2pix") == Errc::config);
    CHECK(code("nu_tau_c = 0") == Errc::config);
    CHECK(code("gamma = -0.1") == Errc::config);
    CHECK(code("tol = 1e-2") == Errc::invalid_tolerance);

    // Model errors keep their own codes.
    CHECK(code("eta = 0") == Errc::eta_not_positive);
    CHECK(code("nu_over_eta = 1.5") == Errc::nu_exceeds_eta);
    CHECK(code("nu = 0") == Errc::nu_not_positive);
    CHECK(code("j = 1/3") == Errc::invalid_spin);
    CHECK(code("j = 1\nm = 1/2") == Errc::invalid_level);

    // The line number is part of the message.
    try {
        parse("eta = 1\n\n  bogus = 3\n");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        CHECK(std::string(e.what()).find("bogus") != std::string::npos);
    }
}

TEST_CASE("alternative spellings are mutually exclusive") {
    CHECK(error_code([] { parse("nu = 0.5\nnu_over_eta = 0.5"); }) == Errc::config);
    CHECK(error_code([] { parse("tau_c = 3\nnu_tau_c = 3"); }) == Errc::config);
    CHECK(error_code([] { parse("gamma = 0.1\ngamma_z = 0.1"); }) == Errc::config);

    const ScenarioConfig c = parse("eta = 2\nnu = 1.6\ntau_c = 5");
    CHECK(c.nu_over_eta == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(c.nu() == doctest::Approx(1.6).epsilon(1e-15));
    CHECK(c.nu_tau_c == doctest::Approx(8.0).epsilon(1e-15));

    const ScenarioConfig g = parse("gamma = 0.01");
    CHECK(g.gamma_x == 0.01);
    CHECK(g.gamma_y == 0.01);
    CHECK(g.gamma_z == 0.01);
}

TEST_CASE("later sources override earlier ones") {
    const KeyValues file = parse_key_values("nu_over_eta = 0.5\ngamma = 0.01\npoints = 11");
    SUBCASE("plain override") {
        const ScenarioConfig c = resolve(merge(file, {{"points", "21"}}));
        CHECK(c.points == 21);
        CHECK(c.nu_over_eta == 0.5);
    }
    SUBCASE("partner keys") {
        const ScenarioConfig c = resolve(merge(file, {{"nu", "0.25"}, {"gamma_z", "0"}}));
        CHECK(c.nu_over_eta == 0.25);
        CHECK(c.gamma_x == 0.01);
        CHECK(c.gamma_y == 0.01);
        CHECK(c.gamma_z == 0.0);
    }
    SUBCASE("shared gamma replaces components") {
        const KeyValues split = parse_key_values("gamma_x = 0.2\ngamma_z = 0.3");
        const ScenarioConfig c = resolve(merge(split, {{"gamma", "0.1"}}));
        CHECK(c.gamma_x == 0.1);
        CHECK(c.gamma_y == 0.1);
        CHECK(c.gamma_z == 0.1);
    }
    CHECK(error_code([&] { merge(file, {{"colour", "red"}}); }) == Errc::config);
}

TEST_CASE("rendering round-trips") {
    ScenarioConfig c;
    c.eta = 1.0 / 3.0;
    c.nu_over_eta = 0.1 + 0.2;
    c.j = HalfInteger::from_twice(5);
    c.m = HalfInteger::from_twice(-3);
    c.nu_tau_c = 7 * pi;
    c.points = 123;
    c.gamma_x = 1e-3;
    c.gamma_z = 5e-3;
    c.tol = 3e-11;
    c.out = R"(dir with "quotes"\file.csv)";
    c.format = OutputFormat::json;
    c.scenario = Scenario::transitions;
    c.initial = InitialState::jz;
    c.labels = TransitionLabels::jz;
    c.sweep_axis = SweepAxis::gamma;
    c.sweep_values = {1e-3, 0.1 + 0.2, pi};
    c.noise = Scenario::dephasing;

    const std::string text = render(c);
    CHECK(parse(text) == c);
    CHECK(render(parse(text)) == text);
    CHECK(parse(render(ScenarioConfig{})) == ScenarioConfig{});

    // engine_version is accepted so dataset headers re-parse.
    CHECK(parse(text + "engine_version = mlz 1.0.0\n") == c);

    // Every rendered key is known.
    const std::vector<std::string> keys = known_keys();
    for (const auto& [key, value] : to_key_values(c)) {
        CHECK(std::find(keys.begin(), keys.end(), key) != keys.end());
    }
}

TEST_CASE("config files") {
    const std::string path = "mlz_test_config.cfg";
    {
        std::ofstream out(path);
        out << "j = 1\nm = 0\nscenario = transitions\n";
    }
    const ScenarioConfig c = resolve(read_config_file(path));
    std::remove(path.c_str());
    CHECK(c.j == HalfInteger::from_twice(2));
    CHECK(c.initial_level() == HalfInteger::from_twice(0));
    CHECK(c.scenario == Scenario::transitions);
    CHECK(error_code([] { read_config_file("/nonexistent/mlz.cfg"); }) == Errc::config);
}

TEST_CASE("number formatting keeps full precision") {
    for (double v : {0.1, 1.0 / 3.0, pi, 1e-300, -2.5e17, 0.0}) {
        CHECK(std::stod(format_number(v)) == v);
    }
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(2001) == "2001");
}
