#include "mlz/exact.hpp"
#include "mlz/integrator.hpp"
#include "mlz/open_system.hpp"

#include <doctest.h>

#include "check_error.hpp"
#include "oracles.hpp"

#include <numbers>
#include <random>

using namespace mlz;
using mlz::testing::error_code;

namespace {

constexpr double pi = std::numbers::pi;
const HalfInteger half = HalfInteger::from_twice(1);

ModelParams reference() { return ModelParams::make(1.0, 0.8, half); }

}  // namespace

TEST_CASE("Bloch equation matches the master equation") {
    const ModelParams p = reference();
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0), g(0.0, 0.3), time(-20.0, 20.0);
    for (int k = 0; k < 100; ++k) {
        const DampingRates rates{g(rng), g(rng), g(rng)};
        const double t = time(rng);
        const Eigen::Vector3d r = Eigen::Vector3d(u(rng), u(rng), u(rng)) / std::sqrt(3.0);
        const FieldComponents f = field_components(p, t);
        const Eigen::Vector3d expected =
            testing::lindblad_bloch_derivative(f.omega_x, f.omega_z, rates.gamma_x, rates.gamma_y, rates.gamma_z, r);
        CHECK((bloch_rhs(p, rates, t, r) - expected).norm() < 1e-14);
    }
}

TEST_CASE("Bloch equation special cases") {
    const ModelParams p = reference();
    SUBCASE("pure precession preserves the length") {
        const Eigen::Vector3d r(0.3, -0.5, 0.7);
        for (double t : {-4.0, 0.0, 2.2}) CHECK(std::abs(r.dot(bloch_rhs(p, {}, t, r))) < 1e-15);
    }
    SUBCASE("isotropic decay without field") {
        // At |t| -> infinity the field vanishes.
        const Eigen::Vector3d r(0.3, -0.5, 0.7);
        const Eigen::Vector3d d = bloch_rhs(p, DampingRates::isotropic(0.2), 1e150, r);
        CHECK((d + 0.2 * r).norm() < 1e-15);
    }
    SUBCASE("t = 0 from |+>") {
        const Eigen::Vector3d d = bloch_rhs(p, {}, 0.0, Eigen::Vector3d::UnitZ());
        CHECK(d.x() == 0.0);
        CHECK(d.y() == -p.eta());
        CHECK(d.z() == 0.0);
    }
}

TEST_CASE("rates and spin are validated") {
    CHECK(error_code([] { require_rates({-1e-3, 0.0, 0.0}); }) == Errc::invalid_rate);
    CHECK(error_code([] { require_rates({0.0, std::nan(""), 0.0}); }) == Errc::invalid_rate);
    CHECK(error_code([] { require_rates({0.0, 0.0, INFINITY}); }) == Errc::invalid_rate);
    CHECK_NOTHROW(require_rates({}));

    const ModelParams p = reference();
    const ModelParams spin_one = ModelParams::make(1.0, 0.8, HalfInteger::from_twice(2));
    const double times[] = {0.0, 1.0};
    CHECK(error_code([&] { integrate_master(p, {}, {0.0, Eigen::Vector3d(0.0, 0.8, 0.8)}, times); }) ==
          Errc::unphysical_state);
    CHECK(error_code([&] { integrate_master(p, {}, {0.5, Eigen::Vector3d::UnitZ()}, times); }) ==
          Errc::grid_mismatch);
    CHECK(error_code([&] { integrate_master(p, {-1.0, 0.0, 0.0}, {0.0, Eigen::Vector3d::UnitZ()}, times); }) ==
          Errc::invalid_rate);
    CHECK(error_code([&] { integrate_master(spin_one, {}, {0.0, Eigen::Vector3d::UnitZ()}, times); }) ==
          Errc::unsupported_spin);
    CHECK(error_code([&] { fidelity(spin_one, {0.0, Eigen::Vector3d::UnitZ()}); }) == Errc::unsupported_spin);
    CHECK(error_code([&] { dephasing_scenario(spin_one, 0.01, 10.0); }) == Errc::unsupported_spin);
    CHECK(error_code([&] { spin_flip_scenario(p, 0.01, 0.0); }) == Errc::invalid_window);
}

TEST_CASE("fidelity") {
    const ModelParams p = reference();
    for (double t : {-30.0, -1.0, 0.0, 0.6, 40.0}) {
        CAPTURE(t);
        const Eigen::Vector3d n = target_bloch_vector(p, t);
        CHECK(n.norm() == doctest::Approx(1.0).epsilon(1e-14));
        // Direct Pauli expectations in the invariant eigenvector.
        const Eigen::Vector2cd phi = eigenbasis(p, t).col(0);
        const std::complex<double> coherence = std::conj(phi(0)) * phi(1);
        CHECK(n.x() == doctest::Approx(2 * coherence.real()));
        CHECK(n.y() == doctest::Approx(2 * coherence.imag()));
        CHECK(n.z() == doctest::Approx(std::norm(phi(0)) - std::norm(phi(1))));

        CHECK(fidelity(p, {t, n}) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(fidelity(p, {t, Eigen::Vector3d::Zero()}) == 0.5);
        CHECK(std::abs(fidelity(p, {t, -n})) < 1e-15);
    }
}

TEST_CASE("closed-system limit") {
    const ModelParams p = reference();
    const double tol = 1e-10;
    for (double nt : {8.0, 10 * pi}) {
        CAPTURE(nt);
        const double tau = nt / p.nu();
        const FidelityCurve c = noise_scenario(p, {}, tau, 2001, tol);
        double drift = 0.0;
        for (const BlochVector& b : c.states) drift = std::max(drift, std::abs(b.r.norm() - 1.0));
        CHECK(drift < 10 * tol);

        // |+> is not exactly |phi_+(-tau)>; the overlap is frozen through the whole sweep.
        const double overlap = 0.5 * (1.0 + nt / std::sqrt(1.0 + nt * nt));
        CHECK(c.final_fidelity() == doctest::Approx(overlap).epsilon(1e-9));
        CHECK(c.values.front() == doctest::Approx(overlap).epsilon(1e-12));

        // The population on |-> is the closed-form transfer probability.
        const double p_minus = 0.5 * (1.0 - c.states.back().r.z());
        CHECK(std::abs(p_minus - transfer_probability(p, tau).probability) < 1e-8);
    }

    // Starting in the target state keeps F at one.
    const double tau = 10 * pi / p.nu();
    const std::vector<double> grid = uniform_grid(-tau, tau, 201);
    const auto states = integrate_master(p, {}, {-tau, target_bloch_vector(p, -tau)}, grid, tol);
    for (const BlochVector& b : states) CHECK(fidelity(p, b) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("isotropic channel decays at the bare rate") {
    const ModelParams p = reference();
    for (double g_over_nu : {1e-3, 1e-2, 0.3}) {
        const double tol = 1e-10;
        const FidelityCurve c = spin_flip_scenario(p, g_over_nu * p.nu(), 8.0 / p.nu(), 801, tol);
        REQUIRE(c.decay_law_residual.has_value());
        CHECK(*c.decay_law_residual < 10 * tol);
        for (std::size_t k = 1; k < c.states.size(); ++k) CHECK(c.states[k].r.norm() <= c.states[k - 1].r.norm());
    }
    CHECK_FALSE(dephasing_scenario(p, 0.01, 10.0, 11).decay_law_residual.has_value());
}

TEST_CASE("noise scenario endpoints") {
    const ModelParams p = reference();
    // Reference values from an independent density-matrix integration, tol 1e-12.
    SUBCASE("dephasing, nu tau_c = 10 pi") {
        const double tau = 10 * pi / p.nu();
        const double expected[] = {0.99228, 0.99596, 0.99898};
        const double rates[] = {1e-2, 5e-3, 1e-3};
        for (int k = 0; k < 3; ++k) {
            CAPTURE(rates[k]);
            const double f = dephasing_scenario(p, rates[k] * p.nu(), tau).final_fidelity();
            CHECK(f == doctest::Approx(expected[k]).epsilon(1e-5));
        }
    }
    SUBCASE("spin flip, nu tau_c = 8") {
        const double tau = 8.0 / p.nu();
        const double expected[] = {0.92278, 0.95799, 0.98826};
        const double rates[] = {1e-2, 5e-3, 1e-3};
        for (int k = 0; k < 3; ++k) {
            CAPTURE(rates[k]);
            const double f = spin_flip_scenario(p, rates[k] * p.nu(), tau).final_fidelity();
            CHECK(f == doctest::Approx(expected[k]).epsilon(1e-5));
        }
    }
}

TEST_CASE("noise only ever lowers the final fidelity") {
    const ModelParams p = reference();
    double last_dephasing = 2.0;
    double last_flip = 2.0;
    for (double g : {0.0, 1e-3, 5e-3, 1e-2, 5e-2}) {
        const double fd = dephasing_scenario(p, g * p.nu(), 10 * pi / p.nu(), 401).final_fidelity();
        const double fs = spin_flip_scenario(p, g * p.nu(), 8.0 / p.nu(), 401).final_fidelity();
        CHECK(fd <= last_dephasing);
        CHECK(fs <= last_flip);
        last_dephasing = fd;
        last_flip = fs;
    }
    // Strong flips wash the state out completely.
    CHECK(spin_flip_scenario(p, p.nu(), 8.0 / p.nu(), 101).final_fidelity() == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("dephasing acts near the anticrossing") {
    const ModelParams p = reference();
    const FidelityCurve c = dephasing_scenario(p, 0.01 * p.nu(), 10 * pi / p.nu(), 2001);
    std::size_t steepest = 1;
    for (std::size_t k = 1; k < c.values.size(); ++k) {
        if (c.values[k] - c.values[k - 1] < c.values[steepest] - c.values[steepest - 1]) steepest = k;
    }
    const double nu_t = p.nu() * 0.5 * (c.times[steepest] + c.times[steepest - 1]);
    CHECK(std::abs(nu_t) < 2.0);
    for (double v : c.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-9);
    }
}
