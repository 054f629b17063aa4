#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "srgbode/simulation.hpp"
#include "srgbode/surface_io.hpp"

using namespace srgbode;

namespace {

constexpr double kPi = std::numbers::pi;
const TransferFunction kExample({1.0}, {2.0, 1.0});  // 1/(s+2)

PeriodicInput single_sine(double omega, double amplitude, double phase = 0.0) {
    PeriodicInput in;
    in.omega = omega;
    in.terms = {{1, amplitude, phase}};
    return in;
}

Nonlinearity zero_nl() {
    return Nonlinearity::custom("zero", [](double) { return 0.0; }, true);
}

}  // namespace

TEST_CASE("rendered input reproduces the sine") {
    const auto in = single_sine(2.0, 1.0);
    const double T = in.period();
    const auto samples = render_input(in, T / 1000, 1);
    REQUIRE(samples.size() == 1001);
    for (size_t i = 0; i < samples.size(); i += 37) {
        const double t = i * (T / 1000);
        CHECK(samples[i] == doctest::Approx(std::sin(2.0 * t)).epsilon(1e-12));
    }
}

TEST_CASE("rendered inputs have half-wave symmetry") {
    PeriodicInput in;
    in.omega = 3.0;
    in.terms = {{1, 0.7, 0.3}, {3, 0.4, 1.1}, {5, 0.2, -2.0}};
    const auto samples = render_input(in, in.period() / 1000, 2);
    const size_t half = 500;
    for (size_t i = 0; i + half < samples.size(); i += 13)
        CHECK(std::abs(samples[i + half] + samples[i]) < 1e-12);
}

TEST_CASE("empty coefficient lists render to zero") {
    PeriodicInput in;
    in.omega = 1.0;
    const auto samples = render_input(in, in.period() / 512, 1);
    for (double v : samples) CHECK(v == 0.0);
}

TEST_CASE("render rejects bad inputs") {
    PeriodicInput even;
    even.omega = 1.0;
    even.terms = {{2, 1.0, 0.0}};
    CHECK_THROWS_AS(render_input(even, even.period() / 1000, 1), std::invalid_argument);
    const auto ok = single_sine(1.0, 1.0);
    CHECK_THROWS_AS(render_input(ok, ok.period() / 100, 1), std::invalid_argument);
}

TEST_CASE("harmonic energy of a pure sine is amplitude^2 pi") {
    for (double A : {0.5, 1.0, 2.0}) {
        for (double w : {0.1, 1.0, 10.0}) {
            const auto in = single_sine(w, A);
            const double T = in.period();
            const auto samples = render_input(in, T / 2000, 1);
            const double measured = harmonic_energy(samples, T / 2000, T);
            CAPTURE(A);
            CAPTURE(w);
            CHECK(measured == doctest::Approx(A * A * kPi).epsilon(1e-3));
            CHECK(in.harmonic_energy_exact() == doctest::Approx(A * A * kPi).epsilon(1e-12));
        }
    }
}

TEST_CASE("harmonic energy of a two-harmonic signal") {
    PeriodicInput in;
    in.omega = 1.0;
    in.terms = {{1, 1.0, 0.0}, {3, 1.0, 0.0}};
    const double T = in.period();
    const auto samples = render_input(in, T / 2000, 1);
    const double expected = kPi * std::sqrt((1.0 + 1.0) * (1.0 + 9.0));
    CHECK(harmonic_energy(samples, T / 2000, T) == doctest::Approx(expected).epsilon(5e-3));
    CHECK(in.harmonic_energy_exact() == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("harmonic energy of the zero signal is zero") {
    const std::vector<double> zeros(2000, 0.0);
    CHECK(harmonic_energy(zeros, 2.0 * kPi / 2000, 2.0 * kPi) == doctest::Approx(0.0));
}

TEST_CASE("zero input yields the zero trajectory") {
    const auto ss = to_state_space(kExample);
    PeriodicInput in;
    in.omega = 2.0;
    const auto sim = simulate_lure(ss, Nonlinearity::sine(), in, in.period() / 500, 4);
    for (double y : sim.y) CHECK(y == 0.0);
    for (double e : sim.e) CHECK(e == 0.0);
}

TEST_CASE("identity feedback reproduces the linear closed-loop gain") {
    const auto ss = to_state_space(kExample);
    const auto in = single_sine(1.0, 1.0);
    const double T = in.period();
    const double dt = default_sim_dt(ss, T);
    const auto sim = simulate_lure(ss, Nonlinearity::identity(), in, dt, 40);
    const auto steady = extract_steady_state(sim, T, 1e-6);
    REQUIRE(steady.converged);
    const double expected = std::abs(1.0 / Complex(3.0, 1.0));  // |1/(j+3)|
    CHECK(steady.rms / in.rms() == doctest::Approx(expected).epsilon(0.01));
    CHECK(steady.rms <= steady.sup);
}

TEST_CASE("integrator shows fourth-order convergence") {
    const auto ss = to_state_space(kExample);
    const auto in = single_sine(2.0, 1.0);
    const double T = in.period();
    auto steady_rms = [&](int spp) {
        const auto sim = simulate_lure(ss, Nonlinearity::identity(), in, T / spp, 40);
        return extract_steady_state(sim, T, 1e-9).rms;
    };
    const double coarse = steady_rms(50);
    const double mid = steady_rms(100);
    const double fine = steady_rms(200);
    const double d1 = std::abs(coarse - mid);
    const double d2 = std::abs(mid - fine);
    REQUIRE(d2 > 0.0);
    CHECK(d1 / d2 > 12.0);  // halving dt should shrink the change ~16x
}

TEST_CASE("divergent loops are reported") {
    const auto ss = to_state_space(TransferFunction({1.0}, {-1.0, 1.0}));  // 1/(s-1)
    const auto in = single_sine(2.0, 1.0);
    CHECK_THROWS_AS(simulate_lure(ss, zero_nl(), in, in.period() / 500, 30),
                    std::runtime_error);
}

TEST_CASE("slow transients are flagged as not converged") {
    const auto ss = to_state_space(TransferFunction({1.0}, {0.01, 1.0}));  // 1/(s+0.01)
    const auto in = single_sine(2.0, 1.0);
    const double T = in.period();
    const auto sim = simulate_lure(ss, zero_nl(), in, T / 500, 3);
    const auto steady = extract_steady_state(sim, T, 1e-6);
    CHECK_FALSE(steady.converged);
}

TEST_CASE("steady-state extraction of the zero signal") {
    const auto ss = to_state_space(kExample);
    PeriodicInput in;
    in.omega = 2.0;
    const auto sim = simulate_lure(ss, Nonlinearity::sine(), in, in.period() / 500, 4);
    const auto steady = extract_steady_state(sim, in.period(), 1e-6);
    CHECK(steady.converged);
    CHECK(steady.rms == doctest::Approx(0.0));
    CHECK(steady.sup == doctest::Approx(0.0));
}

TEST_CASE("extraction preconditions") {
    const auto ss = to_state_space(kExample);
    const auto in = single_sine(2.0, 1.0);
    const auto sim = simulate_lure(ss, Nonlinearity::identity(), in, in.period() / 500, 2);
    CHECK_THROWS_AS(extract_steady_state(sim, in.period(), 1e-6), std::invalid_argument);
}

TEST_CASE("simulation guards") {
    const auto ss = to_state_space(kExample);
    const auto in = single_sine(2.0, 1.0);
    CHECK_THROWS_AS(simulate_lure(ss, Nonlinearity::sine(), in, 1.0, 10),
                    std::invalid_argument);  // dt too large for the pole at -2
    const auto biproper = to_state_space(TransferFunction({1.0, 1.0}, {2.0, 1.0}));
    CHECK_THROWS_AS(simulate_lure(biproper, Nonlinearity::sine(), in, 1e-3, 10),
                    std::invalid_argument);  // algebraic feedthrough
}

TEST_CASE("surface validation finds no violations and is deterministic") {
    AnalysisConfig cfg;
    cfg.system = kExample;
    cfg.nonlinearity = Nonlinearity::sine();
    cfg.omega_grid = {1.0, 2.0};
    cfg.u_grid = {0.0, 0.01, 1.0};
    const GainSurface surface = gain_surface(cfg);

    SimParams sim;
    sim.max_periods = 80;
    const auto report = validate_surface(surface, 3, 3, 0.01, 7, sim);
    CHECK(report.total_violations == 0);
    CHECK(report.total_samples == 9);
    for (const auto& p : report.points) CHECK(p.U > 0.0);  // U = 0 rows skipped

    const auto report2 = validate_surface(surface, 3, 3, 0.01, 7, sim);
    CHECK(validation_report_json(report) == validation_report_json(report2));
}

TEST_CASE("corrupted bounds are caught by the oracle") {
    AnalysisConfig cfg;
    cfg.system = kExample;
    cfg.nonlinearity = Nonlinearity::sine();
    cfg.omega_grid = {1.0, 2.0};
    cfg.u_grid = {0.01, 1.0};
    GainSurface surface = gain_surface(cfg);
    for (auto& rec : surface.records) rec.gamma *= 0.5;  // negative control

    SimParams sim;
    sim.max_periods = 80;
    const auto report = validate_surface(surface, 4, 3, 0.01, 7, sim);
    CHECK(report.total_violations > 0);
}
