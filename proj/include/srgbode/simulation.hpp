#pragma once

#include <cstdint>
#include <vector>

#include "srgbode/lti.hpp"
#include "srgbode/lure_gain.hpp"
#include "srgbode/nonlinearity.hpp"

namespace srgbode {

struct HarmonicTerm {
    int k = 1;  // odd positive harmonic index
    double amplitude = 0.0;
    double phase = 0.0;
};

/// Periodic input u(t) = sum_i amplitude_i * sin(k_i * omega * t + phase_i).
/// Odd harmonics only, so u(t + T/2) = -u(t) and the signal has no DC
/// component.
struct PeriodicInput {
    double omega = 1.0;
    std::vector<HarmonicTerm> terms;

    double period() const;
    double eval(double t) const;
    double eval_derivative(double t) const;
    /// RMS norm sqrt(sum a_i^2 / 2) (orthogonality of distinct harmonics).
    double rms() const;
    /// Closed form ||u||_T ||u'||_T = pi * sqrt(sum a^2 * sum k^2 a^2).
    double harmonic_energy_exact() const;
    void validate() const;  // throws on non-odd or non-positive harmonics
};

std::vector<double> render_input(const PeriodicInput& input, double dt, int n_periods);

/// Trapezoidal ||u||_T times central-difference ||u'||_T over one period of
/// samples (with or without the duplicated endpoint).
double harmonic_energy(const std::vector<double>& u_samples, double dt, double T);

struct SimResult {
    double dt = 0.0;
    std::vector<double> times;
    std::vector<double> u;
    std::vector<double> e;
    std::vector<double> y;
    std::vector<std::vector<double>> states;
};

/// Fixed-step RK4 integration of x' = A x + B (u - phi(C x)), y = C x, from
/// x(0) = 0. Requires a strictly proper realization (D = 0) so the loop has
/// no algebraic part. dt is snapped to an integer number of steps per period
/// and checked against the fastest open-loop pole. Throws on divergence
/// (state norm above 1e9).
SimResult simulate_lure(const StateSpace& ss, const Nonlinearity& nl, const PeriodicInput& input,
                        double dt, int max_periods);

/// T/samples_per_period capped by 0.1/|fastest pole|.
double default_sim_dt(const StateSpace& ss, double T, int samples_per_period = 2000);

struct SteadyState {
    std::vector<double> period_samples;  // last simulated period of y
    double rms = 0.0;
    double sup = 0.0;
    bool converged = false;
    int periods_used = 0;  // first period index (1-based) meeting the tolerance
};

/// Declares convergence when the RMS deviation between consecutive period
/// windows of y drops below tol relative to the window RMS.
SteadyState extract_steady_state(const SimResult& sim, double T, double tol = 1e-6);

struct SimParams {
    int samples_per_period = 2000;
    double steady_tol = 1e-6;
    int max_periods = 200;
};

struct ValidationSample {
    PeriodicInput input;
    double measured_gain = 0.0;
    double gain_bound = 0.0;
    double measured_sup = 0.0;
    double sup_bound = 0.0;
    bool converged = false;
    bool ok = false;
};

struct ValidationPoint {
    double omega = 0.0;
    double U = 0.0;
    std::size_t record_index = 0;
    std::vector<ValidationSample> samples;
    int violations = 0;
};

struct ValidationReport {
    std::vector<ValidationPoint> points;
    int total_samples = 0;
    int total_violations = 0;
    std::uint64_t seed = 0;
    double margin = 0.0;
};

/// Empirical soundness check: random inputs with harmonic energy just under
/// each sampled record's U are simulated and the measured RMS gain and
/// sup-norm are compared against the certified bounds (scaled by 1+margin).
/// Any violation indicates an implementation bug, since the bounds are
/// proven. U = 0 and infeasible records are skipped.
ValidationReport validate_surface(const GainSurface& surface, int points, int inputs_per_point,
                                  double margin, std::uint64_t seed, const SimParams& sim = {});

}  // namespace srgbode
