#include "srgbode/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace srgbode {

namespace {

constexpr double kPi = std::numbers::pi;

double max_pole_magnitude(const StateSpace& ss) {
    double m = 0.0;
    for (const Complex& p : state_matrix_eigenvalues(ss)) m = std::max(m, std::abs(p));
    return m;
}

double window_rms(const std::vector<double>& y, size_t begin, size_t len) {
    double acc = 0.0;
    for (size_t i = 0; i < len; ++i) acc += y[begin + i] * y[begin + i];
    return std::sqrt(acc / len);
}

double u01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

}  // namespace

double PeriodicInput::period() const { return 2.0 * kPi / omega; }

double PeriodicInput::eval(double t) const {
    double v = 0.0;
    for (const auto& h : terms) v += h.amplitude * std::sin(h.k * omega * t + h.phase);
    return v;
}

double PeriodicInput::eval_derivative(double t) const {
    double v = 0.0;
    for (const auto& h : terms)
        v += h.amplitude * h.k * omega * std::cos(h.k * omega * t + h.phase);
    return v;
}

double PeriodicInput::rms() const {
    double s = 0.0;
    for (const auto& h : terms) s += h.amplitude * h.amplitude;
    return std::sqrt(0.5 * s);
}

double PeriodicInput::harmonic_energy_exact() const {
    double s = 0.0, sk = 0.0;
    for (const auto& h : terms) {
        s += h.amplitude * h.amplitude;
        sk += h.amplitude * h.amplitude * h.k * h.k;
    }
    return kPi * std::sqrt(s * sk);
}

void PeriodicInput::validate() const {
    if (!(omega > 0.0)) throw std::invalid_argument("PeriodicInput: omega must be > 0");
    for (const auto& h : terms) {
        if (h.k < 1 || h.k % 2 == 0)
            throw std::invalid_argument("PeriodicInput: harmonics must be odd and positive");
    }
}

std::vector<double> render_input(const PeriodicInput& input, double dt, int n_periods) {
    input.validate();
    const double T = input.period();
    if (!(dt > 0.0) || dt > T / 200.0)
        throw std::invalid_argument("render_input: need dt <= T/200");
    if (n_periods < 1) throw std::invalid_argument("render_input: n_periods must be >= 1");
    const long n = std::lround(n_periods * T / dt);
    std::vector<double> out(static_cast<size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) out[i] = input.eval(i * dt);
    return out;
}

double harmonic_energy(const std::vector<double>& u_samples, double dt, double T) {
    if (u_samples.size() < 4) throw std::invalid_argument("harmonic_energy: too few samples");
    const long m = std::lround(T / dt);
    std::vector<double> u(u_samples);
    if (static_cast<long>(u.size()) == m + 1)
        u.pop_back();  // duplicated endpoint
    else if (static_cast<long>(u.size()) != m)
        throw std::invalid_argument("harmonic_energy: samples do not cover one period");

    // periodic wraparound: trapezoid degenerates to the rectangle sum
    const size_t n = u.size();
    double e_u = 0.0, e_du = 0.0;
    for (size_t i = 0; i < n; ++i) {
        e_u += u[i] * u[i];
        const double du = (u[(i + 1) % n] - u[(i + n - 1) % n]) / (2.0 * dt);
        e_du += du * du;
    }
    return std::sqrt(e_u * dt) * std::sqrt(e_du * dt);
}

double default_sim_dt(const StateSpace& ss, double T, int samples_per_period) {
    double dt = T / samples_per_period;
    const double pmax = max_pole_magnitude(ss);
    if (pmax > 0.0) dt = std::min(dt, 0.1 / pmax);
    return dt;
}

SimResult simulate_lure(const StateSpace& ss, const Nonlinearity& nl, const PeriodicInput& input,
                        double dt, int max_periods) {
    input.validate();
    if (ss.D != 0.0)
        throw std::invalid_argument("simulate_lure: realization must be strictly proper (D = 0)");
    if (!(dt > 0.0)) throw std::invalid_argument("simulate_lure: dt must be > 0");
    if (max_periods < 1) throw std::invalid_argument("simulate_lure: max_periods must be >= 1");
    const double pmax = max_pole_magnitude(ss);
    if (dt * pmax > 1.0)
        throw std::invalid_argument("simulate_lure: dt too large for the fastest pole");

    const double T = input.period();
    const long spp = std::max(1L, std::lround(std::ceil(T / dt - 1e-12)));
    const double h = T / spp;  // exact integer number of steps per period
    const long steps = spp * max_periods;
    const int n = ss.n;

    std::vector<double> x(n, 0.0), k1(n), k2(n), k3(n), k4(n), xt(n);
    auto deriv = [&](double t, const std::vector<double>& xs, std::vector<double>& dx) {
        double y = 0.0;
        for (int i = 0; i < n; ++i) y += ss.C[i] * xs[i];
        const double e = input.eval(t) - nl.eval(y);
        for (int i = 0; i < n; ++i) {
            double acc = ss.B[i] * e;
            const double* row = ss.A.data() + static_cast<size_t>(i) * n;
            for (int j = 0; j < n; ++j) acc += row[j] * xs[j];
            dx[i] = acc;
        }
    };

    SimResult sim;
    sim.dt = h;
    sim.times.reserve(steps + 1);
    sim.u.reserve(steps + 1);
    sim.e.reserve(steps + 1);
    sim.y.reserve(steps + 1);
    sim.states.reserve(steps + 1);

    auto record = [&](double t) {
        double y = 0.0;
        for (int i = 0; i < n; ++i) y += ss.C[i] * x[i];
        const double ut = input.eval(t);
        sim.times.push_back(t);
        sim.u.push_back(ut);
        sim.y.push_back(y);
        sim.e.push_back(ut - nl.eval(y));
        sim.states.push_back(x);
    };

    record(0.0);
    for (long step = 0; step < steps; ++step) {
        const double t = step * h;
        deriv(t, x, k1);
        for (int i = 0; i < n; ++i) xt[i] = x[i] + 0.5 * h * k1[i];
        deriv(t + 0.5 * h, xt, k2);
        for (int i = 0; i < n; ++i) xt[i] = x[i] + 0.5 * h * k2[i];
        deriv(t + 0.5 * h, xt, k3);
        for (int i = 0; i < n; ++i) xt[i] = x[i] + h * k3[i];
        deriv(t + h, xt, k4);
        double norm = 0.0;
        for (int i = 0; i < n; ++i) {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            norm = std::max(norm, std::abs(x[i]));
        }
        if (norm > 1e9) throw std::runtime_error("simulate_lure: trajectory diverged");
        record((step + 1) * h);
    }
    return sim;
}

SteadyState extract_steady_state(const SimResult& sim, double T, double tol) {
    const long spp = std::lround(T / sim.dt);
    if (spp < 2 || std::abs(spp * sim.dt - T) > 1e-9 * T)
        throw std::invalid_argument("extract_steady_state: dt does not divide the period");
    const long periods = (static_cast<long>(sim.y.size()) - 1) / spp;
    if (periods < 3)
        throw std::invalid_argument("extract_steady_state: need at least 3 simulated periods");

    SteadyState st;
    st.periods_used = static_cast<int>(periods);
    bool found = false;
    double last_dev = std::numeric_limits<double>::infinity();
    for (long p = 1; p < periods; ++p) {
        double acc = 0.0;
        const size_t prev = static_cast<size_t>((p - 1) * spp);
        const size_t cur = static_cast<size_t>(p * spp);
        for (long i = 0; i < spp; ++i) {
            const double d = sim.y[cur + i] - sim.y[prev + i];
            acc += d * d;
        }
        const double dev = std::sqrt(acc / spp);
        const double ref = std::max(window_rms(sim.y, cur, spp), 1e-30);
        last_dev = dev / ref;
        if (!found && last_dev < tol) {
            found = true;
            st.periods_used = static_cast<int>(p + 1);
        }
    }
    st.converged = last_dev < tol;

    const size_t begin = static_cast<size_t>((periods - 1) * spp);
    st.period_samples.assign(sim.y.begin() + begin, sim.y.begin() + begin + spp);
    st.rms = window_rms(sim.y, begin, spp);
    for (long i = 0; i < spp; ++i) st.sup = std::max(st.sup, std::abs(sim.y[begin + i]));
    return st;
}

ValidationReport validate_surface(const GainSurface& surface, int points, int inputs_per_point,
                                  double margin, std::uint64_t seed, const SimParams& sim) {
    if (points < 1 || inputs_per_point < 1)
        throw std::invalid_argument("validate_surface: need points >= 1 and inputs >= 1");
    ValidationReport report;
    report.seed = seed;
    report.margin = margin;

    std::vector<size_t> candidates;
    for (size_t i = 0; i < surface.records.size(); ++i) {
        const auto& r = surface.records[i];
        if (r.feasible && r.U > 0.0 && std::isfinite(r.gamma) && std::isfinite(r.A_bound))
            candidates.push_back(i);
    }
    if (candidates.empty()) throw std::invalid_argument("validate_surface: no feasible points");

    std::vector<size_t> chosen;
    const size_t want = std::min<size_t>(points, candidates.size());
    for (size_t i = 0; i < want; ++i) {
        const size_t idx = want == 1 ? 0 : i * (candidates.size() - 1) / (want - 1);
        if (chosen.empty() || candidates[idx] != chosen.back())
            chosen.push_back(candidates[idx]);
    }

    const StateSpace ss = to_state_space(surface.config.system);
    const Nonlinearity& nl = surface.config.nonlinearity;
    std::mt19937_64 rng(seed);

    for (size_t rec_idx : chosen) {
        const GainRecord& rec = surface.records[rec_idx];
        ValidationPoint point;
        point.omega = rec.omega;
        point.U = rec.U;
        point.record_index = rec_idx;
        const double T = 2.0 * kPi / rec.omega;
        const double dt = default_sim_dt(ss, T, sim.samples_per_period);

        for (int s = 0; s < inputs_per_point; ++s) {
            PeriodicInput input;
            input.omega = rec.omega;
            for (int k : {1, 3, 5})
                input.terms.push_back({k, u01(rng), 2.0 * kPi * u01(rng)});
            // rescale so the harmonic energy sits just under the constraint
            const double raw = input.harmonic_energy_exact();
            const double scale = raw > 0.0 ? std::sqrt(0.99 * rec.U / raw) : 0.0;
            for (auto& h : input.terms) h.amplitude *= scale;

            ValidationSample sample;
            sample.input = input;
            sample.gain_bound = rec.gamma;
            sample.sup_bound = rec.A_bound;
            const SimResult traj = simulate_lure(ss, nl, input, dt, sim.max_periods);
            const SteadyState st = extract_steady_state(traj, T, sim.steady_tol);
            sample.converged = st.converged;
            sample.measured_gain = st.rms / input.rms();
            sample.measured_sup = st.sup;
            sample.ok = st.converged &&
                        sample.measured_gain <= rec.gamma * (1.0 + margin) &&
                        sample.measured_sup <= rec.A_bound * (1.0 + margin);
            if (!sample.ok) ++point.violations;
            point.samples.push_back(std::move(sample));
            ++report.total_samples;
        }
        report.total_violations += point.violations;
        report.points.push_back(std::move(point));
    }
    return report;
}

}  // namespace srgbode
