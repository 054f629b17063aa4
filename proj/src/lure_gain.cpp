#include "srgbode/lure_gain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace srgbode {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_increasing(const std::vector<double>& grid, const char* name) {
    for (size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            std::ostringstream msg;
            msg << name << " grid must be strictly increasing (entry " << i << ")";
            throw std::invalid_argument(msg.str());
        }
    }
}

struct TauSweep {
    double r_at_one = 0.0;
    double min_dist = 0.0;
    double argmin_tau = 0.0;
};

TauSweep tau_sweep(const HyperbolicRegion& inverse_region, const IntervalDisk& slope_disk,
                   int tau_steps) {
    if (tau_steps < 2) throw std::invalid_argument("tau_steps must be >= 2");
    TauSweep sweep;
    sweep.min_dist = kInf;
    for (int i = 0; i < tau_steps; ++i) {
        const double tau = static_cast<double>(i) / (tau_steps - 1);
        const double d = dist_region_disk(inverse_region, scaled_negated_disk(slope_disk, tau));
        if (d <= 0.0) {
            std::ostringstream msg;
            msg << "well-posedness certification failed: inverse SRG intersects the scaled "
                   "slope disk at tau = "
                << tau;
            throw CertificationError(msg.str(), "wellposedness", tau);
        }
        if (d < sweep.min_dist) {
            sweep.min_dist = d;
            sweep.argmin_tau = tau;
        }
        if (i == tau_steps - 1) sweep.r_at_one = d;
    }
    return sweep;
}

}  // namespace

void AnalysisConfig::validate() const {
    if (omega_grid.empty()) throw std::invalid_argument("omega grid is empty");
    if (u_grid.empty()) throw std::invalid_argument("U grid is empty");
    require_increasing(omega_grid, "omega");
    require_increasing(u_grid, "U");
    if (!(omega_grid.front() > 0.0)) throw std::invalid_argument("omega grid must be > 0");
    if (!(u_grid.front() >= 0.0)) throw std::invalid_argument("U grid must be >= 0");
    if (tau_steps < 2) throw std::invalid_argument("tau_steps must be >= 2");
    if (!(bisection_tol > 0.0)) throw std::invalid_argument("bisection_tol must be > 0");
    if (bisection_max_iters < 1) throw std::invalid_argument("bisection_max_iters must be >= 1");
    if (!(truncation.tail_rel_tol > 0.0))
        throw std::invalid_argument("harmonic tail tolerance must be > 0");
    if (truncation.k_cap < 1) throw std::invalid_argument("harmonic k_cap must be >= 1");
}

HyperbolicRegion inverse_srg_region(const TransferFunction& tf, double omega,
                                    const HarmonicTruncation& trunc) {
    double peak = 0.0;
    for (int k = 1; k <= 9; k += 2) peak = std::max(peak, std::abs(eval_freq(tf, k * omega)));
    const auto samples = odd_harmonic_samples(tf, omega, trunc.tail_rel_tol * peak, trunc.k_cap);
    return invert_region(hco(samples.points));
}

HyperbolicRegion inverse_full_srg_region(const TransferFunction& tf) {
    // Log sweep centered on the geometric mean of the pole magnitudes, plus
    // the exact DC and high-frequency limit points of the Nyquist curve.
    const auto ps = poles(tf);
    double log_sum = 0.0;
    int count = 0;
    for (const Complex& p : ps) {
        const double m = std::abs(p);
        if (m > 0.0) {
            log_sum += std::log(m);
            ++count;
        }
    }
    const double wc = count > 0 ? std::exp(log_sum / count) : 1.0;

    constexpr int kSweepPoints = 2000;
    std::vector<Complex> pts;
    pts.reserve(kSweepPoints + 2);
    for (int i = 0; i < kSweepPoints; ++i) {
        const double expo = -4.0 + 8.0 * i / (kSweepPoints - 1);
        pts.push_back(eval_freq(tf, wc * std::pow(10.0, expo)));
    }
    pts.push_back(eval_freq(tf, 0.0));  // DC
    if (tf.strictly_proper())
        pts.push_back(Complex(0.0, 0.0));
    else
        pts.push_back(Complex(tf.num().back() / tf.den().back(), 0.0));
    return invert_region(hco(pts));
}

double margin_for_region(const HyperbolicRegion& inverse_region, Interval interval) {
    return dist_region_disk(inverse_region, disk_from_interval(-interval.hi, -interval.lo));
}

double margin_at(const TransferFunction& tf, double omega, Interval interval,
                 const HarmonicTruncation& trunc) {
    return margin_for_region(inverse_srg_region(tf, omega, trunc), interval);
}

double wellposedness_margin(const TransferFunction& tf, const NonlinearityBounds& bounds,
                            int tau_steps) {
    const auto st = check_stability(tf);
    if (!st.stable) throw std::invalid_argument("wellposedness_margin: G is not stable");
    if (!st.strictly_proper)
        throw std::invalid_argument("wellposedness_margin: G is not strictly proper");
    const auto region = inverse_full_srg_region(tf);
    const IntervalDisk slope_disk = disk_from_interval(bounds.a_star, bounds.b_star);
    return tau_sweep(region, slope_disk, tau_steps).r_at_one;
}

AmplitudeResult amplitude_fixed_point_for_region(const HyperbolicRegion& inverse_region,
                                                 const Nonlinearity& nl, double U, double tol,
                                                 int max_iters) {
    if (!(U >= 0.0)) throw std::invalid_argument("amplitude_fixed_point: U must be >= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("amplitude_fixed_point: tol must be > 0");
    AmplitudeResult res;
    const double r_sec = margin_for_region(inverse_region, sector_bounds(nl, kInf));
    const double r_slo = margin_for_region(inverse_region, slope_bounds(nl, kInf));
    if (r_sec <= 0.0 || r_slo <= 0.0) {
        res.A_bound = kInf;
        return res;  // feasible = false: no finite certificate at this frequency
    }
    if (U == 0.0) {
        res.feasible = true;
        return res;  // zero harmonic energy forces zero amplitude
    }
    const double a_max = std::sqrt(2.0 * U / (r_sec * r_slo));
    // predicate: sqrt(2 lambda_{w,A} lambda^d_{w,A} U) <= A; holds at a_max by
    // disk nesting, fails at 0 for U > 0
    double lo = 0.0, hi = a_max;
    for (; res.iters < max_iters && (hi - lo) > tol; ++res.iters) {
        const double mid = 0.5 * (lo + hi);
        const double rs = margin_for_region(inverse_region, sector_bounds(nl, mid));
        const double rd = margin_for_region(inverse_region, slope_bounds(nl, mid));
        if (rs <= 0.0 || rd <= 0.0) {
            // nesting violated below a_max (possible only for inconsistent
            // custom bounds); fall back to the A-independent certificate
            res.A_bound = a_max;
            return res;
        }
        if (std::sqrt(2.0 * U / (rs * rd)) <= mid)
            hi = mid;
        else
            lo = mid;
    }
    res.A_bound = hi;
    res.feasible = true;
    return res;
}

AmplitudeResult amplitude_fixed_point(const TransferFunction& tf, const Nonlinearity& nl,
                                      double omega, double U, double tol) {
    return amplitude_fixed_point_for_region(inverse_srg_region(tf, omega), nl, U, tol, 60);
}

GainSurface gain_surface(const AnalysisConfig& config) {
    config.validate();
    const auto st = check_stability(config.system);
    if (!st.stable)
        throw CertificationError("hypothesis failed: G is not stable", "stable");
    if (!st.strictly_proper)
        throw CertificationError("hypothesis failed: G is not strictly proper",
                                 "strictly_proper");
    const Nonlinearity& nl = config.nonlinearity;
    if (!nl.odd())
        throw CertificationError("hypothesis failed: nonlinearity is not odd", "odd");
    if (!nl.has_bounds())
        throw CertificationError("hypothesis failed: nonlinearity has no slope/sector bounds",
                                 "bounds");

    GainSurface surface;
    surface.config = config;
    const auto full_inverse = inverse_full_srg_region(config.system);
    const auto stars = asymptotic_bounds(nl);
    const auto sweep = tau_sweep(full_inverse, disk_from_interval(stars.a_star, stars.b_star),
                                 config.tau_steps);
    surface.wellposedness_r = sweep.r_at_one;
    surface.tau_sweep_min = sweep.min_dist;
    surface.tau_sweep_argmin = sweep.argmin_tau;

    surface.records.reserve(config.omega_grid.size() * config.u_grid.size());
    for (double omega : config.omega_grid) {
        const auto region = inverse_srg_region(config.system, omega, config.truncation);
        const double r_sec_inf = margin_for_region(region, sector_bounds(nl, kInf));
        const double r_slo_inf = margin_for_region(region, slope_bounds(nl, kInf));
        for (double U : config.u_grid) {
            GainRecord rec;
            rec.omega = omega;
            rec.U = U;
            rec.r_omega_inf = r_sec_inf;
            const auto amp = amplitude_fixed_point_for_region(region, nl, U, config.bisection_tol,
                                                              config.bisection_max_iters);
            rec.A_bound = amp.A_bound;
            rec.bisection_iters = amp.iters;
            if (amp.feasible) {
                rec.r_omega_A = margin_for_region(region, sector_bounds(nl, amp.A_bound));
                rec.r_partial_omega_A = margin_for_region(region, slope_bounds(nl, amp.A_bound));
                rec.gamma = 1.0 / rec.r_omega_A;
                rec.feasible = rec.r_omega_A > 0.0 && rec.r_partial_omega_A > 0.0;
            } else if (std::isfinite(amp.A_bound)) {
                // A-independent certificate only
                rec.r_omega_A = r_sec_inf;
                rec.r_partial_omega_A = r_slo_inf;
                rec.gamma = 1.0 / r_sec_inf;
            } else {
                rec.r_omega_A = 0.0;
                rec.r_partial_omega_A = 0.0;
                rec.gamma = kInf;
            }
            surface.records.push_back(rec);
        }
    }
    return surface;
}

double global_l2_gain(const TransferFunction& tf, const Nonlinearity& nl) {
    const auto st = check_stability(tf);
    if (!st.stable) throw std::invalid_argument("global_l2_gain: G is not stable");
    if (!st.strictly_proper)
        throw std::invalid_argument("global_l2_gain: G is not strictly proper");
    const auto region = inverse_full_srg_region(tf);
    const auto stars = asymptotic_bounds(nl);
    tau_sweep(region, disk_from_interval(stars.a_star, stars.b_star), 101);
    const double d =
        dist_region_disk(region, scaled_negated_disk(disk_from_interval(stars.c_star,
                                                                        stars.d_star),
                                                     1.0));
    return d > 0.0 ? 1.0 / d : kInf;
}

}  // namespace srgbode
