#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "srgbode/geometry.hpp"
#include "srgbode/lti.hpp"
#include "srgbode/nonlinearity.hpp"

namespace srgbode {

struct HarmonicTruncation {
    double tail_rel_tol = 1e-3;  // relative to max over odd k <= 9 of |G(jkw)|
    int k_cap = 10001;
};

struct AnalysisConfig {
    TransferFunction system;
    Nonlinearity nonlinearity = Nonlinearity::identity();
    std::vector<double> omega_grid;  // rad/s, > 0, strictly increasing
    std::vector<double> u_grid;      // harmonic energy, >= 0, strictly increasing
    int tau_steps = 101;
    double bisection_tol = 1e-4;
    int bisection_max_iters = 60;
    HarmonicTruncation truncation;
    double geometry_tol = 1e-9;

    void validate() const;  // throws std::invalid_argument
};

struct GainRecord {
    double omega = 0.0;
    double U = 0.0;
    double r_omega_A = 0.0;          // sector margin at A_bound
    double r_partial_omega_A = 0.0;  // slope margin at A_bound
    double A_bound = 0.0;            // certified sup-norm bound on the output
    double gamma = 0.0;              // certified RMS gain bound, 1/r_omega_A
    double r_omega_inf = 0.0;        // sector margin at the A -> inf asymptote
    int bisection_iters = 0;
    bool feasible = false;
};

struct GainSurface {
    AnalysisConfig config;
    std::vector<GainRecord> records;  // omega-major: records[iw * nU + iu]
    double wellposedness_r = 0.0;     // margin at tau = 1
    double tau_sweep_min = 0.0;
    double tau_sweep_argmin = 0.0;

    const GainRecord& at(std::size_t i_omega, std::size_t i_u) const {
        return records[i_omega * config.u_grid.size() + i_u];
    }
};

/// A certification hypothesis failed (instability, intersection at some
/// homotopy parameter, ...). Maps to CLI exit status 2.
class CertificationError : public std::runtime_error {
public:
    CertificationError(const std::string& what, std::string hypothesis,
                       double tau = -1.0)
        : std::runtime_error(what), hypothesis_(std::move(hypothesis)), tau_(tau) {}
    const std::string& hypothesis() const { return hypothesis_; }
    double tau() const { return tau_; }  // offending tau, or -1 when n/a

private:
    std::string hypothesis_;
    double tau_;
};

/// Inverse of the hyperbolic hull of the odd-harmonic Nyquist samples at a
/// single excitation frequency. Cache this when scanning amplitudes.
HyperbolicRegion inverse_srg_region(const TransferFunction& tf, double omega,
                                    const HarmonicTruncation& trunc = {});

/// Inverse of the hull of a dense full Nyquist sweep (all frequencies),
/// including the DC and high-frequency limit points.
HyperbolicRegion inverse_full_srg_region(const TransferFunction& tf);

/// dist(region, D_{[-hi,-lo]}) for a sector or slope interval.
double margin_for_region(const HyperbolicRegion& inverse_region, Interval interval);

/// Margin at one frequency: distance between the inverted restricted SRG
/// and the negated interval disk. 0 means the sets intersect (infeasible).
double margin_at(const TransferFunction& tf, double omega, Interval interval,
                 const HarmonicTruncation& trunc = {});

/// Homotopy certificate: sweeps tau over [0,1] on a uniform grid, requires
/// dist(inverse full SRG, -tau D_{[a*,b*]}) > 0 throughout, and returns the
/// margin at tau = 1 (where the gain bound is extracted). Throws
/// CertificationError carrying the offending tau on intersection.
double wellposedness_margin(const TransferFunction& tf, const NonlinearityBounds& bounds,
                            int tau_steps);

struct AmplitudeResult {
    double A_bound = 0.0;
    int iters = 0;
    bool feasible = false;
};

/// Smallest A (within tol) with sqrt(2 * lambda_{w,A} * lambda^d_{w,A} * U) <= A,
/// found by bisection on [0, sqrt(2 * lambda_w * lambda^d_w * U)].
AmplitudeResult amplitude_fixed_point(const TransferFunction& tf, const Nonlinearity& nl,
                                      double omega, double U, double tol);

AmplitudeResult amplitude_fixed_point_for_region(const HyperbolicRegion& inverse_region,
                                                 const Nonlinearity& nl, double U, double tol,
                                                 int max_iters);

/// Full certification pipeline: checks the stability/properness/oddness and
/// homotopy hypotheses, then fills one GainRecord per (omega, U) grid point.
GainSurface gain_surface(const AnalysisConfig& config);

/// Global L2-gain bound over all square-integrable inputs:
/// 1 / dist(inverse full SRG, -D_{[c*,d*]}), guarded by the homotopy sweep.
double global_l2_gain(const TransferFunction& tf, const Nonlinearity& nl);

}  // namespace srgbode
