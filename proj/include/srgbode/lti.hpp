#pragma once

#include <complex>
#include <vector>

namespace srgbode {

using Complex = std::complex<double>;

/// Proper rational SISO transfer function. Coefficients are stored in
/// ascending powers of s and normalized by trimming trailing (highest
/// power) zeros, so the degree is unambiguous.
class TransferFunction {
public:
    /// Zero system 0/1.
    TransferFunction() : num_{0.0}, den_{1.0} {}
    TransferFunction(std::vector<double> num, std::vector<double> den);

    const std::vector<double>& num() const { return num_; }
    const std::vector<double>& den() const { return den_; }
    int num_degree() const { return static_cast<int>(num_.size()) - 1; }
    int den_degree() const { return static_cast<int>(den_.size()) - 1; }
    bool strictly_proper() const { return num_degree() < den_degree(); }

private:
    std::vector<double> num_;
    std::vector<double> den_;
};

/// x' = A x + B u, y = C x + D u with A stored row-major (n x n).
struct StateSpace {
    int n = 0;
    std::vector<double> A;
    std::vector<double> B;
    std::vector<double> C;
    double D = 0.0;
};

struct StabilityReport {
    bool stable = false;
    bool proper = false;
    bool strictly_proper = false;
};

struct HarmonicSamples {
    std::vector<Complex> points;
    bool truncated = false;  // harmonic cap reached before the tail tolerance
};

/// G(j omega). Throws if the denominator vanishes there (pole on the axis).
Complex eval_freq(const TransferFunction& tf, double omega);

/// Denominator roots via companion-matrix eigenvalues.
std::vector<Complex> poles(const TransferFunction& tf);

/// Stability uses a -1e-9 real-part margin: roots at or right of it are
/// rejected.
StabilityReport check_stability(const TransferFunction& tf);

/// Samples G(j k omega) for odd k = 1, 3, 5, ... stopping once the magnitude
/// falls below tail_tol (the first harmonic is always kept) or k exceeds
/// k_cap. For strictly proper systems the limit point 0 is appended so the
/// hull over-approximates the full odd-harmonic Nyquist set.
HarmonicSamples odd_harmonic_samples(const TransferFunction& tf, double omega,
                                     double tail_tol, int k_cap);

/// Default tail tolerance: 1e-3 * max over odd k <= 9 of |G(j k omega)|.
double default_tail_tol(const TransferFunction& tf, double omega);

/// Controllable canonical realization; D = 0 exactly when strictly proper.
StateSpace to_state_space(const TransferFunction& tf);

/// C (j omega I - A)^{-1} B + D.
Complex eval_state_space(const StateSpace& ss, double omega);

std::vector<Complex> state_matrix_eigenvalues(const StateSpace& ss);

/// Closed loop G / (1 + slope * G) as a rational function. Throws when the
/// feedback cancels the denominator degree (degenerate loop).
TransferFunction linearized_loop(const TransferFunction& tf, double slope);

}  // namespace srgbode
