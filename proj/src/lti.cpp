#include "srgbode/lti.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srgbode {

namespace {

void trim_trailing_zeros(std::vector<double>& c) {
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
}

Complex polyval(const std::vector<double>& c, Complex s) {
    Complex acc(0.0, 0.0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * s + c[i];
    return acc;
}

std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs) {
    // ascending coefficients, nonzero leading coefficient
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n < 1) return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    const double lead = coeffs.back();
    for (int i = 0; i + 1 < n; ++i) companion(i + 1, i) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[i] / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    std::vector<Complex> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = solver.eigenvalues()[i];
    return roots;
}

}  // namespace

TransferFunction::TransferFunction(std::vector<double> num, std::vector<double> den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (num_.empty()) num_ = {0.0};
    trim_trailing_zeros(num_);
    trim_trailing_zeros(den_);
    if (den_.empty() || (den_.size() == 1 && den_[0] == 0.0))
        throw std::invalid_argument("TransferFunction: zero denominator");
    if (num_degree() > den_degree())
        throw std::invalid_argument("TransferFunction: improper (num degree exceeds den degree)");
}

Complex eval_freq(const TransferFunction& tf, double omega) {
    const Complex s(0.0, omega);
    const Complex d = polyval(tf.den(), s);
    if (d == Complex(0.0, 0.0))
        throw std::domain_error("eval_freq: pole on the imaginary axis");
    return polyval(tf.num(), s) / d;
}

std::vector<Complex> poles(const TransferFunction& tf) { return polynomial_roots(tf.den()); }

StabilityReport check_stability(const TransferFunction& tf) {
    StabilityReport rep;
    rep.proper = true;  // enforced at construction
    rep.strictly_proper = tf.strictly_proper();
    rep.stable = true;
    for (const Complex& p : poles(tf)) {
        if (p.real() > -1e-9) {
            rep.stable = false;
            break;
        }
    }
    return rep;
}

HarmonicSamples odd_harmonic_samples(const TransferFunction& tf, double omega,
                                     double tail_tol, int k_cap) {
    if (!(omega > 0.0)) throw std::invalid_argument("odd_harmonic_samples: omega must be > 0");
    if (!(tail_tol > 0.0)) throw std::invalid_argument("odd_harmonic_samples: tail_tol must be > 0");
    HarmonicSamples out;
    for (long k = 1;; k += 2) {
        const Complex g = eval_freq(tf, static_cast<double>(k) * omega);
        if (k > 1 && std::abs(g) < tail_tol) break;
        if (k > k_cap) {
            out.truncated = true;
            break;
        }
        out.points.push_back(g);
    }
    if (tf.strictly_proper()) out.points.push_back(Complex(0.0, 0.0));
    return out;
}

double default_tail_tol(const TransferFunction& tf, double omega) {
    double peak = 0.0;
    for (int k = 1; k <= 9; k += 2)
        peak = std::max(peak, std::abs(eval_freq(tf, k * omega)));
    return 1e-3 * peak;
}

StateSpace to_state_space(const TransferFunction& tf) {
    const int n = tf.den_degree();
    const double lead = tf.den().back();
    std::vector<double> den(tf.den());
    for (double& c : den) c /= lead;
    std::vector<double> num(n + 1, 0.0);
    for (size_t i = 0; i < tf.num().size(); ++i) num[i] = tf.num()[i] / lead;

    StateSpace ss;
    ss.n = n;
    ss.D = num[n];
    if (n == 0) return ss;
    ss.A.assign(static_cast<size_t>(n) * n, 0.0);
    ss.B.assign(n, 0.0);
    ss.C.assign(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) ss.A[static_cast<size_t>(i) * n + i + 1] = 1.0;
    for (int j = 0; j < n; ++j) ss.A[static_cast<size_t>(n - 1) * n + j] = -den[j];
    ss.B[n - 1] = 1.0;
    for (int j = 0; j < n; ++j) ss.C[j] = num[j] - ss.D * den[j];
    return ss;
}

Complex eval_state_space(const StateSpace& ss, double omega) {
    if (ss.n == 0) return Complex(ss.D, 0.0);
    const int n = ss.n;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    Eigen::VectorXcd b(n);
    for (int i = 0; i < n; ++i) {
        b[i] = ss.B[i];
        for (int j = 0; j < n; ++j) M(i, j) = -ss.A[static_cast<size_t>(i) * n + j];
        M(i, i) += Complex(0.0, omega);
    }
    const Eigen::VectorXcd x = M.partialPivLu().solve(b);
    Complex y(ss.D, 0.0);
    for (int i = 0; i < n; ++i) y += ss.C[i] * x[i];
    return y;
}

std::vector<Complex> state_matrix_eigenvalues(const StateSpace& ss) {
    if (ss.n == 0) return {};
    Eigen::MatrixXd A(ss.n, ss.n);
    for (int i = 0; i < ss.n; ++i)
        for (int j = 0; j < ss.n; ++j) A(i, j) = ss.A[static_cast<size_t>(i) * ss.n + j];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(A, false);
    std::vector<Complex> eig(ss.n);
    for (int i = 0; i < ss.n; ++i) eig[i] = solver.eigenvalues()[i];
    return eig;
}

TransferFunction linearized_loop(const TransferFunction& tf, double slope) {
    // G/(1 + a G) = N / (D + a N)
    std::vector<double> den(std::max(tf.den().size(), tf.num().size()), 0.0);
    for (size_t i = 0; i < tf.den().size(); ++i) den[i] = tf.den()[i];
    for (size_t i = 0; i < tf.num().size(); ++i) den[i] += slope * tf.num()[i];
    try {
        return TransferFunction(tf.num(), std::move(den));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("linearized_loop: degenerate cancellation in closed loop");
    }
}

}  // namespace srgbode
