#pragma once

#include <functional>
#include <string>

namespace srgbode {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Amplitude-dependent slope bounds a(A) <= dphi <= b(A) and sector bounds
/// c(A) <= phi(x)/x <= d(A), with their A -> infinity limits. The bound
/// functions must accept +infinity and return the corresponding limit.
struct NonlinearityBounds {
    std::function<double(double)> a;
    std::function<double(double)> b;
    std::function<double(double)> c;
    std::function<double(double)> d;
    double a_star = 0.0;
    double b_star = 0.0;
    double c_star = 0.0;
    double d_star = 0.0;
};

struct Asymptotes {
    double a_star = 0.0;
    double b_star = 0.0;
    double c_star = 0.0;
    double d_star = 0.0;
};

/// Static nonlinearity with phi(0) = 0. Built-ins carry exact slope/sector
/// bound functions; custom nonlinearities may supply their own (required
/// for any gain analysis, optional for simulation-only use).
class Nonlinearity {
public:
    enum class Kind { Sine, Saturation, Deadzone, Custom };

    static Nonlinearity sine();
    static Nonlinearity saturation(double limit);
    static Nonlinearity deadzone(double width);
    static Nonlinearity identity();
    static Nonlinearity custom(std::string name, std::function<double(double)> eval, bool odd);
    static Nonlinearity custom(std::string name, std::function<double(double)> eval, bool odd,
                               NonlinearityBounds bounds);

    double eval(double x) const { return eval_(x); }
    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    bool odd() const { return odd_; }
    bool has_bounds() const { return has_bounds_; }
    const NonlinearityBounds& bounds() const;

private:
    Nonlinearity() = default;
    Kind kind_ = Kind::Custom;
    std::string name_;
    std::function<double(double)> eval_;
    bool odd_ = false;
    bool has_bounds_ = false;
    NonlinearityBounds bounds_;
};

double eval_nl(const Nonlinearity& nl, double x);

/// Tight slope interval of phi restricted to |x|,|y| <= A. Pass
/// A = +infinity for the asymptotes.
Interval slope_bounds(const Nonlinearity& nl, double amplitude);

/// Tight sector interval of phi(x)/x over 0 < |x| <= A.
Interval sector_bounds(const Nonlinearity& nl, double amplitude);

Asymptotes asymptotic_bounds(const Nonlinearity& nl);

/// Global minimizer of sin(A)/A on [0, inf), located in [pi, 2*pi];
/// computed once by scalar minimization rather than transcribed.
double sine_sector_argmin();

struct BoundsCheck {
    bool ok = true;
    double worst_slope_violation = 0.0;
    double worst_sector_violation = 0.0;
};

/// Opt-in sampling check that user-supplied bound functions actually
/// dominate the difference quotients and ratios of phi.
BoundsCheck verify_bounds_by_sampling(const Nonlinearity& nl, double max_amplitude,
                                      int amplitude_steps, int samples_per_amplitude,
                                      unsigned long long seed = 1);

}  // namespace srgbode
