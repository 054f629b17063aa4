#include "srgbode/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace srgbode {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double golden_section_min(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

NonlinearityBounds sine_bounds() {
    const double astar = sine_sector_argmin();
    const double cstar = sinc(astar);
    NonlinearityBounds nb;
    nb.a = [](double A) { return A <= std::numbers::pi ? std::cos(A) : -1.0; };
    nb.b = [](double) { return 1.0; };
    nb.c = [astar, cstar](double A) { return A <= astar ? sinc(A) : cstar; };
    nb.d = [](double) { return 1.0; };
    nb.a_star = -1.0;
    nb.b_star = 1.0;
    nb.c_star = cstar;
    nb.d_star = 1.0;
    return nb;
}

NonlinearityBounds saturation_bounds(double limit) {
    NonlinearityBounds nb;
    nb.a = [limit](double A) { return A <= limit ? 1.0 : 0.0; };
    nb.b = [](double) { return 1.0; };
    nb.c = [limit](double A) { return A <= limit ? 1.0 : limit / A; };
    nb.d = [](double) { return 1.0; };
    nb.a_star = 0.0;
    nb.b_star = 1.0;
    nb.c_star = 0.0;
    nb.d_star = 1.0;
    return nb;
}

NonlinearityBounds deadzone_bounds(double width) {
    NonlinearityBounds nb;
    nb.a = [](double) { return 0.0; };
    nb.b = [width](double A) { return A <= width ? 0.0 : 1.0; };
    nb.c = [](double) { return 0.0; };
    nb.d = [width](double A) { return A <= width ? 0.0 : 1.0 - width / A; };
    nb.a_star = 0.0;
    nb.b_star = 1.0;
    nb.c_star = 0.0;
    nb.d_star = 1.0;
    return nb;
}

NonlinearityBounds constant_bounds(double k) {
    NonlinearityBounds nb;
    nb.a = nb.b = nb.c = nb.d = [k](double) { return k; };
    nb.a_star = nb.b_star = nb.c_star = nb.d_star = k;
    return nb;
}

}  // namespace

double sine_sector_argmin() {
    static const double astar = golden_section_min(
        [](double A) { return std::sin(A) / A; }, std::numbers::pi, 2.0 * std::numbers::pi,
        1e-12);
    return astar;
}

Nonlinearity Nonlinearity::sine() {
    Nonlinearity nl;
    nl.kind_ = Kind::Sine;
    nl.name_ = "sine";
    nl.eval_ = [](double x) { return std::sin(x); };
    nl.odd_ = true;
    nl.has_bounds_ = true;
    nl.bounds_ = sine_bounds();
    return nl;
}

Nonlinearity Nonlinearity::saturation(double limit) {
    if (!(limit > 0.0)) throw std::invalid_argument("saturation: limit must be > 0");
    Nonlinearity nl;
    nl.kind_ = Kind::Saturation;
    nl.name_ = "saturation";
    nl.eval_ = [limit](double x) { return std::clamp(x, -limit, limit); };
    nl.odd_ = true;
    nl.has_bounds_ = true;
    nl.bounds_ = saturation_bounds(limit);
    return nl;
}

Nonlinearity Nonlinearity::deadzone(double width) {
    if (!(width > 0.0)) throw std::invalid_argument("deadzone: width must be > 0");
    Nonlinearity nl;
    nl.kind_ = Kind::Deadzone;
    nl.name_ = "deadzone";
    nl.eval_ = [width](double x) {
        if (std::abs(x) <= width) return 0.0;
        return x > 0.0 ? x - width : x + width;
    };
    nl.odd_ = true;
    nl.has_bounds_ = true;
    nl.bounds_ = deadzone_bounds(width);
    return nl;
}

Nonlinearity Nonlinearity::identity() {
    Nonlinearity nl;
    nl.kind_ = Kind::Custom;
    nl.name_ = "identity";
    nl.eval_ = [](double x) { return x; };
    nl.odd_ = true;
    nl.has_bounds_ = true;
    nl.bounds_ = constant_bounds(1.0);
    return nl;
}

Nonlinearity Nonlinearity::custom(std::string name, std::function<double(double)> eval,
                                  bool odd) {
    Nonlinearity nl;
    nl.kind_ = Kind::Custom;
    nl.name_ = std::move(name);
    nl.eval_ = std::move(eval);
    nl.odd_ = odd;
    return nl;
}

Nonlinearity Nonlinearity::custom(std::string name, std::function<double(double)> eval, bool odd,
                                  NonlinearityBounds bounds) {
    Nonlinearity nl = custom(std::move(name), std::move(eval), odd);
    nl.has_bounds_ = true;
    nl.bounds_ = std::move(bounds);
    return nl;
}

const NonlinearityBounds& Nonlinearity::bounds() const {
    if (!has_bounds_)
        throw std::logic_error("Nonlinearity '" + name_ + "' has no slope/sector bounds");
    return bounds_;
}

double eval_nl(const Nonlinearity& nl, double x) { return nl.eval(x); }

Interval slope_bounds(const Nonlinearity& nl, double amplitude) {
    if (std::isnan(amplitude) || amplitude < 0.0)
        throw std::invalid_argument("slope_bounds: amplitude must be >= 0");
    const auto& nb = nl.bounds();
    if (std::isinf(amplitude)) return {nb.a_star, nb.b_star};
    return {nb.a(amplitude), nb.b(amplitude)};
}

Interval sector_bounds(const Nonlinearity& nl, double amplitude) {
    if (std::isnan(amplitude) || amplitude < 0.0)
        throw std::invalid_argument("sector_bounds: amplitude must be >= 0");
    const auto& nb = nl.bounds();
    if (std::isinf(amplitude)) return {nb.c_star, nb.d_star};
    return {nb.c(amplitude), nb.d(amplitude)};
}

Asymptotes asymptotic_bounds(const Nonlinearity& nl) {
    const auto& nb = nl.bounds();
    return {nb.a_star, nb.b_star, nb.c_star, nb.d_star};
}

BoundsCheck verify_bounds_by_sampling(const Nonlinearity& nl, double max_amplitude,
                                      int amplitude_steps, int samples_per_amplitude,
                                      unsigned long long seed) {
    BoundsCheck check;
    std::mt19937_64 rng(seed);
    auto u01 = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
    for (int ia = 1; ia <= amplitude_steps; ++ia) {
        const double A = max_amplitude * ia / amplitude_steps;
        const Interval sl = slope_bounds(nl, A);
        const Interval se = sector_bounds(nl, A);
        for (int i = 0; i < samples_per_amplitude; ++i) {
            const double x = (2.0 * u01() - 1.0) * A;
            const double y = (2.0 * u01() - 1.0) * A;
            if (std::abs(x - y) > 1e-9) {
                const double q = (nl.eval(x) - nl.eval(y)) / (x - y);
                const double v = std::max(sl.lo - q, q - sl.hi);
                check.worst_slope_violation = std::max(check.worst_slope_violation, v);
            }
            if (std::abs(x) > 1e-9) {
                const double ratio = nl.eval(x) / x;
                const double v = std::max(se.lo - ratio, ratio - se.hi);
                check.worst_sector_violation = std::max(check.worst_sector_violation, v);
            }
        }
    }
    check.ok = check.worst_slope_violation <= 1e-9 && check.worst_sector_violation <= 1e-9;
    return check;
}

}  // namespace srgbode
