#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "srgbode/lti.hpp"

namespace test_helpers {

inline double u01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * u01(rng);
}

// (coefficients ascending) *= (s - root)
inline void multiply_root(std::vector<double>& poly, double root) {
    std::vector<double> out(poly.size() + 1, 0.0);
    for (size_t i = 0; i < poly.size(); ++i) {
        out[i] += -root * poly[i];
        out[i + 1] += poly[i];
    }
    poly = out;
}

// *= (s^2 - 2 re s + re^2 + im^2), the factor of a conjugate pole pair
inline void multiply_pair(std::vector<double>& poly, double re, double im) {
    std::vector<double> out(poly.size() + 2, 0.0);
    const double c0 = re * re + im * im;
    const double c1 = -2.0 * re;
    for (size_t i = 0; i < poly.size(); ++i) {
        out[i] += c0 * poly[i];
        out[i + 1] += c1 * poly[i];
        out[i + 2] += poly[i];
    }
    poly = out;
}

// Random stable transfer function with denominator degree in [1, max_degree]
// (poles with real part in [-5, -0.1]) and a random proper numerator.
inline srgbode::TransferFunction random_stable_tf(std::mt19937_64& rng, int max_degree = 5,
                                                  bool strictly_proper = false) {
    const int n = 1 + static_cast<int>(u01(rng) * max_degree) % max_degree;
    std::vector<double> den{1.0};
    int placed = 0;
    while (placed < n) {
        if (n - placed >= 2 && u01(rng) < 0.5) {
            multiply_pair(den, uniform(rng, -5.0, -0.1), uniform(rng, 0.1, 5.0));
            placed += 2;
        } else {
            multiply_root(den, uniform(rng, -5.0, -0.1));
            placed += 1;
        }
    }
    const int mmax = strictly_proper ? n - 1 : n;
    const int m = static_cast<int>(u01(rng) * (mmax + 1)) % (mmax + 1);
    std::vector<double> num(m + 1);
    for (double& c : num) c = uniform(rng, -2.0, 2.0);
    if (num.back() == 0.0) num.back() = 1.0;
    return srgbode::TransferFunction(num, den);
}

}  // namespace test_helpers
