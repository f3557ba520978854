#include "smallmiss/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace smallmiss {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

// Lanczos coefficients, g = 7, 9 terms.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double log_gamma_lanczos(double x) {
    const double z = x - 1.0;
    double sum = kLanczos[0];
    for (int i = 1; i < 9; ++i) {
        sum += kLanczos[i] / (z + i);
    }
    const double base = z + 7.5;
    return kHalfLog2Pi + (z + 0.5) * std::log(base) - base + std::log(sum);
}

// Stirling series with Bernoulli terms through B14; the truncation error
// at x = 10 is below 1e-16 absolute.
double log_gamma_stirling(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = inv *
        (1.0 / 12 + inv2 * (-1.0 / 360 + inv2 * (1.0 / 1260 +
         inv2 * (-1.0 / 1680 + inv2 * (1.0 / 1188 +
         inv2 * (-691.0 / 360360 + inv2 * (1.0 / 156)))))));
    return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + series;
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("log_gamma: argument must be positive");
    }
    return x < 10.0 ? log_gamma_lanczos(x) : log_gamma_stirling(x);
}

double gamma_ratio(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::domain_error("gamma_ratio: arguments must be positive");
    }
    return std::exp(log_gamma(a) - log_gamma(b));
}

}  // namespace smallmiss
