#include "fracstab/gamma.hpp"

#include <cmath>

#include "fracstab/errors.hpp"

namespace fracstab {

namespace {

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
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

constexpr double kHalfLogTwoPi = 0.91893853320467274178032973640562;

double lanczos_log_gamma(double x) {
    // valid for x >= 0.5
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) {
        acc += kLanczos[i] / (x - 1.0 + i);
    }
    const double t = x + kLanczosG - 0.5;
    return kHalfLogTwoPi + (x - 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw InvalidArgument("log_gamma: argument must be positive");
    }
    if (x >= 0.5) {
        return lanczos_log_gamma(x);
    }
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x); both sides positive
    // for x in (0, 0.5).
    return std::log(M_PI / std::sin(M_PI * x)) - lanczos_log_gamma(1.0 - x);
}

double gamma_fn(double x) {
    if (!(x > 0.0)) {
        throw InvalidArgument("gamma_fn: argument must be positive");
    }
    if (x > 171.7) {
        return HUGE_VAL;
    }
    return std::exp(log_gamma(x));
}

}  // namespace fracstab
