#include "fracstab/mittag_leffler.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fracstab/errors.hpp"
#include "fracstab/gamma.hpp"

namespace fracstab {

namespace {

// exp(x) overflows past ~709.78; leave headroom for the 1/q factor.
constexpr double kExpGuard = 706.0;

// Past this many terms a positive argument is handed to the asymptotic form.
constexpr std::size_t kAsymptoticAfter = 500;

// Minimum exponential argument for the asymptotic form to be trustworthy:
// the neglected corrections are then below e^-40 relative.
constexpr double kAsymptoticMinArg = 40.0;

double series_term(double q, double log_abs_z, bool negative, std::size_t k) {
    if (k == 0) {
        return 1.0;
    }
    const double mag =
        std::exp(static_cast<double>(k) * log_abs_z - log_gamma(k * q + 1.0));
    return (negative && (k & 1u)) ? -mag : mag;
}

MLResult asymptotic_eval(double q, double z, double w, std::size_t attempted) {
    MLResult res;
    res.value = std::exp(w) / q;
    res.terms_used = attempted;
    res.asymptotic = true;
    // First neglected term of the algebraic tail is z^-1 / Gamma(1-q);
    // it vanishes as q -> 1 (Gamma(0) pole), matching E_1 = exp exactly.
    res.error_estimate = (q < 1.0) ? 1.0 / (z * gamma_fn(1.0 - q)) : 0.0;
    return res;
}

}  // namespace

MLResult ml_eval(const MLQuery& query) {
    const double q = query.q;
    const double z = query.z;

    if (!(q > 0.0) || q > 1.0 || !std::isfinite(q)) {
        std::ostringstream os;
        os << "ml_eval: order q = " << q << " outside (0, 1]";
        throw InvalidOrder(os.str());
    }
    if (!(query.tol > 0.0) || !std::isfinite(z)) {
        throw InvalidArgument("ml_eval: tol must be > 0 and z finite");
    }
    if (query.term_cap == 0) {
        throw InvalidArgument("ml_eval: term_cap must be >= 1");
    }

    const double abs_z = std::fabs(z);
    const double w = abs_z > 0.0 ? std::pow(abs_z, 1.0 / q) : 0.0;
    if (w + std::log(1.0 / q) > kExpGuard) {
        std::ostringstream os;
        os << "ml_eval: |z|^(1/q) = " << w
           << " exceeds the floating-point exponential range";
        throw OverflowRisk(os.str());
    }

    const double log_abs_z =
        abs_z > 0.0 ? std::log(abs_z) : -std::numeric_limits<double>::infinity();
    const bool negative = z < 0.0;
    const std::size_t switch_at = std::min(kAsymptoticAfter, query.term_cap);

    // Compensated (Kahan) accumulation; q = 1 uses the exact factorial
    // recurrence so that E_1 reduces to the textbook exp series.
    double sum = 0.0;
    double comp = 0.0;
    double abs_sum = 0.0;
    double prev_mag = std::numeric_limits<double>::infinity();
    double term = 1.0;
    std::size_t k = 0;
    for (;; ++k) {
        if (k > 0) {
            term = (q == 1.0) ? term * z / static_cast<double>(k)
                              : series_term(q, log_abs_z, negative, k);
            const double mag = std::fabs(term);
            if (mag < query.tol && mag < prev_mag) {
                // past the hump the terms decay at worst geometrically with
                // the observed ratio, so the whole omitted tail is bounded
                const double ratio = prev_mag > 0.0 ? mag / prev_mag : 0.0;
                const double tail = mag / (1.0 - ratio);
                if (tail <= query.tol) {
                    MLResult res;
                    res.value = sum - comp;
                    res.terms_used = k;  // indices 0..k-1 accumulated
                    // alternating arguments cancel: the roundoff left behind
                    // scales with the absolute-value sum, not the result
                    const double coeff = (q == 1.0) ? 1e-15 : 2e-13;
                    const double cancel =
                        coeff * std::max(abs_sum - std::fabs(res.value), 0.0);
                    res.error_estimate = std::max(tail, cancel);
                    return res;
                }
            }
            prev_mag = mag;
        }
        if (k >= switch_at) {
            if (z > 0.0 && w >= kAsymptoticMinArg) {
                return asymptotic_eval(q, z, w, k);
            }
            if (k >= query.term_cap) {
                std::ostringstream os;
                os << "ml_eval: tolerance " << query.tol << " not reached in "
                   << query.term_cap << " terms (q = " << q << ", z = " << z
                   << ")";
                throw NonConvergence(os.str());
            }
        }
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        abs_sum += std::fabs(term);
    }
}

double ml_value(double q, double z, double tol) {
    return ml_eval({q, z, tol}).value;
}

}  // namespace fracstab
