#pragma once

#include <cstddef>

namespace fracstab {

/// Default absolute tolerance used wherever a caller does not pin one.
inline constexpr double kDefaultMlTol = 1e-12;

/// Environment variable that overrides the CLI's default tolerance for
/// Mittag-Leffler evaluation. Single source of truth for the name.
inline constexpr const char* kMlTolEnvVar = "FRACSTAB_ML_TOL";

/// One evaluation request for E_q(z), the one-parameter Mittag-Leffler
/// function sum_{k>=0} z^k / Gamma(k q + 1), real order q in (0, 1],
/// real argument z.
struct MLQuery {
    double q = 0.5;
    double z = 0.0;
    double tol = kDefaultMlTol;       ///< absolute tolerance, > 0
    std::size_t term_cap = 10000;     ///< series length cap
};

struct MLResult {
    double value = 0.0;
    std::size_t terms_used = 0;       ///< series terms accumulated (or attempted)
    double error_estimate = 0.0;      ///< first omitted term, or the first
                                      ///< neglected algebraic correction in
                                      ///< the asymptotic regime
    bool asymptotic = false;          ///< true if the exponential asymptotic
                                      ///< form was used instead of the series
};

/// Evaluate E_q(z).
///
/// Series terms are computed in the log domain, exp(k ln|z| - lgamma(kq+1)),
/// and accumulated with compensated summation; the sum stops once a term is
/// below tol and smaller than its predecessor (past the hump). For large
/// positive z, where the series would need more than 500 terms and the
/// exponential argument w = z^(1/q) is big enough (w >= 40) that the
/// neglected algebraic corrections are relatively negligible, the asymptotic
/// form (1/q) exp(z^(1/q)) is returned instead, with error_estimate set to
/// the first neglected correction 1/(z Gamma(1-q)).
///
/// Throws InvalidOrder (q outside (0,1]), OverflowRisk (|z|^(1/q) beyond the
/// double exponential range), NonConvergence (term cap hit with no usable
/// asymptotic regime).
MLResult ml_eval(const MLQuery& query);

/// Convenience wrapper returning just the value.
double ml_value(double q, double z, double tol = kDefaultMlTol);

}  // namespace fracstab
