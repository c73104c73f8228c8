#pragma once

namespace fracstab {

/// Natural log of the gamma function for x > 0 (Lanczos approximation,
/// reflection for x < 0.5). Accurate to ~1e-15 relative; thread-safe,
/// unlike lgamma() which touches the global signgam.
double log_gamma(double x);

/// Gamma(x) for x > 0. Overflows to +inf for x > ~171.62.
double gamma_fn(double x);

}  // namespace fracstab
