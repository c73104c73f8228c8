#pragma once

#include <cstddef>
#include <vector>

namespace fracstab {

/// Uniform time grid on [0, t_end] with `points` samples including both
/// endpoints (so the spacing is t_end / (points - 1)).
struct UniformGrid {
    double t_end = 1.0;
    std::size_t points = 512;

    double step() const { return t_end / static_cast<double>(points - 1); }
    double time(std::size_t i) const {
        return t_end * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    std::vector<double> times() const;
};

/// Data of the scalar integral inequality
///   y(t) <= a(t) + g(t) * integral_0^t (t-s)^(q-1) y(s) ds
/// with a, g sampled on the grid; a, g >= 0 and g nondecreasing.
struct BoundInputs {
    double q = 0.5;
    UniformGrid grid;
    std::vector<double> a;
    std::vector<double> g;
};

/// Checks grid/sample consistency, nonnegativity of a and g, and that g is
/// nondecreasing. Throws InvalidArgument / NotNondecreasing.
void validate(const BoundInputs& inp);

struct GronwallBound {
    UniformGrid grid;
    std::vector<double> ml_form;      ///< a(t) E_q(g(t) Gamma(q) t^q)
    std::vector<double> series_form;  ///< truncated integral-series bound
    std::size_t series_terms = 0;
    double series_tail_estimate = 0.0;  ///< max over the grid, from the ratio
                                        ///< of the last two term integrals
};

/// Mittag-Leffler closed-form bound. Requires a(t) nondecreasing on the grid
/// (throws NotNondecreasing otherwise). ML evaluations at tolerance 1e-12.
GronwallBound gronwall_ml_bound(const BoundInputs& inp);

/// Truncated integral-series bound
///   a(t) + integral_0^t sum_{n=1}^{n_terms} [g(t)Gamma(q)]^n / Gamma(nq)
///                        * (t-s)^(nq-1) a(s) ds,
/// each weakly singular integral evaluated by product integration (the
/// (t-s)^(nq-1) weight integrated exactly against piecewise-linear a).
GronwallBound gronwall_series_bound(const BoundInputs& inp, std::size_t n_terms);

/// Brute-force comparison function: the Picard iteration
///   y_{k+1}(t) = a(t) + g(t) * integral_0^t (t-s)^(q-1) y_k(s) ds
/// run for `iterations` steps from y0. Iterates increase monotonically
/// toward the maximal solution, which the Gronwall bounds must dominate.
std::vector<double> picard_oracle(const BoundInputs& inp,
                                  const std::vector<double>& y0,
                                  std::size_t iterations);

/// Grid-quadrature error estimate for picard_oracle: reruns the iteration on
/// a roughly half-resolution grid and returns the max discrepancy against
/// the fine result at the coarse times (a conservative overestimate of the
/// fine-grid error).
double picard_error_estimate(const BoundInputs& inp, std::size_t iterations);

namespace detail {

/// I[i] = integral_0^{t_i} (t_i - s)^(alpha-1) f(s) ds for every grid index,
/// f piecewise linear on a uniform grid of spacing h. Exact moments per
/// subinterval, O(points^2) total with no pow() in the inner loop.
std::vector<double> singular_conv(double alpha, double h,
                                  const std::vector<double>& f);

}  // namespace detail

}  // namespace fracstab
