#pragma once

#include <cstddef>
#include <vector>

#include "fracstab/system.hpp"

namespace fracstab {

/// Computed solution samples on the uniform grid t_i = i T / N, i = 0..N.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::vector<double> max_norms;  ///< per-step uniform norm
    double step_h = 0.0;
};

struct SolveOptions {
    double blowup_guard = 1e12;     ///< throw UnstableBlowup past this norm
    std::size_t corrector_sweeps = 1;
};

/// Integrate the Caputo-form system as the equivalent Volterra equation
///   x(t) = x(0) + (1/Gamma(q)) integral_0^t (t-s)^(q-1) F(s, x) ds
/// with the fractional Adams PECE scheme: product-rectangle predictor,
/// product-trapezoid corrector, full-history memory. Delayed states at
/// arguments <= 0 come from the history function exactly; later arguments
/// use linear interpolation between the bracketing grid states. Global
/// error is O(h^min(2, 1+q)) on smooth problems.
///
/// Throws InvalidHorizon (T <= 0 or N < 16), UnstableBlowup.
Trajectory solve_fdde(const SystemSpec& sys, const HistoryFn& hist,
                      const InputSignal& input, double horizon, std::size_t steps,
                      const SolveOptions& opts = {});

/// max over the grid of the per-step uniform norms.
double trajectory_sup_norm(const Trajectory& traj);

}  // namespace fracstab
