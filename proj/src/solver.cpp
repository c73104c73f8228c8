#include "fracstab/solver.hpp"

#include <cmath>
#include <sstream>

#include "fracstab/errors.hpp"
#include "fracstab/gamma.hpp"

namespace fracstab {

namespace {

using Vec = std::vector<double>;

void axpy(double a, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] += a * x[i];
    }
}

double max_abs(const Vec& x) {
    double best = 0.0;
    for (double v : x) {
        best = std::max(best, std::fabs(v));
    }
    return best;
}

/// Evaluates the right-hand side F(t, x) of the Volterra form, pulling
/// delayed states from the history function or from the computed grid.
class Rhs {
public:
    Rhs(const SystemSpec& sys, const HistoryFn& hist, const InputSignal& input,
        double h, const std::vector<Vec>& states)
        : sys_(sys), hist_(hist), input_(input), h_(h), states_(states) {}

    /// `pending` is the not-yet-committed state at grid index `pending_index`
    /// (the predictor or corrector iterate); delayed arguments may fall
    /// between the last committed state and the pending one when tau < h.
    Vec operator()(double t, const Vec& x, std::size_t pending_index,
                   const Vec& pending) const {
        Vec out = mat_vec(sys_.a0, x);
        for (std::size_t d = 0; d < sys_.p; ++d) {
            const Vec xd = delayed(t - sys_.taus[d], pending_index, pending);
            const Vec contrib = mat_vec(sys_.a_delays[d], xd);
            axpy(1.0, contrib, out);
        }
        if (input_.kind != InputSignal::Kind::Zero) {
            const Vec u = input_.eval(t, sys_.input_dim());
            const Vec contrib = mat_vec(sys_.b0, u);
            axpy(1.0, contrib, out);
        }
        if (sys_.nonlinearity.kind != NonlinDescriptor::Kind::Zero) {
            const Vec f = sys_.nonlinearity.eval(t, x);
            axpy(1.0, f, out);
        }
        return out;
    }

private:
    Vec delayed(double arg, std::size_t pending_index, const Vec& pending) const {
        if (arg <= 0.0) {
            return hist_.eval(arg);
        }
        const double pos = arg / h_;
        std::size_t j = static_cast<std::size_t>(pos);
        if (j + 1 > pending_index) {
            j = pending_index - 1;
        }
        const double theta = pos - static_cast<double>(j);
        const Vec& right = (j + 1 == pending_index && pending_index >= states_.size())
                               ? pending
                               : states_[j + 1];
        Vec out(right.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = (1.0 - theta) * states_[j][i] + theta * right[i];
        }
        return out;
    }

    const SystemSpec& sys_;
    const HistoryFn& hist_;
    const InputSignal& input_;
    double h_;
    const std::vector<Vec>& states_;
};

}  // namespace

Trajectory solve_fdde(const SystemSpec& sys, const HistoryFn& hist,
                      const InputSignal& input, double horizon,
                      std::size_t steps, const SolveOptions& opts) {
    sys.validate();
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw InvalidHorizon("solve_fdde: horizon must be positive and finite");
    }
    if (steps < 16) {
        throw InvalidHorizon("solve_fdde: need at least 16 steps");
    }
    if (hist.dim() != sys.n) {
        throw InvalidArgument("solve_fdde: history dimension must equal n");
    }
    if (input.kind != InputSignal::Kind::Zero &&
        input.eval(0.0, sys.input_dim()).size() != sys.input_dim()) {
        throw InvalidArgument("solve_fdde: input dimension must match B0");
    }

    const std::size_t n_steps = steps;
    const double h = horizon / static_cast<double>(n_steps);
    const double q = sys.q;

    // lag-power tables: all Adams weights are index differences of these,
    // so the stepping loop does no pow() at all
    std::vector<double> pow_q(n_steps + 2), pow_q1(n_steps + 2);
    for (std::size_t k = 0; k < n_steps + 2; ++k) {
        const double kd = static_cast<double>(k);
        pow_q[k] = std::pow(kd, q);
        pow_q1[k] = pow_q[k] * kd;
    }
    const double hq = std::pow(h, q);
    const double pred_scale = hq / (q * gamma_fn(q));      // h^q / Gamma(q+1) * ...
    const double corr_scale = hq / gamma_fn(q + 2.0);

    Trajectory traj;
    traj.step_h = h;
    traj.times.resize(n_steps + 1);
    traj.states.reserve(n_steps + 1);
    traj.max_norms.resize(n_steps + 1);

    Vec x0 = hist.eval(0.0);
    traj.states.push_back(x0);
    traj.times[0] = 0.0;
    traj.max_norms[0] = max_abs(x0);

    Rhs rhs(sys, hist, input, h, traj.states);
    std::vector<Vec> f_hist;
    f_hist.reserve(n_steps + 1);
    f_hist.push_back(rhs(0.0, x0, 0, x0));

    for (std::size_t n = 0; n < n_steps; ++n) {
        const double t_next = static_cast<double>(n + 1) * h;

        // predictor: product-rectangle weights (k^q differences)
        Vec xp = x0;
        for (std::size_t j = 0; j <= n; ++j) {
            const std::size_t k = n + 1 - j;
            const double b = pred_scale * (pow_q[k] - pow_q[k - 1]);
            axpy(b, f_hist[j], xp);
        }
        Vec fp = rhs(t_next, xp, n + 1, xp);

        // corrector: product-trapezoid weights, `corrector_sweeps` passes
        Vec x_next = xp;
        for (std::size_t sweep = 0; sweep < opts.corrector_sweeps; ++sweep) {
            Vec acc = x0;
            const double nd = static_cast<double>(n);
            const double w0 = pow_q1[n] - (nd - q) * pow_q[n + 1];
            axpy(corr_scale * w0, f_hist[0], acc);
            for (std::size_t j = 1; j <= n; ++j) {
                const std::size_t k = n - j;
                const double w = pow_q1[k + 2] + pow_q1[k] - 2.0 * pow_q1[k + 1];
                axpy(corr_scale * w, f_hist[j], acc);
            }
            axpy(corr_scale, fp, acc);
            x_next = std::move(acc);
            if (sweep + 1 < opts.corrector_sweeps) {
                fp = rhs(t_next, x_next, n + 1, x_next);
            }
        }

        const double norm = max_abs(x_next);
        if (!(norm <= opts.blowup_guard)) {
            std::ostringstream os;
            os << "solve_fdde: state norm " << norm << " exceeded guard "
               << opts.blowup_guard << " at t = " << t_next;
            throw UnstableBlowup(os.str());
        }

        traj.states.push_back(std::move(x_next));
        traj.times[n + 1] = t_next;
        traj.max_norms[n + 1] = norm;
        f_hist.push_back(rhs(t_next, traj.states.back(), n + 1,
                             traj.states.back()));
    }
    return traj;
}

double trajectory_sup_norm(const Trajectory& traj) {
    if (traj.max_norms.empty()) {
        throw InvalidArgument("trajectory_sup_norm: empty trajectory");
    }
    double best = 0.0;
    for (double v : traj.max_norms) {
        best = std::max(best, v);
    }
    return best;
}

}  // namespace fracstab
