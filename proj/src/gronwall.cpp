#include "fracstab/gronwall.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

#include "fracstab/errors.hpp"
#include "fracstab/gamma.hpp"
#include "fracstab/mittag_leffler.hpp"

namespace fracstab {

std::vector<double> UniformGrid::times() const {
    std::vector<double> t(points);
    for (std::size_t i = 0; i < points; ++i) {
        t[i] = time(i);
    }
    return t;
}

void validate(const BoundInputs& inp) {
    if (!(inp.q > 0.0) || inp.q > 1.0) {
        throw InvalidArgument("BoundInputs: q must be in (0, 1]");
    }
    if (inp.grid.points < 2 || !(inp.grid.t_end > 0.0)) {
        throw InvalidArgument("BoundInputs: grid needs t_end > 0 and >= 2 points");
    }
    if (inp.a.size() != inp.grid.points || inp.g.size() != inp.grid.points) {
        throw InvalidArgument("BoundInputs: sample counts must match the grid");
    }
    for (std::size_t i = 0; i < inp.grid.points; ++i) {
        if (!(inp.a[i] >= 0.0) || !(inp.g[i] >= 0.0)) {
            std::ostringstream os;
            os << "BoundInputs: a and g must be nonnegative (index " << i << ")";
            throw InvalidArgument(os.str());
        }
        if (i > 0 && inp.g[i] < inp.g[i - 1]) {
            std::ostringstream os;
            os << "BoundInputs: g must be nondecreasing (index " << i << ")";
            throw NotNondecreasing(os.str());
        }
    }
}

namespace detail {

std::vector<double> singular_conv(double alpha, double h,
                                  const std::vector<double>& f) {
    assert(alpha > 0.0);  // nq - 1 <= -1 is impossible for n >= 1, q > 0
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 2) {
        return out;
    }

    // Exact kernel moments over one subinterval at lag k, with u = t - s
    // running over [(k-1)h, kh]:
    //   A_k = integral u^alpha du,  B_k = integral u^(alpha-1) du,
    // combined into left/right weights of the piecewise-linear interpolant.
    // Powers are taken of the lag time kh (bounded by t_end), not of the
    // bare index, so large alpha cannot overflow.
    std::vector<double> pw(n), pw1(n);  // (kh)^alpha, (kh)^(alpha+1)
    for (std::size_t k = 0; k < n; ++k) {
        const double u = static_cast<double>(k) * h;
        pw[k] = std::pow(u, alpha);
        pw1[k] = pw[k] * u;
    }
    std::vector<double> w_left(n), w_right(n);
    for (std::size_t k = 1; k < n; ++k) {
        const double u0 = static_cast<double>(k) * h;
        const double u1 = u0 - h;
        const double a_k = (pw1[k] - pw1[k - 1]) / (alpha + 1.0);
        const double b_k = (pw[k] - pw[k - 1]) / alpha;
        w_left[k] = (a_k - u1 * b_k) / h;
        w_right[k] = (u0 * b_k - a_k) / h;
    }

    for (std::size_t i = 1; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            const std::size_t k = i - j;
            acc += f[j] * w_left[k] + f[j + 1] * w_right[k];
        }
        out[i] = acc;
    }
    return out;
}

}  // namespace detail

GronwallBound gronwall_ml_bound(const BoundInputs& inp) {
    validate(inp);
    for (std::size_t i = 1; i < inp.a.size(); ++i) {
        if (inp.a[i] < inp.a[i - 1]) {
            std::ostringstream os;
            os << "gronwall_ml_bound: a must be nondecreasing (index " << i << ")";
            throw NotNondecreasing(os.str());
        }
    }
    const double gq = gamma_fn(inp.q);
    GronwallBound bound;
    bound.grid = inp.grid;
    bound.ml_form.resize(inp.grid.points);
    for (std::size_t i = 0; i < inp.grid.points; ++i) {
        const double arg = inp.g[i] * gq * std::pow(inp.grid.time(i), inp.q);
        bound.ml_form[i] = inp.a[i] * ml_value(inp.q, arg, 1e-12);
    }
    return bound;
}

GronwallBound gronwall_series_bound(const BoundInputs& inp, std::size_t n_terms) {
    validate(inp);
    if (n_terms < 1) {
        throw InvalidArgument("gronwall_series_bound: n_terms must be >= 1");
    }
    const std::size_t pts = inp.grid.points;
    const double h = inp.grid.step();
    const double log_gq = log_gamma(inp.q);

    GronwallBound bound;
    bound.grid = inp.grid;
    bound.series_terms = n_terms;
    bound.series_form = inp.a;

    std::vector<double> prev_term(pts, 0.0);
    std::vector<double> tail(pts, 0.0);
    for (std::size_t n = 1; n <= n_terms; ++n) {
        const double nd = static_cast<double>(n);
        const std::vector<double> conv =
            detail::singular_conv(nd * inp.q, h, inp.a);
        const double log_coeff_gamma = log_gamma(nd * inp.q);
        for (std::size_t i = 0; i < pts; ++i) {
            double term = 0.0;
            if (inp.g[i] > 0.0 && conv[i] > 0.0) {
                // [g Gamma(q)]^n / Gamma(nq) in the log domain; the integral
                // factor stays linear so zero samples short-circuit cleanly.
                term = std::exp(nd * (std::log(inp.g[i]) + log_gq) -
                                log_coeff_gamma) *
                       conv[i];
            }
            bound.series_form[i] += term;
            if (n == n_terms && prev_term[i] > 0.0 && term < prev_term[i]) {
                const double ratio = term / prev_term[i];
                tail[i] = term * ratio / (1.0 - ratio);
            }
            prev_term[i] = term;
        }
    }
    double worst = 0.0;
    for (double t : tail) {
        worst = std::max(worst, t);
    }
    bound.series_tail_estimate = worst;
    return bound;
}

std::vector<double> picard_oracle(const BoundInputs& inp,
                                  const std::vector<double>& y0,
                                  std::size_t iterations) {
    validate(inp);
    if (y0.size() != inp.grid.points) {
        throw InvalidArgument("picard_oracle: y0 must match the grid");
    }
    if (iterations < 1) {
        throw InvalidArgument("picard_oracle: iterations must be >= 1");
    }
    std::vector<double> y = y0;
    for (std::size_t it = 0; it < iterations; ++it) {
        const std::vector<double> conv =
            detail::singular_conv(inp.q, inp.grid.step(), y);
        for (std::size_t i = 0; i < inp.grid.points; ++i) {
            y[i] = inp.a[i] + inp.g[i] * conv[i];
        }
    }
    return y;
}

double picard_error_estimate(const BoundInputs& inp, std::size_t iterations) {
    validate(inp);
    const std::size_t fine_pts = inp.grid.points;
    const std::size_t coarse_pts = std::max<std::size_t>(fine_pts / 2, 2);

    BoundInputs coarse;
    coarse.q = inp.q;
    coarse.grid = UniformGrid{inp.grid.t_end, coarse_pts};
    coarse.a.resize(coarse_pts);
    coarse.g.resize(coarse_pts);
    // resample a, g at the coarse times by linear interpolation
    const double fine_h = inp.grid.step();
    for (std::size_t i = 0; i < coarse_pts; ++i) {
        const double t = coarse.grid.time(i);
        const double pos = t / fine_h;
        std::size_t j = static_cast<std::size_t>(pos);
        if (j >= fine_pts - 1) {
            j = fine_pts - 2;
        }
        const double theta = pos - static_cast<double>(j);
        coarse.a[i] = (1.0 - theta) * inp.a[j] + theta * inp.a[j + 1];
        coarse.g[i] = (1.0 - theta) * inp.g[j] + theta * inp.g[j + 1];
    }
    // keep g nondecreasing under interpolation rounding
    for (std::size_t i = 1; i < coarse_pts; ++i) {
        coarse.g[i] = std::max(coarse.g[i], coarse.g[i - 1]);
    }

    const std::vector<double> fine =
        picard_oracle(inp, std::vector<double>(fine_pts, 0.0), iterations);
    const std::vector<double> rough =
        picard_oracle(coarse, std::vector<double>(coarse_pts, 0.0), iterations);

    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < coarse_pts; ++i) {
        const double t = coarse.grid.time(i);
        const double pos = t / fine_h;
        std::size_t j = static_cast<std::size_t>(pos);
        if (j >= fine_pts - 1) {
            j = fine_pts - 2;
        }
        const double theta = pos - static_cast<double>(j);
        const double y_fine = (1.0 - theta) * fine[j] + theta * fine[j + 1];
        worst = std::max(worst, std::fabs(y_fine - rough[i]));
        scale = std::max(scale, std::fabs(y_fine));
    }
    // floor keeps the estimate usable when both grids are exact
    return std::max(worst, 1e-13 * std::max(scale, 1.0));
}

}  // namespace fracstab
