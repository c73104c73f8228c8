#include "fracstab/stability.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "fracstab/errors.hpp"
#include "fracstab/gamma.hpp"
#include "fracstab/mittag_leffler.hpp"

namespace fracstab {

void StabilityParams::validate() const {
    if (!(delta > 0.0) || !(epsilon > 0.0) || !(T > 0.0) || !(q_u >= 0.0)) {
        throw InvalidArgument(
            "StabilityParams: need delta, epsilon, T > 0 and q_u >= 0");
    }
    if (!(epsilon > delta)) {
        throw InvalidArgument(
            "StabilityParams: epsilon must exceed delta (the question is "
            "vacuous otherwise)");
    }
}

const char* variant_name(CriterionVariant v) {
    switch (v) {
        case CriterionVariant::Theorem31:
            return "theorem31";
        case CriterionVariant::SpecialCase1:
            return "case1";
        case CriterionVariant::SpecialCase2:
            return "case2";
        case CriterionVariant::SpecialCase3:
            return "case3";
        case CriterionVariant::LiuLinear:
            return "liu";
    }
    return "?";
}

DerivedConstants derive_constants(const SystemSpec& sys) {
    sys.validate();
    std::vector<Mat> all;
    all.reserve(sys.p + 1);
    all.push_back(sys.a0);
    all.insert(all.end(), sys.a_delays.begin(), sys.a_delays.end());

    DerivedConstants c;
    c.sigma = sigma_bound(all);
    c.b0 = sigma_max(sys.b0);
    c.lipschitz_L = sys.nonlinearity.lipschitz_L;
    c.offset_m = sys.nonlinearity.offset_m;
    c.p = sys.p;
    c.q = sys.q;
    return c;
}

double theorem31_lhs(const DerivedConstants& c, const StabilityParams& params) {
    params.validate();
    const double tq = std::pow(params.T, c.q);
    const double factor =
        1.0 + (c.offset_m + c.b0 * params.q_u) * tq /
                  (params.delta * gamma_fn(c.q + 1.0));
    const double arg =
        (c.lipschitz_L + c.sigma * static_cast<double>(c.p + 1)) * tq;
    return factor * ml_value(c.q, arg, 1e-12);
}

namespace {

CriterionReport make_report(CriterionVariant variant, double lhs,
                            const DerivedConstants& c,
                            const StabilityParams& params) {
    CriterionReport r;
    r.variant = variant;
    r.lhs = lhs;
    r.rhs = params.epsilon / params.delta;
    r.satisfied = lhs < r.rhs;
    r.margin = r.rhs - r.lhs;
    r.constants = c;
    return r;
}

}  // namespace

CriterionReport criterion_theorem31(const SystemSpec& sys,
                                    const StabilityParams& params) {
    const DerivedConstants c = derive_constants(sys);
    return make_report(CriterionVariant::Theorem31, theorem31_lhs(c, params), c,
                       params);
}

CriterionReport criterion_special_case(const SystemSpec& sys,
                                       const StabilityParams& params,
                                       int case_no) {
    const DerivedConstants c = derive_constants(sys);
    CriterionVariant variant;
    switch (case_no) {
        case 1:
            if (params.q_u != 0.0) {
                throw HypothesisViolation(
                    "special case 1 requires u(t) = 0, i.e. q_u = 0");
            }
            variant = CriterionVariant::SpecialCase1;
            break;
        case 2:
            if (c.offset_m != 0.0) {
                throw HypothesisViolation(
                    "special case 2 requires f(t, 0) = 0, i.e. m = 0");
            }
            variant = CriterionVariant::SpecialCase2;
            break;
        case 3:
            if (c.lipschitz_L != 0.0 || c.offset_m != 0.0) {
                throw HypothesisViolation(
                    "special case 3 requires no nonlinear term, L = m = 0");
            }
            variant = CriterionVariant::SpecialCase3;
            break;
        default:
            throw InvalidArgument("criterion_special_case: case must be 1..3");
    }
    // Under the hypothesis the reduced formula is the general one with the
    // vanished constant already zero, so the shared path gives bitwise
    // identical values.
    return make_report(variant, theorem31_lhs(c, params), c, params);
}

CriterionReport criterion_liu_linear(const SystemSpec& sys,
                                     const StabilityParams& params) {
    params.validate();
    const DerivedConstants c = derive_constants(sys);
    const double tq = std::pow(params.T, c.q);
    const double np1 = static_cast<double>(sys.n + 1);
    const double gq1 = gamma_fn(c.q + 1.0);
    const double factor = 1.0 + np1 * c.sigma * tq / gq1 +
                          params.q_u * c.b0 * tq / (params.delta * gq1);
    const double lhs = factor * ml_value(c.q, np1 * c.sigma * tq, 1e-12);
    return make_report(CriterionVariant::LiuLinear, lhs, c, params);
}

namespace {

std::vector<double> uniform_ball_vector(std::mt19937_64& rng, std::size_t n,
                                        double radius) {
    // components i.i.d. uniform on the open interval; the max-norm ball is
    // the product of intervals
    std::uniform_real_distribution<double> dist(-radius, radius);
    std::vector<double> v(n);
    for (double& x : v) {
        x = dist(rng) * (1.0 - 1e-12);
    }
    return v;
}

std::vector<double> unit_max_norm_direction(std::mt19937_64& rng,
                                            std::size_t n) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    double peak = 0.0;
    while (peak == 0.0) {
        for (double& x : v) {
            x = dist(rng);
            peak = std::max(peak, std::fabs(x));
        }
    }
    for (double& x : v) {
        x /= peak;
    }
    return v;
}

HistoryFn draw_history(std::mt19937_64& rng, std::size_t n, double delta,
                       double horizon) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    if (u01(rng) < 0.8) {
        return HistoryFn::constant(uniform_ball_vector(rng, n, delta));
    }
    std::vector<double> amp = unit_max_norm_direction(rng, n);
    for (double& a : amp) {
        a *= 0.95 * delta;
    }
    std::uniform_real_distribution<double> freq(1.0, 10.0);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * M_PI);
    return HistoryFn::sinusoid(std::move(amp), freq(rng) / horizon, ph(rng));
}

InputSignal draw_input(std::mt19937_64& rng, std::size_t m_in, double q_u,
                       double horizon) {
    if (q_u <= 0.0) {
        return InputSignal::zero();
    }
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    if (u01(rng) < 0.8) {
        return InputSignal::constant(uniform_ball_vector(rng, m_in, q_u));
    }
    std::vector<double> amp = unit_max_norm_direction(rng, m_in);
    for (double& a : amp) {
        a *= 0.95 * q_u;
    }
    std::uniform_real_distribution<double> freq(1.0, 10.0);
    return InputSignal::sinusoid(std::move(amp), freq(rng) / horizon);
}

}  // namespace

VerificationReport verify_by_simulation(const SystemSpec& sys,
                                        const StabilityParams& params,
                                        std::size_t samples, std::size_t steps,
                                        std::uint64_t seed) {
    params.validate();
    if (samples < 1) {
        throw InvalidArgument("verify_by_simulation: samples must be >= 1");
    }
    const DerivedConstants c = derive_constants(sys);

    VerificationReport rep;
    rep.samples = samples;
    rep.criterion =
        make_report(CriterionVariant::Theorem31, theorem31_lhs(c, params), c,
                    params);

    // proof envelope a(t) E_q(g Gamma(q) t^q), shared by every sample
    const double g_const =
        (c.lipschitz_L + c.sigma * static_cast<double>(c.p + 1)) /
        gamma_fn(c.q);
    const double gq1 = gamma_fn(c.q + 1.0);
    const double gq = gamma_fn(c.q);
    rep.envelope_times.resize(steps + 1);
    rep.envelope.resize(steps + 1);
    double env_max = 0.0;
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t =
            params.T * static_cast<double>(i) / static_cast<double>(steps);
        const double tq = std::pow(t, c.q);
        const double a_t =
            params.delta + (c.offset_m + c.b0 * params.q_u) * tq / gq1;
        rep.envelope_times[i] = t;
        rep.envelope[i] = a_t * ml_value(c.q, g_const * gq * tq, 1e-12);
        env_max = std::max(env_max, rep.envelope[i]);
    }
    const double h = params.T / static_cast<double>(steps);
    rep.envelope_tolerance =
        50.0 * std::pow(h, std::min(2.0, 1.0 + c.q)) * std::max(1.0, env_max);

    for (std::size_t i = 0; i < samples; ++i) {
        std::mt19937_64 rng(seed + i);
        SampleOutcome out;
        out.index = i;
        const HistoryFn hist = draw_history(rng, sys.n, params.delta, params.T);
        const InputSignal input =
            draw_input(rng, sys.input_dim(), params.q_u, params.T);
        try {
            const Trajectory traj =
                solve_fdde(sys, hist, input, params.T, steps);
            out.sup_norm = trajectory_sup_norm(traj);
            out.stable = out.sup_norm < params.epsilon;
            out.under_envelope = true;
            for (std::size_t k = 0; k <= steps; ++k) {
                if (traj.max_norms[k] >
                    rep.envelope[k] + rep.envelope_tolerance) {
                    out.under_envelope = false;
                    break;
                }
            }
            rep.max_sup_norm = std::max(rep.max_sup_norm, out.sup_norm);
            if (!out.stable) {
                ++rep.violations;
            }
            if (!out.under_envelope) {
                ++rep.envelope_violations;
            }
        } catch (const Error& e) {
            out.error = e.what();
            ++rep.failures;
        }
        rep.outcomes.push_back(std::move(out));
    }
    return rep;
}

}  // namespace fracstab
