#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fracstab/solver.hpp"
#include "fracstab/system.hpp"

namespace fracstab {

/// The finite-time-stability question {delta, epsilon, q_u, J = [0, T]}:
/// histories bounded by delta and inputs bounded by q_u must keep the
/// trajectory below epsilon over the horizon.
struct StabilityParams {
    double delta = 1.0;
    double epsilon = 2.0;
    double q_u = 0.0;
    double T = 1.0;

    void validate() const;  ///< delta, epsilon, T > 0; q_u >= 0; epsilon > delta
};

/// Constants the criteria derive from a system: sigma = max largest singular
/// value over {A0..Ap}, b0 = sigma_max(B0), the nonlinearity's L and m.
struct DerivedConstants {
    double sigma = 0.0;
    double b0 = 0.0;
    double lipschitz_L = 0.0;
    double offset_m = 0.0;
    std::size_t p = 0;
    double q = 1.0;
};

enum class CriterionVariant {
    Theorem31,
    SpecialCase1,  ///< u(t) = 0, i.e. q_u = 0
    SpecialCase2,  ///< f(t, 0) = 0, i.e. m = 0
    SpecialCase3,  ///< no nonlinear term, L = m = 0
    LiuLinear,     ///< the prior linear-system criterion
};

const char* variant_name(CriterionVariant v);

struct CriterionReport {
    CriterionVariant variant = CriterionVariant::Theorem31;
    double lhs = 0.0;
    double rhs = 0.0;      ///< epsilon / delta
    bool satisfied = false;  ///< lhs < rhs, strict
    double margin = 0.0;     ///< rhs - lhs
    DerivedConstants constants;
};

DerivedConstants derive_constants(const SystemSpec& sys);

/// LHS of the main criterion,
///   [1 + (m + b0 q_u) T^q / (delta Gamma(q+1))] E_q{(L + sigma (p+1)) T^q},
/// evaluated with ML tolerance 1e-12. The special cases reuse this exact
/// path so their reductions agree bitwise under their hypotheses.
double theorem31_lhs(const DerivedConstants& c, const StabilityParams& params);

CriterionReport criterion_theorem31(const SystemSpec& sys,
                                    const StabilityParams& params);

/// The reduced criteria. The system must actually satisfy the case's
/// hypothesis (1: q_u = 0; 2: m = 0; 3: L = m = 0); throws
/// HypothesisViolation naming the unmet condition otherwise.
CriterionReport criterion_special_case(const SystemSpec& sys,
                                       const StabilityParams& params, int case_no);

/// Prior linear-system criterion at t = T:
///   [1 + (n+1) sigma T^q / Gamma(q+1) + q_u b0 T^q / (delta Gamma(q+1))]
///     * E_q((n+1) sigma T^q).
CriterionReport criterion_liu_linear(const SystemSpec& sys,
                                     const StabilityParams& params);

struct SampleOutcome {
    std::size_t index = 0;
    double sup_norm = 0.0;
    bool stable = false;          ///< sup_norm < epsilon
    bool under_envelope = false;  ///< stayed below the proof envelope
    std::string error;            ///< nonempty if the solve failed
};

struct VerificationReport {
    std::size_t samples = 0;
    std::size_t violations = 0;           ///< samples with sup_norm >= epsilon
    std::size_t envelope_violations = 0;
    std::size_t failures = 0;             ///< solver errors (not verdicts)
    double max_sup_norm = 0.0;
    std::vector<SampleOutcome> outcomes;
    std::vector<double> envelope_times;
    std::vector<double> envelope;  ///< a(t) E_q(g Gamma(q) t^q) per grid point
    double envelope_tolerance = 0.0;
    CriterionReport criterion;     ///< main-criterion verdict for context
};

/// Empirically cross-validates the stability question: draws `samples`
/// catalog histories with sup norm below delta (80% constant vectors uniform
/// in the open delta-ball, 20% sinusoids of amplitude 0.95 delta) and inputs
/// below q_u (same mix, or zero input when q_u = 0), solves each over
/// [0, T] with `steps` grid intervals, and reports per-sample sup norms and
/// verdicts plus the proof's analytic envelope with
///   a(t) = delta + (m + b0 q_u) t^q / Gamma(q+1),
///   g    = (L + sigma (p+1)) / Gamma(q).
/// Sample i uses seed + i, so results are order-independent. Solver errors
/// are recorded per sample without aborting the batch.
VerificationReport verify_by_simulation(const SystemSpec& sys,
                                        const StabilityParams& params,
                                        std::size_t samples, std::size_t steps,
                                        std::uint64_t seed);

}  // namespace fracstab
