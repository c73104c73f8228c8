// fracstab: finite-time stability analysis of semilinear fractional-order
// systems with multiple state delays.
//
// Subcommands: ml, gronwall, simulate, check, verify, sweep.
// Exit codes: 0 success (and criterion satisfied, for `check`),
//             1 criterion not satisfied, 2 usage/parse error,
//             3 numerical failure.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fracstab/csv.hpp"
#include "fracstab/errors.hpp"
#include "fracstab/gronwall.hpp"
#include "fracstab/mittag_leffler.hpp"
#include "fracstab/solver.hpp"
#include "fracstab/stability.hpp"
#include "fracstab/system_io.hpp"

namespace {

using namespace fracstab;

constexpr int kExitOk = 0;
constexpr int kExitNotSatisfied = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

double default_ml_tol() {
    if (const char* env = std::getenv(kMlTolEnvVar)) {
        try {
            const double v = std::stod(env);
            if (v > 0.0) {
                return v;
            }
        } catch (...) {
        }
        std::cerr << "warning: ignoring invalid " << kMlTolEnvVar << "="
                  << env << "\n";
    }
    return kDefaultMlTol;
}

std::vector<double> parse_num_list(const std::string& text,
                                   const std::string& what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = text.find(',', pos);
        const std::string tok =
            text.substr(pos, next == std::string::npos ? next : next - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) {
                throw std::invalid_argument(tok);
            }
        } catch (...) {
            throw InvalidArgument(what + ": bad number \"" + tok + "\"");
        }
        if (next == std::string::npos) {
            break;
        }
        pos = next + 1;
    }
    return out;
}

// const:v1,v2 | sin:a1,a2@omega[@phase] | poly:c01,c02|c11,c12|...
HistoryFn parse_history_preset(const std::string& preset) {
    if (preset.rfind("const:", 0) == 0) {
        return HistoryFn::constant(
            parse_num_list(preset.substr(6), "history const"));
    }
    if (preset.rfind("sin:", 0) == 0) {
        const std::string body = preset.substr(4);
        const std::size_t at1 = body.find('@');
        if (at1 == std::string::npos) {
            throw InvalidArgument("history sin: needs amplitudes@omega");
        }
        const std::size_t at2 = body.find('@', at1 + 1);
        const std::string amp = body.substr(0, at1);
        const std::string omega =
            body.substr(at1 + 1, at2 == std::string::npos ? at2 : at2 - at1 - 1);
        double phase = 0.0;
        if (at2 != std::string::npos) {
            phase = std::stod(body.substr(at2 + 1));
        }
        return HistoryFn::sinusoid(parse_num_list(amp, "history sin"),
                                   std::stod(omega), phase);
    }
    if (preset.rfind("poly:", 0) == 0) {
        const std::string body = preset.substr(5);
        std::vector<std::vector<double>> coeffs;
        std::size_t pos = 0;
        while (pos <= body.size()) {
            const std::size_t next = body.find('|', pos);
            coeffs.push_back(parse_num_list(
                body.substr(pos, next == std::string::npos ? next : next - pos),
                "history poly"));
            if (next == std::string::npos) {
                break;
            }
            pos = next + 1;
        }
        return HistoryFn::polynomial(std::move(coeffs));
    }
    throw InvalidArgument("history preset: want const:...|sin:...|poly:...");
}

// zero | const:v1,... | sin:a1,...@omega
InputSignal parse_input_preset(const std::string& preset) {
    if (preset == "zero") {
        return InputSignal::zero();
    }
    if (preset.rfind("const:", 0) == 0) {
        return InputSignal::constant(
            parse_num_list(preset.substr(6), "input const"));
    }
    if (preset.rfind("sin:", 0) == 0) {
        const std::string body = preset.substr(4);
        const std::size_t at = body.find('@');
        if (at == std::string::npos) {
            throw InvalidArgument("input sin: needs amplitudes@omega");
        }
        return InputSignal::sinusoid(
            parse_num_list(body.substr(0, at), "input sin"),
            std::stod(body.substr(at + 1)));
    }
    throw InvalidArgument("input preset: want zero|const:...|sin:...");
}

// const:c | poly:c0,c1,... (scalar function of t)
std::function<double(double)> parse_scalar_preset(const std::string& preset,
                                                  const std::string& what) {
    if (preset.rfind("const:", 0) == 0) {
        const double c = std::stod(preset.substr(6));
        return [c](double) { return c; };
    }
    if (preset.rfind("poly:", 0) == 0) {
        const std::vector<double> coeffs =
            parse_num_list(preset.substr(5), what + " poly");
        return [coeffs](double t) {
            double v = 0.0;
            for (std::size_t d = coeffs.size(); d-- > 0;) {
                v = v * t + coeffs[d];
            }
            return v;
        };
    }
    throw InvalidArgument(what + " preset: want const:C or poly:c0,c1,...");
}

CriterionReport run_variant(const SystemSpec& sys, const StabilityParams& params,
                            const std::string& variant) {
    if (variant == "theorem31") {
        return criterion_theorem31(sys, params);
    }
    if (variant == "case1") {
        return criterion_special_case(sys, params, 1);
    }
    if (variant == "case2") {
        return criterion_special_case(sys, params, 2);
    }
    if (variant == "case3") {
        return criterion_special_case(sys, params, 3);
    }
    if (variant == "liu") {
        return criterion_liu_linear(sys, params);
    }
    throw InvalidArgument("variant: want theorem31|case1|case2|case3|liu|all");
}

void print_report_text(const CriterionReport& r) {
    std::cout << "variant:   " << variant_name(r.variant) << "\n"
              << "lhs:       " << format_sig12(r.lhs) << "\n"
              << "rhs:       " << format_sig12(r.rhs) << " (epsilon/delta)\n"
              << "margin:    " << format_sig12(r.margin) << "\n"
              << "satisfied: " << (r.satisfied ? "yes" : "no") << "\n"
              << "constants: sigma=" << format_sig12(r.constants.sigma)
              << " b0=" << format_sig12(r.constants.b0)
              << " L=" << format_sig12(r.constants.lipschitz_L)
              << " m=" << format_sig12(r.constants.offset_m)
              << " p=" << r.constants.p << " q=" << format_sig12(r.constants.q)
              << "\n";
}

void print_report_json(const CriterionReport& r) {
    std::cout << "{\"variant\":\"" << variant_name(r.variant)
              << "\",\"lhs\":" << format_sig12(r.lhs)
              << ",\"rhs\":" << format_sig12(r.rhs)
              << ",\"margin\":" << format_sig12(r.margin)
              << ",\"satisfied\":" << (r.satisfied ? "true" : "false")
              << ",\"sigma\":" << format_sig12(r.constants.sigma)
              << ",\"b0\":" << format_sig12(r.constants.b0)
              << ",\"L\":" << format_sig12(r.constants.lipschitz_L)
              << ",\"m\":" << format_sig12(r.constants.offset_m)
              << ",\"p\":" << r.constants.p
              << ",\"q\":" << format_sig12(r.constants.q) << "}\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Finite-time stability of semilinear fractional-order multi-delay "
        "systems: criterion checks, simulation, and Gronwall-bound tools."};
    app.require_subcommand(1);
    app.footer(std::string("Environment: ") + kMlTolEnvVar +
               " overrides the default Mittag-Leffler tolerance (" +
               format_shortest(kDefaultMlTol) + ").");

    // --- ml ---
    auto* ml_cmd =
        app.add_subcommand("ml", "Evaluate the Mittag-Leffler function E_q(z)");
    double ml_q = 0.5, ml_z = 0.0, ml_tol = default_ml_tol();
    ml_cmd->add_option("--q", ml_q, "Order q in (0, 1]")->required();
    ml_cmd->add_option("--z", ml_z, "Real argument z")->required();
    ml_cmd->add_option("--tol", ml_tol, "Absolute tolerance");

    // --- gronwall ---
    auto* gr_cmd = app.add_subcommand(
        "gronwall",
        "Tabulate the generalized Gronwall bounds and the Picard iterate");
    double gr_q = 0.5, gr_T = 1.0;
    std::size_t gr_points = 512, gr_iters = 40, gr_terms = 60;
    std::string gr_a = "const:1", gr_g = "const:1", gr_out;
    gr_cmd->add_option("--q", gr_q, "Order q in (0, 1]")->required();
    gr_cmd->add_option("--horizon", gr_T, "Right endpoint T")->required();
    gr_cmd->add_option("--points", gr_points, "Grid points (default 512)");
    gr_cmd->add_option("--a", gr_a, "a(t) preset: const:C or poly:c0,c1,...");
    gr_cmd->add_option("--g", gr_g, "g(t) preset: const:C or poly:c0,c1,...");
    gr_cmd->add_option("--iterations", gr_iters, "Picard iterations");
    gr_cmd->add_option("--terms", gr_terms, "Series bound terms");
    gr_cmd->add_option("--out", gr_out, "Output CSV path")->required();

    // --- simulate ---
    auto* sim_cmd =
        app.add_subcommand("simulate", "Integrate a system and export the "
                                       "trajectory as CSV");
    std::string sim_system, sim_hist = "const:1", sim_input = "zero", sim_out;
    double sim_T = 1.0;
    std::size_t sim_steps = 512;
    sim_cmd->add_option("--system", sim_system, "System JSON file")->required();
    sim_cmd->add_option("--history", sim_hist,
                        "History preset: const:v,..|sin:a,..@w[@ph]|poly:c|c|..");
    sim_cmd->add_option("--input", sim_input,
                        "Input preset: zero|const:v,..|sin:a,..@w");
    sim_cmd->add_option("--horizon", sim_T, "Horizon T")->required();
    sim_cmd->add_option("--steps", sim_steps, "Grid steps N (>= 16)");
    sim_cmd->add_option("--out", sim_out, "Output CSV path")->required();

    // --- check ---
    auto* chk_cmd = app.add_subcommand(
        "check", "Decide the finite-time-stability criterion");
    std::string chk_system, chk_variant = "theorem31";
    double chk_delta = 1.0, chk_eps = 2.0, chk_qu = 0.0, chk_T = 1.0;
    bool chk_json = false;
    chk_cmd->add_option("--system", chk_system, "System JSON file")->required();
    chk_cmd->add_option("--delta", chk_delta, "History bound delta")->required();
    chk_cmd->add_option("--epsilon", chk_eps, "Trajectory bound epsilon")
        ->required();
    chk_cmd->add_option("--qu", chk_qu, "Input bound q_u (default 0)");
    chk_cmd->add_option("--horizon", chk_T, "Horizon T")->required();
    chk_cmd->add_option("--variant", chk_variant,
                        "theorem31|case1|case2|case3|liu|all");
    chk_cmd->add_flag("--json", chk_json, "Structured output");

    // --- verify ---
    auto* ver_cmd = app.add_subcommand(
        "verify", "Cross-validate the verdict by randomized simulation");
    std::string ver_system, ver_out, ver_env_out;
    double ver_delta = 1.0, ver_eps = 2.0, ver_qu = 0.0, ver_T = 1.0;
    std::size_t ver_samples = 100, ver_steps = 512;
    std::uint64_t ver_seed = 1;
    ver_cmd->add_option("--system", ver_system, "System JSON file")->required();
    ver_cmd->add_option("--delta", ver_delta, "History bound delta")->required();
    ver_cmd->add_option("--epsilon", ver_eps, "Trajectory bound epsilon")
        ->required();
    ver_cmd->add_option("--qu", ver_qu, "Input bound q_u (default 0)");
    ver_cmd->add_option("--horizon", ver_T, "Horizon T")->required();
    ver_cmd->add_option("--samples", ver_samples, "Sample count");
    ver_cmd->add_option("--steps", ver_steps, "Solver steps per sample");
    ver_cmd->add_option("--seed", ver_seed, "Deterministic seed");
    ver_cmd->add_option("--out", ver_out, "Per-sample report CSV")->required();
    ver_cmd->add_option("--envelope-out", ver_env_out,
                        "Optional CSV of the proof envelope (t, bound)");

    // --- sweep ---
    auto* swp_cmd = app.add_subcommand(
        "sweep", "Sweep one stability parameter and tabulate the criterion");
    std::string swp_system, swp_param = "T", swp_variant = "theorem31", swp_out;
    double swp_delta = 1.0, swp_eps = 2.0, swp_qu = 0.0, swp_T = 1.0;
    double swp_from = 0.1, swp_to = 1.0;
    std::size_t swp_points = 11;
    swp_cmd->add_option("--system", swp_system, "System JSON file")->required();
    swp_cmd->add_option("--delta", swp_delta, "History bound delta")->required();
    swp_cmd->add_option("--epsilon", swp_eps, "Trajectory bound epsilon")
        ->required();
    swp_cmd->add_option("--qu", swp_qu, "Input bound q_u (default 0)");
    swp_cmd->add_option("--horizon", swp_T, "Horizon T (base value)")
        ->required();
    swp_cmd->add_option("--param", swp_param, "T|delta|epsilon|qu");
    swp_cmd->add_option("--from", swp_from, "Sweep start")->required();
    swp_cmd->add_option("--to", swp_to, "Sweep end")->required();
    swp_cmd->add_option("--points", swp_points, "Sweep points (>= 2)");
    swp_cmd->add_option("--variant", swp_variant,
                        "theorem31|case1|case2|case3|liu");
    swp_cmd->add_option("--out", swp_out, "Output CSV (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*ml_cmd) {
            const MLResult r = ml_eval({ml_q, ml_z, ml_tol});
            std::cout << "value " << format_shortest(r.value) << "\n"
                      << "error_estimate " << format_shortest(r.error_estimate)
                      << "\n"
                      << "terms " << r.terms_used << "\n"
                      << "regime " << (r.asymptotic ? "asymptotic" : "series")
                      << "\n";
            return kExitOk;
        }

        if (*gr_cmd) {
            BoundInputs inp;
            inp.q = gr_q;
            inp.grid = UniformGrid{gr_T, gr_points};
            const auto a_fn = parse_scalar_preset(gr_a, "--a");
            const auto g_fn = parse_scalar_preset(gr_g, "--g");
            inp.a.resize(gr_points);
            inp.g.resize(gr_points);
            for (std::size_t i = 0; i < gr_points; ++i) {
                inp.a[i] = a_fn(inp.grid.time(i));
                inp.g[i] = g_fn(inp.grid.time(i));
            }
            const std::vector<double> oracle = picard_oracle(
                inp, std::vector<double>(gr_points, 0.0), gr_iters);
            const GronwallBound series = gronwall_series_bound(inp, gr_terms);
            const GronwallBound ml = gronwall_ml_bound(inp);
            std::vector<ReportRow> rows;
            rows.reserve(gr_points);
            for (std::size_t i = 0; i < gr_points; ++i) {
                rows.push_back({format_shortest(inp.grid.time(i)),
                                format_shortest(oracle[i]),
                                format_shortest(series.series_form[i]),
                                format_shortest(ml.ml_form[i])});
            }
            emit_csv({"t", "oracle", "series_bound", "ml_form"}, rows, gr_out);
            std::cout << "wrote " << gr_out << " (" << gr_points
                      << " grid points)\n";
            return kExitOk;
        }

        if (*sim_cmd) {
            const SystemSpec sys = load_system(sim_system);
            const HistoryFn hist = parse_history_preset(sim_hist);
            const InputSignal input = parse_input_preset(sim_input);
            const Trajectory traj =
                solve_fdde(sys, hist, input, sim_T, sim_steps);
            std::vector<std::string> header{"t"};
            for (std::size_t i = 1; i <= sys.n; ++i) {
                header.push_back("x_" + std::to_string(i));
            }
            header.push_back("max_norm");
            std::vector<ReportRow> rows;
            rows.reserve(traj.times.size());
            for (std::size_t i = 0; i < traj.times.size(); ++i) {
                ReportRow row{format_shortest(traj.times[i])};
                for (double v : traj.states[i]) {
                    row.push_back(format_shortest(v));
                }
                row.push_back(format_shortest(traj.max_norms[i]));
                rows.push_back(std::move(row));
            }
            emit_csv(header, rows, sim_out);
            std::cout << "wrote " << sim_out << " (" << traj.times.size()
                      << " rows, sup norm "
                      << format_sig12(trajectory_sup_norm(traj)) << ")\n";
            return kExitOk;
        }

        if (*chk_cmd) {
            const SystemSpec sys = load_system(chk_system);
            const StabilityParams params{chk_delta, chk_eps, chk_qu, chk_T};
            if (chk_variant == "all") {
                // side-by-side comparison; special cases appear when their
                // hypotheses hold
                std::vector<CriterionReport> reports;
                reports.push_back(criterion_theorem31(sys, params));
                for (int case_no = 1; case_no <= 3; ++case_no) {
                    try {
                        reports.push_back(
                            criterion_special_case(sys, params, case_no));
                    } catch (const HypothesisViolation&) {
                    }
                }
                reports.push_back(criterion_liu_linear(sys, params));
                for (const CriterionReport& r : reports) {
                    std::cout << variant_name(r.variant) << ": lhs "
                              << format_sig12(r.lhs) << ", rhs "
                              << format_sig12(r.rhs) << ", "
                              << (r.satisfied ? "satisfied" : "not satisfied")
                              << "\n";
                }
                return reports.front().satisfied ? kExitOk : kExitNotSatisfied;
            }
            const CriterionReport r = run_variant(sys, params, chk_variant);
            if (chk_json) {
                print_report_json(r);
            } else {
                print_report_text(r);
            }
            return r.satisfied ? kExitOk : kExitNotSatisfied;
        }

        if (*ver_cmd) {
            const SystemSpec sys = load_system(ver_system);
            const StabilityParams params{ver_delta, ver_eps, ver_qu, ver_T};
            const VerificationReport rep = verify_by_simulation(
                sys, params, ver_samples, ver_steps, ver_seed);
            std::vector<ReportRow> rows;
            rows.reserve(rep.outcomes.size());
            for (const SampleOutcome& o : rep.outcomes) {
                rows.push_back({std::to_string(o.index),
                                format_shortest(o.sup_norm),
                                o.error.empty() ? (o.stable ? "1" : "0") : "",
                                o.error.empty() ? (o.under_envelope ? "1" : "0")
                                                : "",
                                o.error});
            }
            emit_csv({"sample", "sup_norm", "stable", "under_envelope",
                      "error"},
                     rows, ver_out);
            if (!ver_env_out.empty()) {
                std::vector<ReportRow> env_rows;
                env_rows.reserve(rep.envelope.size());
                for (std::size_t i = 0; i < rep.envelope.size(); ++i) {
                    env_rows.push_back({format_shortest(rep.envelope_times[i]),
                                        format_shortest(rep.envelope[i])});
                }
                emit_csv({"t", "envelope"}, env_rows, ver_env_out);
            }
            std::cout << "criterion lhs " << format_sig12(rep.criterion.lhs)
                      << " rhs " << format_sig12(rep.criterion.rhs) << " ("
                      << (rep.criterion.satisfied ? "satisfied"
                                                  : "not satisfied")
                      << ")\n"
                      << "samples " << rep.samples << ", violations "
                      << rep.violations << ", envelope violations "
                      << rep.envelope_violations << ", failures "
                      << rep.failures << "\n"
                      << "max sup norm " << format_sig12(rep.max_sup_norm)
                      << "\n";
            return kExitOk;
        }

        if (*swp_cmd) {
            if (swp_points < 2) {
                throw InvalidArgument("sweep: need at least 2 points");
            }
            const SystemSpec sys = load_system(swp_system);
            std::vector<ReportRow> rows;
            rows.reserve(swp_points);
            for (std::size_t i = 0; i < swp_points; ++i) {
                const double value =
                    swp_from + (swp_to - swp_from) * static_cast<double>(i) /
                                   static_cast<double>(swp_points - 1);
                StabilityParams params{swp_delta, swp_eps, swp_qu, swp_T};
                if (swp_param == "T") {
                    params.T = value;
                } else if (swp_param == "delta") {
                    params.delta = value;
                } else if (swp_param == "epsilon") {
                    params.epsilon = value;
                } else if (swp_param == "qu") {
                    params.q_u = value;
                } else {
                    throw InvalidArgument("sweep --param: want T|delta|epsilon|qu");
                }
                const CriterionReport r = run_variant(sys, params, swp_variant);
                rows.push_back({format_shortest(value), format_sig12(r.lhs),
                                r.satisfied ? "1" : "0"});
            }
            if (swp_out.empty()) {
                std::cout << render_csv({"value", "lhs", "satisfied"}, rows);
            } else {
                emit_csv({"value", "lhs", "satisfied"}, rows, swp_out);
                std::cout << "wrote " << swp_out << "\n";
            }
            return kExitOk;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error (line " << e.line << "): " << e.what()
                  << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        std::cerr << "invalid system: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidOrder& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const HypothesisViolation& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
