// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] = path to the CLI binary, argv[2] = data directory with
// the sample system files (defaults support running from the build tree).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracstab/csv.hpp"
#include "fracstab/errors.hpp"
#include "fracstab/gronwall.hpp"
#include "fracstab/mittag_leffler.hpp"
#include "fracstab/solver.hpp"
#include "fracstab/stability.hpp"
#include "fracstab/system_io.hpp"
#include "support/oracles.hpp"
#include "support/random_systems.hpp"

namespace fs = std::filesystem;
using namespace fracstab;

namespace {

std::string g_cli_path;
fs::path g_data_dir;

struct Criterion {
    int number;
    const char* label;
    double time_budget_s;
    std::function<std::string()> run;  // empty string = pass, else reason
};

std::string read_file(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

int run_cli(const std::string& args) {
    const std::string cmd =
        "\"" + g_cli_path + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status < 0) {
        return -1;
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// --- 1: Mittag-Leffler reductions ---

std::string criterion_ml_reductions() {
    double worst_exp = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double z = -5.0 + 0.1 * i;
        worst_exp = std::max(worst_exp,
                             std::fabs(ml_value(1.0, z, 1e-12) - std::exp(z)));
    }
    if (worst_exp > 1e-10) {
        return "exp reduction error " + format_sig12(worst_exp);
    }
    double worst_erfc = 0.0;
    for (int i = 0; i <= 120; ++i) {
        const double z = 3.0 * i / 120.0;
        worst_erfc =
            std::max(worst_erfc, std::fabs(ml_value(0.5, z, 1e-10) -
                                           oracles::ml_half_erfc(z)));
    }
    if (worst_erfc > 1e-9) {
        return "erfc closed-form error " + format_sig12(worst_erfc);
    }
    return {};
}

// --- 2: Gronwall dominance + series/ML consistency ---

std::string criterion_gronwall() {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> coeff(0.0, 1.5);
    const double qs[] = {0.3, 0.5, 0.8, 1.0};
    for (int rep = 0; rep < 20; ++rep) {
        const double q = qs[rep % 4];
        // keep the 60-term series tail below 1e-7 for the consistency check
        const double g_cap = q <= 0.3 ? 0.4 : (q <= 0.5 ? 1.2 : 2.0);
        std::uniform_real_distribution<double> g_dist(0.05, g_cap);

        BoundInputs inp;
        inp.q = q;
        inp.grid = UniformGrid{1.0, 512};
        inp.g.assign(512, g_dist(rng));
        inp.a.resize(512);
        const bool const_a = rep % 2 == 0;
        const double a0 = 0.25 + coeff(rng), a1 = coeff(rng), a2 = coeff(rng);
        for (std::size_t i = 0; i < 512; ++i) {
            const double t = inp.grid.time(i);
            inp.a[i] = const_a ? a0 : a0 + a1 * t + a2 * t * t;
        }

        const std::vector<double> picard =
            picard_oracle(inp, std::vector<double>(512, 0.0), 40);
        const GronwallBound ml = gronwall_ml_bound(inp);
        const double slack = 10.0 * picard_error_estimate(inp, 40);
        for (std::size_t i = 0; i < 512; ++i) {
            if (picard[i] > ml.ml_form[i] + slack) {
                std::ostringstream os;
                os << "dominance broken at instance " << rep << ", t = "
                   << format_sig12(inp.grid.time(i)) << " (oracle "
                   << format_sig12(picard[i]) << " > bound "
                   << format_sig12(ml.ml_form[i]) << " + " << format_sig12(slack)
                   << ")";
                return os.str();
            }
        }

        if (const_a) {
            const GronwallBound series = gronwall_series_bound(inp, 60);
            for (std::size_t i = 0; i < 512; ++i) {
                const double diff =
                    std::fabs(series.series_form[i] - ml.ml_form[i]);
                if (diff > 1e-6) {
                    std::ostringstream os;
                    os << "series/ml gap " << format_sig12(diff)
                       << " at instance " << rep;
                    return os.str();
                }
            }
        }
    }
    return {};
}

// --- 3: solver convergence order ---

std::string criterion_solver_order() {
    SystemSpec sys;
    sys.q = 0.5;
    sys.n = 1;
    sys.p = 0;
    sys.a0 = Mat{{-1.0}};
    sys.b0 = Mat{{0.0}};
    sys.nonlinearity = NonlinDescriptor::zero();
    const double exact = oracles::ml_half_erfc(-1.0);  // E_{1/2}(-1)

    double prev_err = 0.0;
    for (std::size_t n : {256u, 512u, 1024u}) {
        const Trajectory traj = solve_fdde(sys, HistoryFn::constant({1.0}),
                                           InputSignal::zero(), 1.0, n);
        const double err = std::fabs(traj.states.back()[0] - exact);
        if (prev_err > 0.0 && prev_err / err < 2.5) {
            std::ostringstream os;
            os << "error ratio " << format_sig12(prev_err / err)
               << " < 2.5 going to N = " << n;
            return os.str();
        }
        prev_err = err;
    }
    return {};
}

// --- 4: criterion soundness sweep ---

std::string criterion_soundness() {
    std::mt19937_64 rng(20260808);
    std::uniform_real_distribution<double> qu_pick(0.0, 0.3);
    for (int sysno = 0; sysno < 50; ++sysno) {
        const SystemSpec sys = testgen::random_system(rng, {0.5, 0.8, 1.0});
        const double q_u = sysno % 3 == 0 ? 0.0 : qu_pick(rng);
        const StabilityParams params = testgen::satisfied_params(rng, sys, q_u);
        const VerificationReport rep =
            verify_by_simulation(sys, params, 100, 512, 9000 + sysno);
        if (!rep.criterion.satisfied) {
            return "generator produced an unsatisfied instance";
        }
        if (rep.failures != 0) {
            return "solver failure in system " + std::to_string(sysno);
        }
        const double hard_cap = params.epsilon * (1.0 + 1e-6);
        for (const SampleOutcome& o : rep.outcomes) {
            if (o.sup_norm >= hard_cap) {
                std::ostringstream os;
                os << "system " << sysno << " sample " << o.index
                   << ": sup norm " << format_sig12(o.sup_norm)
                   << " >= epsilon(1+1e-6) = " << format_sig12(hard_cap);
                return os.str();
            }
            if (!o.under_envelope) {
                std::ostringstream os;
                os << "system " << sysno << " sample " << o.index
                   << " exceeded the proof envelope";
                return os.str();
            }
        }
    }
    return {};
}

// --- 5: special-case reduction equalities ---

std::string criterion_reductions() {
    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        SystemSpec base = testgen::random_system(rng, {0.5, 0.8, 1.0});
        StabilityParams params;
        params.delta = 0.5 + u01(rng);
        params.epsilon = params.delta * (2.0 + 2.0 * u01(rng));
        params.T = 0.25 + u01(rng);

        const auto rel_gap = [](double a, double b) {
            return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1.0});
        };

        params.q_u = 0.0;
        const double case1 = criterion_special_case(base, params, 1).lhs;
        if (rel_gap(case1, criterion_theorem31(base, params).lhs) > 1e-14) {
            return "case 1 mismatch at draw " + std::to_string(rep);
        }

        SystemSpec m0 = base;
        m0.nonlinearity = NonlinDescriptor::tanh_scaled(
            std::vector<double>(base.n, 0.3 * u01(rng)));
        params.q_u = u01(rng);
        const double case2 = criterion_special_case(m0, params, 2).lhs;
        if (rel_gap(case2, criterion_theorem31(m0, params).lhs) > 1e-14) {
            return "case 2 mismatch at draw " + std::to_string(rep);
        }

        SystemSpec lin = base;
        lin.nonlinearity = NonlinDescriptor::zero();
        const double case3 = criterion_special_case(lin, params, 3).lhs;
        if (rel_gap(case3, criterion_theorem31(lin, params).lhs) > 1e-14) {
            return "case 3 mismatch at draw " + std::to_string(rep);
        }
    }
    return {};
}

// --- 6: criterion monotonicity ---

std::string criterion_monotonicity() {
    std::mt19937_64 rng(6060);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int rep = 0; rep < 1000; ++rep) {
        DerivedConstants c;
        c.sigma = u01(rng);
        c.b0 = u01(rng);
        c.lipschitz_L = 0.6 * u01(rng);
        c.offset_m = 0.6 * u01(rng);
        c.p = rep % 3;
        c.q = 0.25 + 0.75 * u01(rng);
        StabilityParams params;
        params.delta = 0.5 + u01(rng);
        params.epsilon = 5.0 * params.delta;
        params.q_u = u01(rng);
        params.T = 0.25 + 1.25 * u01(rng);

        const double base = theorem31_lhs(c, params);
        const double bump = 0.01 + u01(rng);
        const int which = rep % 5;
        double bumped = 0.0;
        switch (which) {
            case 0: {
                StabilityParams pp = params;
                pp.T += bump;
                bumped = theorem31_lhs(c, pp);
                break;
            }
            case 1: {
                DerivedConstants cc = c;
                cc.sigma += bump;
                bumped = theorem31_lhs(cc, params);
                break;
            }
            case 2: {
                DerivedConstants cc = c;
                cc.lipschitz_L += bump;
                bumped = theorem31_lhs(cc, params);
                break;
            }
            case 3: {
                DerivedConstants cc = c;
                cc.offset_m += bump;
                bumped = theorem31_lhs(cc, params);
                break;
            }
            default: {
                StabilityParams pp = params;
                pp.q_u += bump;
                bumped = theorem31_lhs(c, pp);
                break;
            }
        }
        if (bumped < base) {
            std::ostringstream os;
            os << "lhs decreased (" << format_sig12(base) << " -> "
               << format_sig12(bumped) << ") bumping parameter " << which;
            return os.str();
        }
    }
    return {};
}

// --- 7: CLI determinism and file round trip ---

std::string criterion_cli() {
    std::vector<fs::path> files;
    if (fs::is_directory(g_data_dir / "systems")) {
        for (const auto& entry : fs::directory_iterator(g_data_dir / "systems")) {
            if (entry.path().extension() == ".json") {
                files.push_back(entry.path());
            }
        }
    }
    if (files.size() < 10) {
        return "expected >= 10 sample system files under " +
               (g_data_dir / "systems").string();
    }
    std::sort(files.begin(), files.end());

    for (const fs::path& f : files) {
        const std::string doc = read_file(f);
        const SystemSpec first = parse_system(doc);
        const std::string ser = serialize_system(first);
        const SystemSpec second = parse_system(ser);
        if (serialize_system(second) != ser) {
            return "round trip not idempotent for " + f.filename().string();
        }
    }

    const fs::path tmp = fs::temp_directory_path() / "fracstab_acceptance";
    fs::create_directories(tmp);
    const std::string sysfile = (g_data_dir / "systems" / "decay1d.json").string();
    const std::string common =
        "verify --system \"" + sysfile +
        "\" --delta 1 --epsilon 4 --horizon 1 --qu 0.1 --samples 25 "
        "--steps 128 --seed 77 --out ";
    const fs::path out1 = tmp / "rep1.csv";
    const fs::path out2 = tmp / "rep2.csv";
    if (run_cli(common + "\"" + out1.string() + "\"") != 0) {
        return "verify run 1 failed";
    }
    if (run_cli(common + "\"" + out2.string() + "\"") != 0) {
        return "verify run 2 failed";
    }
    const std::string body1 = read_file(out1);
    if (body1.empty() || body1 != read_file(out2)) {
        return "verify output not byte-identical across reruns";
    }

    // documented exit codes: satisfied 0, not satisfied 1, usage/parse 2
    const std::string check_base = "check --system \"" + sysfile +
                                   "\" --delta 1 --horizon 1 --epsilon ";
    if (run_cli(check_base + "50") != 0) {
        return "check (satisfied) exit code != 0";
    }
    if (run_cli(check_base + "1.0000001") != 1) {
        return "check (not satisfied) exit code != 1";
    }
    if (run_cli("check --system /nonexistent.json --delta 1 --epsilon 2 "
                "--horizon 1") != 2) {
        return "check (bad file) exit code != 2";
    }
    const fs::path hot = tmp / "hot.json";
    std::ofstream(hot) << R"({"q": 1.0, "n": 1, "p": 0, "A0": [[5.0]],
        "B0": [[0.0]], "delays": [], "nonlinearity": {"kind": "zero"}})";
    if (run_cli("simulate --system \"" + hot.string() +
                "\" --history const:1 --horizon 10 --steps 1024 --out \"" +
                (tmp / "hot.csv").string() + "\"") != 3) {
        return "simulate (blowup) exit code != 3";
    }
    fs::remove_all(tmp);
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    g_cli_path = argc > 1 ? argv[1] : "./tools/fracstab";
    g_data_dir = argc > 2 ? fs::path(argv[2]) : fs::path("../data");

    const std::vector<Criterion> criteria{
        {1, "Mittag-Leffler reductions (exp / erfc closed form)", 1.0,
         criterion_ml_reductions},
        {2, "Gronwall dominance and series/ML consistency", 30.0,
         criterion_gronwall},
        {3, "solver convergence order on D^{1/2}x = -x", 10.0,
         criterion_solver_order},
        {4, "criterion soundness sweep (50 systems x 100 samples)", 300.0,
         criterion_soundness},
        {5, "special-case reduction equalities", 60.0, criterion_reductions},
        {6, "criterion monotonicity over 1000 draws", 60.0,
         criterion_monotonicity},
        {7, "CLI determinism and system-file round trip", 60.0, criterion_cli},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string reason;
        try {
            reason = c.run();
        } catch (const std::exception& e) {
            reason = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        if (reason.empty() && elapsed > c.time_budget_s) {
            std::ostringstream os;
            os << "exceeded time budget (" << elapsed << " s > "
               << c.time_budget_s << " s)";
            reason = os.str();
        }
        if (reason.empty()) {
            std::printf("PASS  [%d] %s (%.2f s)\n", c.number, c.label, elapsed);
        } else {
            std::printf("FAIL  [%d] %s (%.2f s): %s\n", c.number, c.label,
                        elapsed, reason.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    return failures;
}
