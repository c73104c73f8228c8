#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "fracstab/errors.hpp"
#include "fracstab/gronwall.hpp"
#include "fracstab/gamma.hpp"
#include "support/oracles.hpp"

using fracstab::BoundInputs;
using fracstab::GronwallBound;
using fracstab::UniformGrid;

namespace {

BoundInputs make_inputs(double q, double t_end, std::size_t points,
                        double a_const, double g_const) {
    BoundInputs inp;
    inp.q = q;
    inp.grid = UniformGrid{t_end, points};
    inp.a.assign(points, a_const);
    inp.g.assign(points, g_const);
    return inp;
}

}  // namespace

TEST_CASE("ml bound trivial cases") {
    // g = 0 makes the envelope collapse onto a
    const BoundInputs flat = make_inputs(0.7, 1.0, 65, 1.0, 0.0);
    const GronwallBound b = fracstab::gronwall_ml_bound(flat);
    for (double v : b.ml_form) {
        CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("ml bound reduces to the classical exponential at q = 1") {
    const double delta = 0.5, c = 1.3;
    const BoundInputs inp = make_inputs(1.0, 2.0, 129, delta, c);
    const GronwallBound b = fracstab::gronwall_ml_bound(inp);
    for (std::size_t i = 0; i < inp.grid.points; ++i) {
        const double t = inp.grid.time(i);
        CHECK(b.ml_form[i] == doctest::Approx(delta * std::exp(c * t)).epsilon(1e-10));
    }
}

TEST_CASE("ml bound hits E_{1/2}(sqrt(pi)) at t = 1") {
    const BoundInputs inp = make_inputs(0.5, 1.0, 129, 1.0, 1.0);
    const GronwallBound b = fracstab::gronwall_ml_bound(inp);
    // frozen via the erfc closed form: E_{1/2}(Gamma(1/2))
    CHECK(b.ml_form.back() == doctest::Approx(45.999326089382855).epsilon(1e-10));
    CHECK(oracles::ml_half_erfc(std::sqrt(M_PI)) ==
          doctest::Approx(45.999326089382855).epsilon(1e-12));
}

TEST_CASE("ml bound rejects decreasing a") {
    BoundInputs inp = make_inputs(0.5, 1.0, 17, 1.0, 1.0);
    inp.a[10] = 0.5;
    CHECK_THROWS_AS(fracstab::gronwall_ml_bound(inp), fracstab::NotNondecreasing);
}

TEST_CASE("dominance requires ml_form >= a") {
    const BoundInputs inp = make_inputs(0.3, 1.0, 65, 2.0, 0.7);
    const GronwallBound b = fracstab::gronwall_ml_bound(inp);
    for (std::size_t i = 0; i < inp.grid.points; ++i) {
        CHECK(b.ml_form[i] >= inp.a[i]);
    }
}

TEST_CASE("series bound trivial cases") {
    BoundInputs inp = make_inputs(0.5, 1.0, 33, 0.0, 1.0);
    const GronwallBound zero = fracstab::gronwall_series_bound(inp, 10);
    for (double v : zero.series_form) {
        CHECK(v == 0.0);
    }

    inp = make_inputs(0.5, 1.0, 33, 1.5, 0.0);
    const GronwallBound plain = fracstab::gronwall_series_bound(inp, 10);
    for (double v : plain.series_form) {
        CHECK(v == doctest::Approx(1.5).epsilon(1e-14));
    }
}

TEST_CASE("series bound converges to e for q = 1, a = g = 1") {
    // with constant a the product integration is exact, so the series bound
    // equals the truncated exp series sum_{n<=N} t^n/n! at every grid point
    const BoundInputs inp = make_inputs(1.0, 1.0, 65, 1.0, 1.0);
    const GronwallBound b = fracstab::gronwall_series_bound(inp, 60);
    for (std::size_t i = 0; i < inp.grid.points; ++i) {
        const double t = inp.grid.time(i);
        double want = 0.0, term = 1.0;
        for (int n = 0; n <= 60; ++n) {
            want += term;
            term *= t / (n + 1);
        }
        CHECK(b.series_form[i] == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK(b.series_form.back() == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
    CHECK(b.series_tail_estimate < 1e-12);
}

TEST_CASE("series bound matches the ml form for constant data") {
    for (double q : {0.3, 0.5, 0.8, 1.0}) {
        const double g_max = q <= 0.3 ? 0.4 : (q <= 0.5 ? 1.2 : 2.0);
        const BoundInputs inp = make_inputs(q, 1.0, 129, 1.7, 0.8 * g_max);
        const GronwallBound series = fracstab::gronwall_series_bound(inp, 60);
        const GronwallBound ml = fracstab::gronwall_ml_bound(inp);
        for (std::size_t i = 0; i < inp.grid.points; ++i) {
            CHECK(std::fabs(series.series_form[i] - ml.ml_form[i]) <= 1e-6);
        }
    }
}

TEST_CASE("picard oracle trivial cases") {
    const BoundInputs inp = make_inputs(0.5, 1.0, 33, 1.0, 0.0);
    const std::vector<double> one =
        fracstab::picard_oracle(inp, std::vector<double>(33, 0.0), 1);
    for (double v : one) {
        CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    }

    const BoundInputs zero_a = make_inputs(0.5, 1.0, 33, 0.0, 1.0);
    const std::vector<double> zero =
        fracstab::picard_oracle(zero_a, std::vector<double>(33, 0.0), 5);
    for (double v : zero) {
        CHECK(v == 0.0);
    }
}

TEST_CASE("picard iterates stay below the ml bound") {
    const BoundInputs inp = make_inputs(0.5, 1.0, 512, 1.0, 1.0);
    const std::vector<double> y =
        fracstab::picard_oracle(inp, std::vector<double>(512, 0.0), 40);
    const GronwallBound ml = fracstab::gronwall_ml_bound(inp);
    const double slack = 10.0 * fracstab::picard_error_estimate(inp, 40);
    for (std::size_t i = 0; i < inp.grid.points; ++i) {
        CHECK(y[i] <= ml.ml_form[i] + slack);
    }
}

TEST_CASE("randomized dominance: nondecreasing a, constant g") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> coeff(0.0, 1.5);
    const double qs[] = {0.3, 0.5, 0.8, 1.0};
    for (int rep = 0; rep < 4; ++rep) {
        const double q = qs[rep];
        BoundInputs inp;
        inp.q = q;
        inp.grid = UniformGrid{1.0, 256};
        const double a0 = coeff(rng), a1 = coeff(rng), a2 = coeff(rng);
        const double g0 = 0.1 + 0.5 * coeff(rng);
        inp.a.resize(256);
        inp.g.assign(256, g0);
        for (std::size_t i = 0; i < 256; ++i) {
            const double t = inp.grid.time(i);
            inp.a[i] = a0 + a1 * t + a2 * t * t;
        }
        const std::vector<double> y =
            fracstab::picard_oracle(inp, std::vector<double>(256, 0.0), 40);
        const GronwallBound ml = fracstab::gronwall_ml_bound(inp);
        const double slack = 10.0 * fracstab::picard_error_estimate(inp, 40);
        for (std::size_t i = 0; i < inp.grid.points; ++i) {
            CHECK(y[i] <= ml.ml_form[i] + slack);
        }
    }
}

TEST_CASE("both bounds are monotone in g") {
    const BoundInputs lo = make_inputs(0.5, 1.0, 65, 1.0, 0.5);
    BoundInputs hi = lo;
    for (double& g : hi.g) {
        g += 0.25;
    }
    const GronwallBound ml_lo = fracstab::gronwall_ml_bound(lo);
    const GronwallBound ml_hi = fracstab::gronwall_ml_bound(hi);
    const GronwallBound se_lo = fracstab::gronwall_series_bound(lo, 40);
    const GronwallBound se_hi = fracstab::gronwall_series_bound(hi, 40);
    for (std::size_t i = 0; i < lo.grid.points; ++i) {
        CHECK(ml_hi.ml_form[i] >= ml_lo.ml_form[i]);
        CHECK(se_hi.series_form[i] >= se_lo.series_form[i]);
    }
}

TEST_CASE("input validation") {
    BoundInputs bad = make_inputs(0.5, 1.0, 17, 1.0, 1.0);
    bad.g[8] = 0.5;  // decreasing g
    CHECK_THROWS_AS(fracstab::validate(bad), fracstab::NotNondecreasing);

    BoundInputs neg = make_inputs(0.5, 1.0, 17, 1.0, 1.0);
    neg.a[3] = -0.1;
    CHECK_THROWS_AS(fracstab::validate(neg), fracstab::InvalidArgument);

    BoundInputs short_a = make_inputs(0.5, 1.0, 17, 1.0, 1.0);
    short_a.a.pop_back();
    CHECK_THROWS_AS(fracstab::validate(short_a), fracstab::InvalidArgument);
}
