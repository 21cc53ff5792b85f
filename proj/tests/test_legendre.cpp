#include <doctest.h>

#include <cmath>
#include <random>

#include "softpress/errors.hpp"
#include "softpress/legendre.hpp"
#include "softpress/monomer_dimer.hpp"
#include "softpress/pressure1d.hpp"
#include "test_util.hpp"

using namespace softpress;

namespace {

/// Hard-core pressure sampled along u = (s, 0); by the shift identity this
/// slice carries the full conjugate for probability vectors.
PressureSamples hardcore_samples(double lo, double hi, double step) {
    PressureSamples samples;
    samples.dim = 2;
    samples.source = "hard-core chain, u = (s, 0)";
    auto g = Digraph::hardcore();
    for (double s = lo; s <= hi + 1e-12; s += step)
        samples.points.emplace_back(WeightVector{s, 0.0}, pressure_1d(g, {s, 0.0}));
    return samples;
}

}  // namespace

TEST_CASE("grid conjugate of the hard-core pressure") {
    auto samples = hardcore_samples(-8.0, 8.0, 0.01);
    double pstar = (5.0 - std::sqrt(5.0)) / 10.0;
    auto res = conjugate_on_grid(samples, {pstar, 1.0 - pstar});
    CHECK_FALSE(res.on_boundary);
    CHECK(std::abs(-res.value - 0.4812118251) < 1e-3);
    CHECK(std::abs(res.argmax_u[0]) < 0.02);  // maximizer near s(p*) = 0

    // -P* against the closed-form entropy at prescribed densities.
    for (double p : {0.1, 0.2, 0.3, 0.4}) {
        double h = density_entropy_from_conjugate(samples, {p, 1.0 - p});
        CHECK(std::abs(h - hardcore_entropy_of_density(p)) < 1e-3);
    }

    // Empty lattice: unique configuration, zero entropy.
    CHECK(std::abs(density_entropy_from_conjugate(samples, {0.0, 1.0})) < 1e-3);

    CHECK_THROWS_AS(conjugate_on_grid(PressureSamples{2, {}, ""}, WeightVector{0.5, 0.5}),
                    EmptySamples);
}

TEST_CASE("conjugate of an affine pressure") {
    // P(u) = u_1: single-color system. P*(1) = 0 attained everywhere;
    // any other slope runs off the grid and gets flagged.
    PressureSamples samples;
    samples.dim = 1;
    for (double s = -4.0; s <= 4.0; s += 0.5) samples.points.emplace_back(WeightVector{s}, s);
    auto at_one = conjugate_on_grid(samples, {1.0});
    CHECK(at_one.value == doctest::Approx(0.0));
    CHECK_FALSE(at_one.on_boundary);
    auto off = conjugate_on_grid(samples, {1.5});
    CHECK(off.on_boundary);
    CHECK(off.value == doctest::Approx(2.0));  // 1.5*4 - 4 at the grid edge
    auto off_low = conjugate_on_grid(samples, {0.5});
    CHECK(off_low.on_boundary);
}

TEST_CASE("Fenchel-Young inequality on the grid") {
    auto samples = hardcore_samples(-6.0, 6.0, 0.05);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 0.5);
    for (int trial = 0; trial < 10; ++trial) {
        double p = unif(rng);
        WeightVector pv{p, 1.0 - p};
        double conj = conjugate_on_grid(samples, pv).value;
        for (const auto& [u, pu] : samples.points) {
            double lhs = pv[0] * u[0] + pv[1] * u[1];
            CHECK(lhs <= pu + conj + 1e-12);
        }
    }
}

TEST_CASE("grid conjugate is midpoint convex in p") {
    auto samples = hardcore_samples(-6.0, 6.0, 0.05);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.05, 0.45);
    for (int trial = 0; trial < 20; ++trial) {
        double a = unif(rng), b = unif(rng), m = 0.5 * (a + b);
        double fa = conjugate_on_grid(samples, {a, 1.0 - a}).value;
        double fb = conjugate_on_grid(samples, {b, 1.0 - b}).value;
        double fm = conjugate_on_grid(samples, {m, 1.0 - m}).value;
        CHECK(fm <= 0.5 * (fa + fb) + 1e-12);
    }
}

TEST_CASE("kink scan finds the first-order transition of two self-loops") {
    // P(u) = max(u1, u2) through the component maximum: kink on u1 = u2.
    auto g = Digraph(2, {{1, 1}, {2, 2}});
    PressureFn pressure = [&](const WeightVector& u) { return pressure_1d(g, u); };
    auto kinks = phase_transition_scan(pressure, {-1.0, 1.0}, {1.0, -1.0});
    REQUIRE(kinks.size() == 1);
    const auto& k = kinks[0];
    CHECK(std::abs(k.location[0] - k.location[1]) < 1e-2);
    // Slopes along the unit scan direction are the direction components.
    double invsqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(k.left_slope == doctest::Approx(-invsqrt2).epsilon(1e-3));
    CHECK(k.right_slope == doctest::Approx(invsqrt2).epsilon(1e-3));
    CHECK(k.gap == doctest::Approx(2.0 * invsqrt2).epsilon(1e-3));
}

TEST_CASE("analytic pressures scan clean") {
    auto g = Digraph::hardcore();
    PressureFn pressure = [&](const WeightVector& u) { return pressure_1d(g, u); };
    auto kinks = phase_transition_scan(pressure, {-5.0, 0.0}, {5.0, 0.0});
    CHECK(kinks.empty());

    // Still clean at the tighter gap_tol = 10 h for h <= 1e-4.
    for (double h : {1e-4, 1e-5}) {
        ScanOptions tight;
        tight.h = h;
        tight.gap_tol = 10.0 * h;
        CHECK(phase_transition_scan(pressure, {-5.0, 0.0}, {5.0, 0.0}, tight).empty());
    }
}

TEST_CASE("synthetic absolute value") {
    PressureFn pressure = [](const WeightVector& u) { return std::abs(u[0]); };
    ScanOptions opts;
    opts.steps = 64;
    opts.h = 1e-4;
    auto kinks = phase_transition_scan(pressure, {-1.0}, {1.0}, opts);
    REQUIRE(kinks.size() == 1);
    // Location is resolved to segment-length/steps^2.
    CHECK(std::abs(kinks[0].location[0]) < 2.0 / (64.0 * 64.0) + 2 * opts.h);
    CHECK(kinks[0].gap == doctest::Approx(2.0).epsilon(2 * opts.h));

    auto json = kinks_to_json(kinks);
    CHECK(json.find("\"gap\"") != std::string::npos);
    CHECK(json.find("\"direction\"") != std::string::npos);
}

TEST_CASE("diagnostics pass on clean pressures and flag noisy ones") {
    auto g = Digraph::hardcore();
    DiagnosticsConfig cfg;
    cfg.dim = 2;
    cfg.radius = 5.0;
    cfg.trials = 200;
    PressureFn clean = [&](const WeightVector& u) { return pressure_1d(g, u); };
    CHECK(convex_diagnostics(clean, cfg).pass(1e-10));

    // Deliberate 1e-6-scale perturbation on an affine base (zero convexity
    // slack): the detector reports violations of about the noise size.
    PressureFn noisy = [&](const WeightVector& u) {
        return 0.3 * u[0] + 0.7 * u[1] + 1e-6 * std::sin(1e3 * u[0] + 7.0 * u[1]);
    };
    auto rep = convex_diagnostics(noisy, cfg);
    CHECK(rep.worst_convexity > 1e-8);
    CHECK(rep.worst_convexity < 5e-6);
}

TEST_CASE("diagnostics on the cylinder pressure through the weight embedding") {
    // pbar1/m is convex and Lipschitz in v, but the shift identity only holds
    // in the (d+1)-variable embedding where the monomer weight participates:
    // R(w) = w3 + P((w1-w3, w2-w3)). Lipschitz of R encodes p1+p2 <= 1.
    const int m = 6;
    PressureFn embedded = [&](const WeightVector& w) {
        return w[2] + md::pbar1_md(m, {w[0] - w[2], w[1] - w[2]}) / m;
    };
    DiagnosticsConfig cfg;
    cfg.dim = 3;
    cfg.radius = 2.0;
    cfg.trials = 60;
    CHECK(convex_diagnostics(embedded, cfg).pass(1e-10));

    PressureFn direct = [&](const WeightVector& v) {
        return md::pbar1_md(m, {v[0], v[1]}) / m;
    };
    DiagnosticsConfig vcfg;
    vcfg.dim = 2;
    vcfg.radius = 2.0;
    vcfg.trials = 60;
    vcfg.check_shift = false;  // no shift identity in v-space: the monomer weight is pinned
    CHECK(convex_diagnostics(direct, vcfg).pass(1e-10));
}
