#include <doctest.h>

#include <cmath>
#include <random>

#include "softpress/errors.hpp"
#include "softpress/spectral.hpp"
#include "test_util.hpp"

using namespace softpress;

namespace {

DenseMatrix golden() {
    DenseMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    m(1, 1) = 1.0;
    return m;
}

}  // namespace

TEST_CASE("golden ratio matrix") {
    auto res = spectral_radius(DenseOperator(golden()));
    CHECK(res.rho == doctest::Approx(0.5 * (1.0 + std::sqrt(5.0))).epsilon(1e-12));
    CHECK(std::abs(res.rho - 1.6180339887) < 1e-10);
    CHECK(res.residual <= 1e-13 * res.rho);
}

TEST_CASE("diagonal spectrum") {
    DenseMatrix m(2, 2);
    m(0, 0) = std::exp(2.0);
    m(1, 1) = std::exp(5.0);
    CHECK(spectral_radius(DenseOperator(m)).rho ==
          doctest::Approx(std::exp(5.0)).epsilon(1e-13));
}

TEST_CASE("bipartite pattern converges through the shift") {
    DenseMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    CHECK(spectral_radius(DenseOperator(m)).rho == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero operator returns rho = 0 exactly") {
    DenseMatrix m(3, 3);
    CHECK(spectral_radius(DenseOperator(m)).rho == 0.0);
}

TEST_CASE("random matrices match a dense full-spectrum oracle") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        bool symmetric = trial % 2 == 0;
        auto m = test_util::random_nonneg(rng, 8, symmetric, 0.8);
        double want = test_util::eigen_spectral_radius(m);
        auto res = spectral_radius(DenseOperator(m));
        CHECK(res.rho == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("perron pair basics") {
    // Symmetric irreducible: left equals right and y^T x = 1 for unit x.
    std::mt19937_64 rng(7);
    auto m = test_util::random_nonneg(rng, 6, true, 1.0);
    auto res = perron_pair(DenseOperator(m));
    double dot = 0.0;
    for (std::size_t i = 0; i < res.right_vec.size(); ++i)
        dot += res.left_vec[i] * res.right_vec[i];
    CHECK(dot == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < res.right_vec.size(); ++i)
        CHECK(res.left_vec[i] == doctest::Approx(res.right_vec[i]).epsilon(1e-12));

    // Golden matrix: right vector proportional to (1, phi).
    auto g = perron_pair(DenseOperator(golden()));
    double phi = 0.5 * (1.0 + std::sqrt(5.0));
    CHECK(g.right_vec[1] / g.right_vec[0] == doctest::Approx(phi).epsilon(1e-11));
}

TEST_CASE("hard-core Perron densities at zero potential") {
    // D(Gamma, 0) is the golden matrix; densities y_i x_i. Exact value
    // p* = (5 - sqrt 5)/10 = 0.27639320225002103.
    auto res = perron_pair(DenseOperator(golden()));
    double p0 = res.left_vec[0] * res.right_vec[0];
    double p1 = res.left_vec[1] * res.right_vec[1];
    double pstar = (5.0 - std::sqrt(5.0)) / 10.0;
    CHECK(p0 == doctest::Approx(pstar).epsilon(1e-11));
    CHECK(p1 == doctest::Approx(1.0 - pstar).epsilon(1e-11));
}

TEST_CASE("left/right consistency y^T M x = rho") {
    std::mt19937_64 rng(23);
    auto m = test_util::random_nonneg(rng, 7, false, 0.9);
    auto res = perron_pair(DenseOperator(m));
    std::vector<double> z(7);
    m.apply(res.right_vec, z);
    double val = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) val += res.left_vec[i] * z[i];
    CHECK(std::abs(val - res.rho) <= 1e-12 * res.rho);
}

TEST_CASE("perron pair refuses reducible patterns") {
    DenseMatrix m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 2.0;
    CHECK_THROWS_AS(perron_pair(DenseOperator(m)), Reducible);
}

TEST_CASE("no convergence carries the best estimate") {
    SpectralOptions opts;
    opts.max_iter = 3;
    try {
        spectral_radius(DenseOperator(golden()), opts);
        FAIL("expected NoConvergence");
    } catch (const NoConvergence& e) {
        CHECK(e.best_estimate > 1.0);
        CHECK(e.best_estimate < 2.0);
    }
}

TEST_CASE("monotonicity of the Perron root") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        auto m = test_util::random_nonneg(rng, 6, false, 0.7);
        auto n = m;
        for (auto& v : n.data) v += unif(rng);  // entrywise M <= N
        double rm = spectral_radius(DenseOperator(m)).rho;
        double rn = spectral_radius(DenseOperator(n)).rho;
        CHECK(rm <= rn + 1e-10 * std::max(1.0, rn));
    }
}

TEST_CASE("shift identity rho(M + cI) = rho(M) + c") {
    std::mt19937_64 rng(37);
    for (double c : {0.5, 1.0, 3.0}) {
        auto m = test_util::random_nonneg(rng, 6, true, 0.8);
        auto shifted = m;
        for (std::size_t i = 0; i < m.rows; ++i) shifted(i, i) += c;
        double rm = spectral_radius(DenseOperator(m)).rho;
        double rs = spectral_radius(DenseOperator(shifted)).rho;
        CHECK(rs == doctest::Approx(rm + c).epsilon(1e-12));
    }
}

TEST_CASE("power-trace consistency for symmetric operators") {
    std::mt19937_64 rng(41);
    auto m = test_util::random_nonneg(rng, 8, true, 0.9);
    double rho = spectral_radius(DenseOperator(m)).rho;
    for (int r : {1, 2, 3}) {
        double tr2r = trace_power(m, 2 * r);
        CHECK(tr2r >= std::pow(rho, 2 * r) * (1.0 - 1e-12));
    }
    for (auto [p, q] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{3, 2}}) {
        double lhs = trace_power(m, p + 2 * q);
        double rhs = std::pow(rho, p) * trace_power(m, 2 * q);
        CHECK(lhs <= rhs * (1.0 + 1e-12));
    }
}

TEST_CASE("symmetry contract probes") {
    std::mt19937_64 rng(43);
    auto m = test_util::random_nonneg(rng, 10, true, 0.6);
    DenseOperator op(m);
    REQUIRE(op.is_symmetric());
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> x(10), y(10), mx(10), my(10);
        for (auto& v : x) v = unif(rng);
        for (auto& v : y) v = unif(rng);
        op.apply(x, mx);
        op.apply(y, my);
        double a = 0.0, b = 0.0, scale = 0.0;
        for (int i = 0; i < 10; ++i) {
            a += mx[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
            b += x[static_cast<size_t>(i)] * my[static_cast<size_t>(i)];
            scale += std::abs(mx[static_cast<size_t>(i)] * y[static_cast<size_t>(i)]);
        }
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, scale));
    }
}

TEST_CASE("strong components") {
    // Hard-core pattern: a single component covering both vertices.
    std::vector<std::vector<bool>> hc{{false, true}, {true, true}};
    auto d1 = strong_components(hc);
    CHECK(d1.components.size() == 1);
    CHECK(d1.components[0] == std::vector<int>{0, 1});
    CHECK(is_irreducible(hc));

    // Diagonal pattern: two singletons.
    std::vector<std::vector<bool>> diag{{true, false}, {false, true}};
    CHECK(strong_components(diag).components.size() == 2);
    CHECK_FALSE(is_irreducible(diag));

    // Chain 0 -> 1 without a back edge: topological order in the emission,
    // edges point from later components to earlier ones.
    std::vector<std::vector<bool>> chain{{false, true}, {false, false}};
    auto d3 = strong_components(chain);
    REQUIRE(d3.components.size() == 2);
    CHECK(d3.order[0] > d3.order[1]);
}
