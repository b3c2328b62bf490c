#include <doctest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "zetalab/dirichlet_sums.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/smoothing.hpp"

using namespace zetalab;

TEST_CASE("direct sum examples") {
    CHECK(zsum_direct({10.0, 0.0}) == cplx{10.0, 0.0});
    CHECK(zsum_direct({0.5, 7.3}) == cplx{0.0, 0.0});
    const cplx v = zsum_direct({100.0, 50.0});
    CHECK(std::abs(v - oracle::zsum_mp(100.0, 50.0)) < 1e-12);
    CHECK(std::abs(v) <= 100.0);
    CHECK_THROWS_AS(zsum_direct({2e8, 1.0}), CapacityError);
}

TEST_CASE("direct sum matches the multiprecision oracle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> Y(1.0, 3000.0), t(-5000.0, 5000.0);
    for (int i = 0; i < 20; ++i) {
        const double y = Y(rng), s = t(rng);
        const cplx ref = oracle::zsum_mp(y, s);
        CHECK(std::abs(zsum_direct({y, s}) - ref) <= 1e-12 * std::max(1.0, std::sqrt(y)));
    }
}

TEST_CASE("batch kernel") {
    const std::vector<cplx> ones = zsum_batch(1.0, Grid{3.0, 0.7, 50});
    for (const cplx& z : ones) CHECK(z == cplx{1.0, 0.0});

    const Grid grid{1000.0, 1.0, 1000};
    const std::vector<cplx> batch = zsum_batch(1000.0, grid, 4);
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.count; ++k) {
        const cplx d = zsum_direct({1000.0, grid.at(k)});
        worst = std::max(worst, std::abs(batch[k] - d) / std::abs(d));
    }
    CHECK(worst <= 1e-9);
    for (std::size_t k : {0u, 511u, 999u})
        CHECK(std::abs(batch[k] - oracle::zsum_mp(1000.0, grid.at(k))) < 1e-9);

    CHECK_THROWS_AS(zsum_batch(10.0, Grid{0.0, 0.0, 3}), ParameterError);
}

TEST_CASE("batch output does not depend on the worker count") {
    const Grid grid{500.0, 0.013, 3000};
    CHECK(zsum_batch(300.0, grid, 1) == zsum_batch(300.0, grid, 7));
}

TEST_CASE("weighted batch matches a direct weighted sum") {
    std::vector<double> w(200);
    for (std::size_t n = 1; n <= w.size(); ++n) w[n - 1] = std::pow(static_cast<double>(n), -0.5);
    const Grid grid{10.0, 3.1, 40};
    const std::vector<cplx> got = dirichlet_batch(w, grid, 2);
    for (std::size_t k = 0; k < grid.count; ++k) {
        cplx ref{0.0, 0.0};
        for (std::size_t n = 1; n <= w.size(); ++n)
            ref += w[n - 1] * std::polar(1.0, -grid.at(k) * std::log(static_cast<double>(n)));
        CHECK(std::abs(got[k] - ref) < 1e-11);
    }
}

TEST_CASE("smoothed sum") {
    const SmoothCutoff phi(4.0, 1.0);
    const cplx v = zsum_smoothed(10.0, 0.0, phi);
    CHECK(v.real() >= 5.0);
    CHECK(v.real() <= 10.0);
    double weights = 0.0;
    for (double w : cutoff_weights(10.0, phi)) weights += w;
    CHECK(v.real() == doctest::Approx(weights).epsilon(1e-14));

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> Y(1.0, 500.0), t(-100.0, 100.0);
    for (int i = 0; i < 30; ++i) {
        const double y = Y(rng), s = t(rng);
        const cplx sm = zsum_smoothed(y, s, phi);
        CHECK(std::abs(sm) <= std::floor(y) + 1e-12);
        long long outside = 0;
        for (long long n = 1; n <= static_cast<long long>(y); ++n) {
            const double x = static_cast<double>(n) / y;
            if (!(x > 0.25 && x < 0.75)) ++outside;
        }
        CHECK(std::abs(sm - zsum_direct({y, s})) <= static_cast<double>(outside) + 1e-12);
    }
}

TEST_CASE("long range closed form") {
    CHECK(std::abs(long_range_approx(10.0, 0.0) - cplx{10.0, 0.0}) < 1e-12);
    cplx direct{0.0, 0.0};
    for (int n = 1001; n <= 2000; ++n) direct += std::polar(1.0, 100.0 * std::log(static_cast<double>(n)));
    CHECK(std::abs(direct - long_range_approx(1e3, 100.0)) <= 10.0);
    CHECK(std::abs(long_range_approx(1e4, 100.0)) <= 4.0 * 1e4 / 100.0);
}
