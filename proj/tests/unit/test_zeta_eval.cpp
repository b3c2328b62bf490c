#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support/oracles.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/zeta_eval.hpp"

using namespace zetalab;

TEST_CASE("zeta at classical points") {
    CHECK(std::abs(eval_zeta({2.0, 0.0}).value - std::numbers::pi * std::numbers::pi / 6.0) < 1e-13);
    CHECK(std::abs(eval_zeta({0.5, 0.0}).value - oracle::zeta_eta(0.5, 0.0)) < 1e-12);
    CHECK(std::abs(eval_zeta({0.5, 0.0}).value.real() + 1.4603545088095868) < 1e-12);
}

TEST_CASE("zeta matches the eta-series oracle at random points") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> sig(0.5, 3.0), ord(-200.0, 200.0);
    for (int i = 0; i < 40; ++i) {
        const double s = sig(rng), t = ord(rng);
        const EvalResult z = eval_zeta({s, t}, 1e-12);
        CHECK(std::abs(z.value - oracle::zeta_eta(s, t)) <= z.err + 1e-12);
    }
}

TEST_CASE("zeta conjugate symmetry") {
    const double t = 14.1347251417;
    const cplx a = eval_zeta({0.5, t}).value;
    const cplx b = eval_zeta({0.5, -t}).value;
    CHECK(std::abs(b - std::conj(a)) < 1e-13);
}

TEST_CASE("zeta refuses the pole and out-of-range ordinates") {
    CHECK_THROWS_AS(eval_zeta({1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(eval_zeta({1.0, 1e-9}), DomainError);
    CHECK_NOTHROW(eval_zeta({1.0, 1e-3}));
    CHECK_THROWS_AS(eval_zeta({0.5, 2e7}), Error);
    CHECK_THROWS_AS(eval_zeta({0.5, 10.0}, 0.0), ParameterError);
}

TEST_CASE("a tolerance below rounding is reported, not silently missed") {
    CHECK_THROWS_AS(eval_zeta({0.5, 60.0}, 1e-18), NumericalFailure);
}

TEST_CASE("extended precision agrees with double") {
    for (double t : {10.0, 1000.0, 1e4}) {
        const EvalResult d = eval_zeta({0.5, t}, 1e-11);
        const EvalResult e = eval_zeta({0.5, t}, 1e-11, Precision::extended);
        CHECK(std::abs(d.value - e.value) <= d.err + e.err);
        CHECK(e.err < 1e-11);
    }
}

TEST_CASE("theta against its asymptotic expansion") {
    for (double t : {100.0, 1000.0, 1e4}) {
        const double ref = t / 2.0 * std::log(t / (2.0 * std::numbers::pi)) - t / 2.0 - std::numbers::pi / 8.0 +
                           1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t * t);
        CHECK(std::abs(riemann_siegel_theta(t) - ref) < 1e-9);
    }
    CHECK(riemann_siegel_theta(0.0) == 0.0);
}

TEST_CASE("Hardy Z is real with modulus |zeta| and vanishes at the first zero") {
    const EvalResult z0 = hardy_z(0.0);
    CHECK(std::abs(std::abs(z0.value) - 1.4603545088095868) < 1e-10);
    const double zero = oracle::bisect([](double t) { return hardy_z(t).value.real(); }, 14.0, 14.3);
    CHECK(std::abs(zero - 14.134725141734693) < 1e-9);
    for (double t : {3.0, 21.0, 77.7, 500.0, 999.0}) {
        const EvalResult z = hardy_z(t);
        const EvalResult w = eval_zeta({0.5, t}, 1e-10);
        CHECK(std::abs(z.value.imag()) <= 2.0 * z.err + 1e-12);
        CHECK(std::abs(std::abs(z.value) - std::abs(w.value)) <= 2.0 * (z.err + w.err));
    }
    CHECK_THROWS_AS(hardy_z(-1.0), ParameterError);
}

TEST_CASE("zeta near the one-line") {
    const double T = std::exp(10.0);
    CHECK(std::abs(eval_zeta_one_line(0.0, T).value.real() - 10.584448464950801) < 1e-9);
    const double big = std::abs(eval_zeta_one_line(1e6, T).value);
    CHECK(big <= 10.0 * std::log(std::log(std::log(1e6))));
    for (double L : {10.0, 20.0, 50.0}) {
        const double K = std::abs(eval_zeta_one_line(0.0, std::exp(L)).value) / L;
        CHECK(K < 1.1);
        CHECK(K > 0.9);
    }
    CHECK_THROWS_AS(eval_zeta_one_line(0.0, 10.0), ParameterError);
}

TEST_CASE("grid evaluation agrees with pointwise evaluation") {
    const Grid grid{100.0, 0.37, 200};
    for (double sigma : {0.5, 0.8}) {
        const GridZeta g = zeta_on_grid(sigma, grid, 1e-10, 3);
        REQUIRE(g.values.size() == grid.count);
        for (std::size_t k = 0; k < grid.count; k += 13) {
            const EvalResult p = eval_zeta({sigma, grid.at(k)}, 1e-12);
            CHECK(std::abs(g.values[k] - p.value) <= g.err + p.err);
        }
    }
    const GridZeta a = zeta_on_grid(0.5, grid, 1e-10, 1);
    const GridZeta b = zeta_on_grid(0.5, grid, 1e-10, 5);
    CHECK(a.values == b.values);
}
