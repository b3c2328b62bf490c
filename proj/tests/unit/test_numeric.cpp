#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/numeric.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/types.hpp"

using namespace zetalab;

TEST_CASE("compensated sum recovers cancelled low-order terms") {
    CompensatedSum s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i) s.add(1e-16);
    s.add(-1.0);
    CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-9));
}

TEST_CASE("pairwise sum matches exact integer totals") {
    std::vector<double> xs(10001);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i);
    CHECK(pairwise_sum(xs) == 10001.0 * 10000.0 / 2.0);
}

TEST_CASE("unit phase agrees with long double evaluation at large t") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> t_dist(1e5, 1e7);
    for (int i = 0; i < 50; ++i) {
        const double t = t_dist(rng);
        const double n = 2.0 + i * 97.0;
        const long double p = static_cast<long double>(t) * std::log(static_cast<long double>(n));
        const cplx ref{static_cast<double>(std::cos(p)), static_cast<double>(-std::sin(p))};
        CHECK(std::abs(unit_phase(t, split_log(n)) - ref) < 1e-11);
    }
}

TEST_CASE("parallel_for visits every index once and rethrows") {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), 7, 4, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) hits[i]++;
    });
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(100, 10, 3,
                                 [](std::size_t b, std::size_t) {
                                     if (b == 50) throw NumericalFailure("boom");
                                 }),
                    NumericalFailure);
}

TEST_CASE("tanh-sinh handles endpoint singularities") {
    const auto r = tanh_sinh([](double x) { return cplx{std::sqrt(x), 0.0}; }, 0.0, 1.0, 1e-14);
    CHECK(std::abs(r.value.real() - 2.0 / 3.0) < 1e-13);
    const auto q = tanh_sinh([](double x) { return cplx{1.0 / std::sqrt(x), 0.0}; }, 0.0, 1.0, 1e-12);
    CHECK(std::abs(q.value.real() - 2.0) < 1e-10);
}

TEST_CASE("trapezoid is exact for linear data and coarse uses every other sample") {
    std::vector<double> ys{0, 1, 2, 3, 4};
    CHECK(trapezoid(ys, 0.5) == doctest::Approx(4.0));
    CHECK(trapezoid_coarse(ys, 0.5) == doctest::Approx(4.0));
    std::vector<double> sq{0, 1, 4, 9, 16};
    CHECK(trapezoid(sq, 1.0) == doctest::Approx(22.0));
    CHECK(trapezoid_coarse(sq, 1.0) == doctest::Approx(24.0));
}

TEST_CASE("grid validation") {
    CHECK_NOTHROW(validate(Grid{0.0, 1.0, 3}));
    CHECK_THROWS_AS(validate(Grid{0.0, 0.0, 3}), ParameterError);
    CHECK_THROWS_AS(validate(Grid{0.0, 1.0, 0}), ParameterError);
}
