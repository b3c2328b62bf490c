#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "zetalab/smoothing.hpp"
#include "zetalab/types.hpp"

namespace zetalab {

inline constexpr double kMaxSumLength = 1e8;
inline constexpr std::size_t kMaxBatchTerms = 1'000'000;
inline constexpr std::size_t kMaxBatchPoints = 100'000'000;
// The per-n phase is recomputed from scratch every this many grid steps.
inline constexpr std::size_t kRenormalizeEvery = 512;

struct SumRequest {
    double Y = 1.0;
    double t = 0.0;
};

// Sum over n <= floor(Y) of n^(-it), compensated, increasing n. Empty for Y < 1.
cplx zsum_direct(const SumRequest& req);

// zsum_direct at every ordinate of the grid via the per-n phase recurrence.
std::vector<cplx> zsum_batch(double Y, const Grid& grid, unsigned threads = 0);

// sum_{n=1}^{coeffs.size()} coeffs[n-1] n^(-i t) at every ordinate of the grid.
// Each ordinate is summed in increasing n, independently of the worker count.
std::vector<cplx> dirichlet_batch(std::span<const double> coeffs, const Grid& grid,
                                  unsigned threads = 0);

// Weights phi(n/Y) for n = 1..floor(Y).
std::vector<double> cutoff_weights(double Y, const SmoothCutoff& cutoff);

cplx zsum_smoothed(double Y, double t, const SmoothCutoff& cutoff);

// ((2x)^(1+it) - x^(1+it)) / (1+it), the closed form for sum_{x<n<=2x} n^(it).
cplx long_range_approx(double x, double t);

}  // namespace zetalab
