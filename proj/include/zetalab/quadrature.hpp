#pragma once

#include <functional>
#include <span>

#include "zetalab/types.hpp"

namespace zetalab {

struct TanhSinhResult {
    cplx value;
    double err = 0.0;  // |last level - previous level|
    int level = 0;
};

// Double-exponential quadrature of f over [a, b]. The step is halved until two
// successive levels differ by less than abs_tol (at least min_level levels).
// Throws NumericalFailure if max_level is reached first.
TanhSinhResult tanh_sinh(const std::function<cplx(double)>& f, double a, double b,
                         double abs_tol, int max_level = 14, int min_level = 4);

// Composite trapezoid rule on equispaced samples, summed pairwise.
double trapezoid(std::span<const double> samples, double h);
cplx trapezoid(std::span<const cplx> samples, double h);

// Trapezoid over the even-indexed subsequence (step 2h); samples.size() must be odd.
double trapezoid_coarse(std::span<const double> samples, double h);
cplx trapezoid_coarse(std::span<const cplx> samples, double h);

}  // namespace zetalab
