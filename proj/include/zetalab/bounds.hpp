#pragma once

#include <span>
#include <utility>

#include "zetalab/moments.hpp"
#include "zetalab/types.hpp"

namespace zetalab {

struct EnvelopeParams {
    double T = 16.0;
};

// Piecewise envelope for |zeta(1 + 1/log T + ix)|:
//   log T      if x <= 1/log T or x >= e^T
//   1/x        if 1/log T <= x <= 10
//   log log x  if 10 <= x <= e^T
// At shared endpoints the first listed case applies.
double g_func(double x, const EnvelopeParams& p);

// Implied constants are taken as 1 in every right-hand side below.

// T (log T)^(sum a^2 / 4) prod_{j<l} |zeta(1 + i(b_j - b_l) + 1/log T)|^(a_j a_l / 2)
double curran_rhs(const ShiftConfig& cfg, double T);
// Same with the pair factor replaced by g(|b_j - b_l|).
double corollary_rhs(const ShiftConfig& cfg, double T);

// T Y^m (log T)^((m-1)^2)
double main_rhs(double m, double T, double Y);

struct Prop24Terms {
    double first = 0.0;   // T (log T)^((m-1)^2) E^3 log log E
    double second = 0.0;  // T (log T)^(m^2-3m+3) E^(2m) log log E log log T
    double total() const { return first + second; }
};
// O(1) exponents on the log log factors are set to 1.
Prop24Terms prop24_terms(double m, double T, double E);
double prop24_rhs(double m, double T, double E);

// T^(1 - 1/n) S_mn^(1/n)
double holder_reduce(double m, double n, double S_mn, double T);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS
};

// Ordinary least squares line through (x, y).
FitResult fit_exponent(std::span<const std::pair<double, double>> points);

}  // namespace zetalab
