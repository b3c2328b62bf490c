#pragma once

#include "zetalab/types.hpp"

namespace zetalab {

// Truncated Perron representation of sum_{n<=Y} n^(-it) with
// c = 1 + 1/log Y and height Y.
struct PerronConfig {
    double Y = 10.5;
    double t = 0.0;
};

void validate(const PerronConfig& cfg);

struct PerronParams {
    double ds = 0.0;  // 0 selects min(0.05, 1/(4 log Y))
    double zeta_tol = 1e-10;
    unsigned threads = 0;
};

// Each leg carries the 1/(2 pi i) factor. The left path
// lower + vertical_half + upper, plus residue, equals the truncated vertical integral.
struct ContourPieces {
    cplx horiz_lower;    // c - iY  -> 1/2 - iY
    cplx vertical_half;  // 1/2 - iY -> 1/2 + iY
    cplx horiz_upper;    // 1/2 + iY -> c + iY
    cplx residue;        // Y^(1-it)/(1-it) when the pole s = 1 - it is enclosed, else 0
    double err = 0.0;    // combined leg quadrature error
    double r1 = 0.0;
    double r2 = 0.0;

    cplx total() const { return horiz_lower + vertical_half + horiz_upper + residue; }
};

double perron_abscissa(double Y);
double default_perron_step(double Y);

// (1/2 pi i) times the integral of zeta(s + it) Y^s / s over c - iY .. c + iY.
EvalResult truncated_vertical(const PerronConfig& cfg, const PerronParams& params = {});

ContourPieces contour_decomposition(const PerronConfig& cfg, const PerronParams& params = {});

// Sum over Y/2 < n < 2Y, n != Y, of min(1, 1/|n - Y|).
double r1_bound(const PerronConfig& cfg);
// (4^c + Y^c)/Y * zeta(c).
double r2_bound(const PerronConfig& cfg);

// lhs = |zsum_direct - truncated_vertical|, rhs = r1 + r2.
BoundReport perron_residual(const PerronConfig& cfg, const PerronParams& params = {});

}  // namespace zetalab
