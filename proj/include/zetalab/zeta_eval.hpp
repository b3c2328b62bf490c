#pragma once

#include <vector>

#include "zetalab/types.hpp"

namespace zetalab {

inline constexpr double kMaxOrdinate = 1e7;
inline constexpr double kPoleExclusion = 1e-8;

struct ZetaPoint {
    double sigma = 0.5;
    double t = 0.0;
};

// zeta(sigma + it) by Euler-Maclaurin summation. err is a heuristic estimate:
// 4 x the last correction term plus a rounding allowance.
EvalResult eval_zeta(ZetaPoint p, double tol = 1e-12,
                     Precision precision = Precision::standard);

// Riemann-Siegel theta, Im log Gamma(1/4 + it/2) - (t/2) log pi.
double riemann_siegel_theta(double t);

// e^(i theta(t)) zeta(1/2 + it); real up to err.
EvalResult hardy_z(double t, double tol = 1e-10, Precision precision = Precision::standard);

// zeta(1 + 1/log T + i alpha).
EvalResult eval_zeta_one_line(double alpha, double T, double tol = 1e-10);

struct GridZeta {
    std::vector<cplx> values;
    double err = 0.0;  // max over the grid
    std::size_t terms = 0;
};

// zeta(sigma + i t_k) on every grid ordinate; one Euler-Maclaurin cut shared by
// the whole grid, with the head sum evaluated by the batch Dirichlet kernel.
GridZeta zeta_on_grid(double sigma, const Grid& grid, double tol = 1e-10,
                      unsigned threads = 0);

}  // namespace zetalab
