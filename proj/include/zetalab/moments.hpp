#pragma once

#include <cstddef>
#include <vector>

#include "zetalab/smoothing.hpp"
#include "zetalab/types.hpp"

namespace zetalab {

enum class Variant { sharp, smoothed };

// S_m(T, Y) = integral over [T, 2T] of |sum_{n<=Y} w_n n^(-it)|^(2m) dt, with
// w_n = 1 (sharp) or phi_U(n/Y) (smoothed).
struct MomentSpec {
    double m = 1.0;
    double T = 1000.0;
    double Y = 1.0;
    Variant variant = Variant::sharp;
    double U = 0.0;          // smoothed only
    double C_exponent = 1.0; // smoothed only, reported
    double epsilon = 0.05;   // for the Y <= (1 - epsilon) T guard
};

void validate(const MomentSpec& spec);
// Throws ParameterError unless Y <= (1 - epsilon) T.
void check_bound_range(const MomentSpec& spec);

struct QuadParams {
    double dt = 0.0;       // outer step; 0 selects the default for the integrand
    double inner_ds = 0.0; // window_moment inner step; 0 selects the default
    double zeta_tol = 1e-9;
    unsigned threads = 0;
};

struct QuadResult {
    double value = 0.0;
    double err = 0.0;        // |fine - coarse| of the half-step refinement
    std::size_t panels = 0;  // fine panels
    double dt = 0.0;         // fine step
    double coarse = 0.0;
};

// min(0.25, 1/(4 log Y)); the largest admissible step for a zeta sum of length Y.
double max_moment_step(double Y);
// Step for integrands built from zeta(sigma + it) with |t| up to t_max.
double max_zeta_step(double t_max);

QuadResult integrate_moment(const MomentSpec& spec, const QuadParams& params = {});

struct ShiftConfig {
    std::vector<double> a;  // exponents, each >= 0
    std::vector<double> b;  // shifts
};

void validate(const ShiftConfig& cfg, double T, double epsilon = 0.05);

// Integral over [T, 2T] of prod_j |zeta(sigma + i(t + b_j))|^(a_j).
QuadResult sigma_moment(const ShiftConfig& cfg, double sigma, double T,
                        const QuadParams& params = {});
QuadResult shifted_moment(const ShiftConfig& cfg, double T, const QuadParams& params = {});

// T prod_j zeta(sigma)^(a_j): the pointwise bound |zeta(sigma+it)| <= zeta(sigma), sigma > 1.
double trivial_sigma_bound(const ShiftConfig& cfg, double sigma, double T);

// Integral over [T, 2T] of (integral_0^E |zeta(1/2 + i(sign*s + t))| ds)^(2m) dt.
QuadResult window_moment(double m, double T, double E, int sign, const QuadParams& params = {});
// Same integrand over an arbitrary outer range [t_lo, t_hi].
QuadResult window_moment_range(double m, double t_lo, double t_hi, double E, int sign,
                               const QuadParams& params = {});

}  // namespace zetalab
