#pragma once

#include <span>

#include "zetalab/types.hpp"

namespace zetalab {

// Smooth cutoff supported on (0, 1), equal to 1 on [1/U, 1 - 1/U]:
//   phi(x) = h(U x) h(U (1 - x)),  h(y) = f(y) / (f(y) + f(1 - y)),  f(y) = exp(-1/y).
class SmoothCutoff {
public:
    static constexpr int kMaxDerivative = 6;

    SmoothCutoff(double U, double c_exponent);

    double U() const { return U_; }
    double c_exponent() const { return c_exponent_; }

    double operator()(double x) const;
    // j-th derivative, 0 <= j <= kMaxDerivative, via truncated Taylor arithmetic.
    double derivative(double x, int j) const;

private:
    double U_;
    double c_exponent_;
};

// The smooth step h and its Taylor coefficients c_k = h^(k)(y)/k!, k <= 6.
double smooth_step(double y);
void smooth_step_taylor(double y, std::span<double, 7> coeffs);

SmoothCutoff build_cutoff(double U, double c_exponent = 1.0);
double eval_cutoff_derivative(const SmoothCutoff& cutoff, double x, int j);

struct MellinValue {
    cplx s;
    cplx value;
    double err = 0.0;
};

// Integral of phi(x) x^(s-1) over (0, 1). The plateau [1/U, 1-1/U] is integrated
// in closed form, the two transition layers by tanh-sinh.
MellinValue mellin_transform(const SmoothCutoff& cutoff, cplx s, double abs_tol = 1e-13);

// lhs = max_s |phi^(s)| (1+|s|)^i, rhs = U^(i-1), ratio = measured constant K_i.
BoundReport decay_envelope_check(const SmoothCutoff& cutoff, int i,
                                 std::span<const cplx> s_samples);

// Sum over n <= Y of (1 - phi(n/Y))^2.
double diff_mass(double Y, const SmoothCutoff& cutoff);

}  // namespace zetalab
