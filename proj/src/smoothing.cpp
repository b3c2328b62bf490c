#include "zetalab/smoothing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "zetalab/errors.hpp"
#include "zetalab/quadrature.hpp"

namespace zetalab {

namespace {

constexpr int kOrder = SmoothCutoff::kMaxDerivative;
using Jet = std::array<double, kOrder + 1>;  // Taylor coefficients

Jet mul(const Jet& a, const Jet& b) {
    Jet c{};
    for (int k = 0; k <= kOrder; ++k)
        for (int i = 0; i <= k; ++i) c[k] += a[i] * b[k - i];
    return c;
}

Jet reciprocal(const Jet& a) {
    Jet b{};
    b[0] = 1.0 / a[0];
    for (int k = 1; k <= kOrder; ++k) {
        double s = 0.0;
        for (int i = 1; i <= k; ++i) s += a[i] * b[k - i];
        b[k] = -s * b[0];
    }
    return b;
}

Jet exp_jet(const Jet& a) {
    Jet b{};
    b[0] = std::exp(a[0]);
    for (int k = 1; k <= kOrder; ++k) {
        double s = 0.0;
        for (int i = 1; i <= k; ++i) s += i * a[i] * b[k - i];
        b[k] = s / k;
    }
    return b;
}

// Beyond this exponent h is 0 or 1 to double precision, derivatives included.
constexpr double kFlatExponent = 700.0;

}  // namespace

double smooth_step(double y) {
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    const double g = 1.0 / y - 1.0 / (1.0 - y);
    if (g > kFlatExponent) return 0.0;
    return 1.0 / (1.0 + std::exp(g));
}

void smooth_step_taylor(double y, std::span<double, 7> coeffs) {
    std::fill(coeffs.begin(), coeffs.end(), 0.0);
    if (y <= 0.0) return;
    if (y >= 1.0) {
        coeffs[0] = 1.0;
        return;
    }
    const double g0 = 1.0 / y - 1.0 / (1.0 - y);
    if (g0 > kFlatExponent) return;
    if (g0 < -kFlatExponent) {
        coeffs[0] = 1.0;
        return;
    }
    // g(y) = 1/y - 1/(1-y) as a jet in the local variable.
    Jet var{};
    var[0] = y;
    var[1] = 1.0;
    Jet comp{};
    comp[0] = 1.0 - y;
    comp[1] = -1.0;
    const Jet inv_y = reciprocal(var);
    const Jet inv_c = reciprocal(comp);
    Jet g{};
    for (int k = 0; k <= kOrder; ++k) g[k] = inv_y[k] - inv_c[k];

    // h = 1/(1+e^g) = q/(1+q) with q = e^(-g); pick the form that cannot overflow.
    Jet h;
    if (g0 <= 0.0) {
        Jet one_plus = exp_jet(g);
        one_plus[0] += 1.0;
        h = reciprocal(one_plus);
    } else {
        Jet neg{};
        for (int k = 0; k <= kOrder; ++k) neg[k] = -g[k];
        const Jet q = exp_jet(neg);
        Jet one_plus = q;
        one_plus[0] += 1.0;
        h = mul(q, reciprocal(one_plus));
    }
    std::copy(h.begin(), h.end(), coeffs.begin());
}

SmoothCutoff::SmoothCutoff(double U, double c_exponent) : U_(U), c_exponent_(c_exponent) {
    require(std::isfinite(U) && U > 2.0, "cutoff: U must exceed 2");
    require(std::isfinite(c_exponent) && c_exponent >= 1.0, "cutoff: C exponent must be >= 1");
}

double SmoothCutoff::operator()(double x) const {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return smooth_step(U_ * x) * smooth_step(U_ * (1.0 - x));
}

double SmoothCutoff::derivative(double x, int j) const {
    if (j < 0 || j > kMaxDerivative)
        throw ParameterError("cutoff derivative: unsupported order " + std::to_string(j));
    if (x <= 0.0 || x >= 1.0) return 0.0;
    std::array<double, 7> left{}, right{};
    smooth_step_taylor(U_ * x, left);
    smooth_step_taylor(U_ * (1.0 - x), right);
    // Chain rule for the linear inner maps: scale coefficient k by (+-U)^k.
    double scale = 1.0;
    for (int k = 0; k <= kOrder; ++k) {
        left[k] *= scale;
        right[k] *= (k % 2 == 0 ? scale : -scale);
        scale *= U_;
    }
    double coeff = 0.0;
    for (int i = 0; i <= j; ++i) coeff += left[i] * right[j - i];
    return std::tgamma(j + 1.0) * coeff;
}

SmoothCutoff build_cutoff(double U, double c_exponent) { return SmoothCutoff(U, c_exponent); }

double eval_cutoff_derivative(const SmoothCutoff& cutoff, double x, int j) {
    return cutoff.derivative(x, j);
}

MellinValue mellin_transform(const SmoothCutoff& cutoff, cplx s, double abs_tol) {
    require(std::isfinite(s.real()) && std::isfinite(s.imag()), "mellin: s must be finite");
    require(s.real() >= 0.5, "mellin: Re(s) must be >= 1/2");
    const double a = 1.0 / cutoff.U();
    const double b = 1.0 - a;
    const cplx sm1 = s - 1.0;
    auto integrand = [&](double x) -> cplx {
        const double w = cutoff(x);
        if (w == 0.0) return {0.0, 0.0};
        return w * std::exp(sm1 * std::log(x));
    };
    const auto power = [&](double x) { return std::exp(s * std::log(x)); };
    const cplx plateau = (power(b) - power(a)) / s;
    const TanhSinhResult left = tanh_sinh(integrand, 0.0, a, 0.5 * abs_tol, 16);
    const TanhSinhResult right = tanh_sinh(integrand, b, 1.0, 0.5 * abs_tol, 16);
    return {s, plateau + left.value + right.value, left.err + right.err};
}

BoundReport decay_envelope_check(const SmoothCutoff& cutoff, int i,
                                 std::span<const cplx> s_samples) {
    require(i >= 1 && i <= 4, "decay envelope: exponent must be in [1, 4]");
    require(!s_samples.empty(), "decay envelope: need at least one sample");
    double worst = 0.0;
    for (const cplx& s : s_samples) {
        const MellinValue mv = mellin_transform(cutoff, s);
        worst = std::max(worst, std::abs(mv.value) * std::pow(1.0 + std::abs(s), i));
    }
    std::ostringstream cfg;
    cfg << "decay_envelope U=" << cutoff.U() << " i=" << i << " samples=" << s_samples.size();
    return make_report(worst, std::pow(cutoff.U(), i - 1), cfg.str());
}

double diff_mass(double Y, const SmoothCutoff& cutoff) {
    require(std::isfinite(Y) && Y >= 1.0, "diff_mass: Y must be >= 1");
    const auto N = static_cast<long long>(std::floor(Y));
    double acc = 0.0;
    for (long long n = 1; n <= N; ++n) {
        const double d = 1.0 - cutoff(static_cast<double>(n) / Y);
        acc += d * d;
    }
    return acc;
}

}  // namespace zetalab
