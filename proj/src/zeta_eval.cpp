#include "zetalab/zeta_eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "zetalab/dirichlet_sums.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/numeric.hpp"

namespace zetalab {

namespace {

using quad = boost::multiprecision::cpp_bin_float_quad;

// B_{2k} / (2k)!, k = 1..8.
constexpr std::array<std::pair<std::int64_t, std::int64_t>, 8> kBernoulliRatios{{
    {1, 12},
    {-1, 720},
    {1, 30240},
    {-1, 1209600},
    {1, 47900160},
    {-691, 1307674368000},
    {1, 74724249600},
    {-3617, 10670622842880000},
}};
constexpr int kCorrectionOrder = 8;
constexpr int kMaxDoublings = 12;

template <typename R>
struct Cx {
    R re{0};
    R im{0};
};

template <typename R>
Cx<R> operator+(const Cx<R>& a, const Cx<R>& b) { return {a.re + b.re, a.im + b.im}; }
template <typename R>
Cx<R> operator*(const Cx<R>& a, const Cx<R>& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <typename R>
Cx<R> operator*(const Cx<R>& a, const R& k) { return {a.re * k, a.im * k}; }
template <typename R>
Cx<R> operator/(const Cx<R>& a, const Cx<R>& b) {
    const R d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
template <typename R>
R modulus(const Cx<R>& a) {
    using std::sqrt;
    return sqrt(a.re * a.re + a.im * a.im);
}

// n^(-s) for real log n.
Cx<double> inverse_power(double sigma, double t, SplitLog log_n) {
    const cplx ph = unit_phase(t, log_n) * std::exp(-sigma * (log_n.hi + log_n.lo));
    return {ph.real(), ph.imag()};
}

Cx<quad> inverse_power(const quad& sigma, const quad& t, const quad& log_n) {
    const quad mag = exp(-sigma * log_n);
    const quad p = t * log_n;
    return {mag * cos(p), -mag * sin(p)};
}

template <typename R>
auto log_of(std::size_t n) {
    if constexpr (std::is_same_v<R, double>) {
        return split_log(static_cast<double>(n));
    } else {
        return log(R(static_cast<double>(n)));
    }
}

template <typename R>
struct Accumulator {
    Cx<R> sum;
    void add(const Cx<R>& z) { sum = sum + z; }
    Cx<R> value() const { return sum; }
};

template <>
struct Accumulator<double> {
    CompensatedComplexSum acc;
    void add(const Cx<double>& z) { acc.add({z.re, z.im}); }
    Cx<double> value() const {
        const cplx v = acc.value();
        return {v.real(), v.imag()};
    }
};

struct TailTerms {
    Cx<double> value;
    double last_correction = 0.0;
};

// N^(1-s)/(s-1) + N^(-s)/2 + sum_k B_2k/(2k)! s(s+1)...(s+2k-2) N^(-s-2k+1).
template <typename R>
std::pair<Cx<R>, R> em_tail(const R& sigma, const R& t, std::size_t N) {
    const auto logN = log_of<R>(N);
    const R Nr = R(static_cast<double>(N));
    const Cx<R> base = inverse_power(sigma, t, logN);
    const Cx<R> s{sigma, t};
    const Cx<R> sm1{sigma - R(1), t};
    Cx<R> total = (base * Nr) / sm1 + base * R(0.5);
    Cx<R> poch = s;
    const R inv_N2 = R(1) / (Nr * Nr);
    Cx<R> scaled = base * (R(1) / Nr);  // N^(-s-2k+1) for k = 1
    R last{0};
    for (int k = 1; k <= kCorrectionOrder; ++k) {
        if (k > 1) {
            const Cx<R> a{sigma + R(2 * k - 3), t};
            const Cx<R> b{sigma + R(2 * k - 2), t};
            poch = poch * a * b;
            scaled = scaled * inv_N2;
        }
        const auto [num, den] = kBernoulliRatios[k - 1];
        const R coef = R(static_cast<double>(num)) / R(static_cast<double>(den));
        const Cx<R> term = poch * scaled * coef;
        total = total + term;
        last = modulus(term);
    }
    return {total, last};
}

// Independent per-term errors of a few ulps, plus the phase error t * delta(log n),
// accumulated in quadrature.
double rounding_allowance(double eps, double t, std::size_t N, double energy, double value) {
    // log n carries kLogEpsilon relative accuracy in double mode, eps in extended mode.
    const double phase_eps = std::min(eps, kLogEpsilon);
    const double per_term =
        4.0 * eps + phase_eps * std::abs(t) * std::log(static_cast<double>(N));
    return per_term * std::sqrt(energy + 1.0) + 4.0 * eps * value;
}

template <typename R>
EvalResult euler_maclaurin(double sigma_d, double t_d, double tol) {
    const R sigma(sigma_d);
    const R t(t_d);
    const double abs_s = std::hypot(sigma_d, t_d);
    const double eps = static_cast<double>(std::numeric_limits<R>::epsilon());

    std::size_t N = std::max<std::size_t>(static_cast<std::size_t>(std::ceil(abs_s / 2.0)), 32);
    Accumulator<R> head;
    double energy = 0.0;  // sum of |n^-s|^2, for the rounding allowance
    std::size_t next = 1;
    for (int attempt = 0; attempt <= kMaxDoublings; ++attempt) {
        for (; next < N; ++next) {
            const Cx<R> z = inverse_power(sigma, t, log_of<R>(next));
            head.add(z);
            energy += std::exp(-2.0 * sigma_d * std::log(static_cast<double>(next)));
        }
        const auto [tail, last] = em_tail<R>(sigma, t, N);
        const double truncation = 4.0 * static_cast<double>(last);
        const Cx<R> v = head.value() + tail;
        const double rounding = rounding_allowance(eps, t_d, N, energy, static_cast<double>(modulus(v)));
        const double err = truncation + rounding;
        if (err <= tol)
            return {cplx{static_cast<double>(v.re), static_cast<double>(v.im)}, err};
        if (truncation <= 0.5 * tol && rounding > 0.5 * tol)
            throw NumericalFailure("eval_zeta: tolerance below the rounding floor");
        N *= 2;
    }
    throw NumericalFailure("eval_zeta: Euler-Maclaurin did not reach the tolerance");
}

void check_point(double sigma, double t) {
    require(std::isfinite(sigma) && std::isfinite(t), "zeta: point must be finite");
    require(sigma >= 0.5, "zeta: sigma must be >= 1/2");
    if (std::abs(t) > kMaxOrdinate) throw CapacityError("zeta: |t| exceeds the desk-scale cap");
    if (std::abs(sigma - 1.0) + std::abs(t) < kPoleExclusion)
        throw DomainError("zeta: too close to the pole at s = 1");
}

}  // namespace

EvalResult eval_zeta(ZetaPoint p, double tol, Precision precision) {
    check_point(p.sigma, p.t);
    require(tol > 0.0, "zeta: tolerance must be positive");
    if (precision == Precision::extended) return euler_maclaurin<quad>(p.sigma, p.t, tol);
    return euler_maclaurin<double>(p.sigma, p.t, tol);
}

double riemann_siegel_theta(double t) {
    // Im log Gamma(z), z = 1/4 + it/2: shift z by M so Stirling applies, then
    // subtract the continuous branch of Im log(z + k) for k < M.
    constexpr int kShift = 16;
    constexpr std::array<double, 10> kStirling{
        1.0 / 12.0,        -1.0 / 360.0,        1.0 / 1260.0,         -1.0 / 1680.0,
        1.0 / 1188.0,      -691.0 / 360360.0,   1.0 / 156.0,          -3617.0 / 122400.0,
        43867.0 / 244188.0, -174611.0 / 125400.0};
    const double y = 0.5 * t;
    double shift_phase = 0.0;
    for (int k = 0; k < kShift; ++k) shift_phase += std::atan2(y, 0.25 + k);
    const cplx w{0.25 + kShift, y};
    cplx lg = (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * std::numbers::pi);
    const cplx inv_w = 1.0 / w;
    const cplx inv_w2 = inv_w * inv_w;
    cplx pw = inv_w;
    for (double c : kStirling) {
        lg += c * pw;
        pw *= inv_w2;
    }
    return lg.imag() - shift_phase - 0.5 * t * std::log(std::numbers::pi);
}

EvalResult hardy_z(double t, double tol, Precision precision) {
    require(t >= 0.0, "hardy_z: t must be >= 0");
    const EvalResult z = eval_zeta({0.5, t}, tol, precision);
    const double theta = riemann_siegel_theta(t);
    const cplx rot = std::polar(1.0, theta);
    const double theta_err = 8.0 * std::numeric_limits<double>::epsilon() * (std::abs(theta) + 1.0);
    return {rot * z.value, z.err + std::abs(z.value) * theta_err};
}

EvalResult eval_zeta_one_line(double alpha, double T, double tol) {
    require(std::isfinite(T) && T >= 16.0, "zeta one-line: T must be >= 16");
    return eval_zeta({1.0 + 1.0 / std::log(T), alpha}, tol);
}

GridZeta zeta_on_grid(double sigma, const Grid& grid, double tol, unsigned threads) {
    validate(grid);
    require(tol > 0.0, "zeta_on_grid: tolerance must be positive");
    const double t_lo = grid.t0;
    const double t_hi = grid.last();
    check_point(sigma, t_lo);
    check_point(sigma, t_hi);
    if (t_lo <= 0.0 && t_hi >= 0.0) check_point(sigma, 0.0);
    const double abs_s = std::hypot(sigma, std::max(std::abs(t_lo), std::abs(t_hi)));

    std::size_t N = std::max<std::size_t>(static_cast<std::size_t>(std::ceil(abs_s / 2.0)), 32);
    for (int attempt = 0; attempt <= kMaxDoublings; ++attempt, N *= 2) {
        std::vector<std::pair<Cx<double>, double>> tails(grid.count);
        double worst = 0.0;
        for (std::size_t k = 0; k < grid.count; ++k) {
            const double tk = grid.at(k);
            if (std::abs(sigma - 1.0) + std::abs(tk) < kPoleExclusion)
                throw DomainError("zeta_on_grid: grid passes the pole at s = 1");
            tails[k] = em_tail<double>(sigma, tk, N);
            worst = std::max(worst, 4.0 * tails[k].second);
        }
        if (worst > tol) continue;

        std::vector<double> coeffs(N - 1);
        double energy = 0.0;
        for (std::size_t n = 1; n < N; ++n) {
            coeffs[n - 1] = std::exp(-sigma * std::log(static_cast<double>(n)));
            energy += coeffs[n - 1] * coeffs[n - 1];
        }
        std::vector<cplx> head = dirichlet_batch(coeffs, grid, threads);
        for (std::size_t k = 0; k < grid.count; ++k)
            head[k] += cplx{tails[k].first.re, tails[k].first.im};
        // The batch recurrence adds up to kRenormalizeEvery roundings per term.
        const double eps = std::numeric_limits<double>::epsilon();
        const double t_max = std::max(std::abs(t_lo), std::abs(t_hi));
        double value_max = 0.0;
        for (const cplx& v : head) value_max = std::max(value_max, std::abs(v));
        const double rounding = rounding_allowance(eps, t_max, N, energy, value_max) +
                                eps * static_cast<double>(kRenormalizeEvery) * std::sqrt(energy);
        return {std::move(head), worst + rounding, N};
    }
    throw NumericalFailure("zeta_on_grid: Euler-Maclaurin did not reach the tolerance");
}

}  // namespace zetalab
