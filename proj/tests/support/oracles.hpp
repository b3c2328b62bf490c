#pragma once

// Reference implementations used only by tests. None of them share code paths
// with the library kernels they check.

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using mp100 = boost::multiprecision::cpp_bin_float_100;
using mp50 = boost::multiprecision::cpp_bin_float_50;

// zeta(s) = eta(s) / (1 - 2^(1-s)) with eta summed by the Borwein-accelerated
// alternating series. Terms are added until the published remainder bound
//   3 (1 + 2|t|) e^(pi|t|/2) / ((3 + sqrt 8)^n |1 - 2^(1-s)|)
// falls below tail_bound. Valid for sigma >= 1/2, s != 1.
inline std::complex<double> zeta_eta(double sigma, double t, double tail_bound = 1e-13) {
    const mp100 s_re(sigma), s_im(t);
    const mp100 ln2 = log(mp100(2));
    // 1 - 2^(1-s)
    const mp100 mag2 = exp((1 - s_re) * ln2);
    const mp100 ang2 = -s_im * ln2;
    const mp100 den_re = 1 - mag2 * cos(ang2);
    const mp100 den_im = -mag2 * sin(ang2);
    const double den_abs = static_cast<double>(sqrt(den_re * den_re + den_im * den_im));

    const double rate = std::log10(3.0 + std::sqrt(8.0));
    const double need = std::log10(3.0 * (1.0 + 2.0 * std::abs(t))) +
                        std::abs(t) * M_PI / 2.0 / std::log(10.0) - std::log10(den_abs) -
                        std::log10(tail_bound);
    const int n = static_cast<int>(std::ceil(need / rate)) + 2;

    // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    std::vector<mp100> d(n + 1);
    mp100 term = mp100(1) / n;  // i = 0: (n-1)!/n! = 1/n
    mp100 acc = term;
    d[0] = n * acc;
    for (int i = 1; i <= n; ++i) {
        term *= mp100(4) * (n + i - 1) * (n - i + 1) / ((2 * i - 1) * (2 * i));
        acc += term;
        d[i] = n * acc;
    }
    mp100 sum_re = 0, sum_im = 0;
    for (int k = 0; k < n; ++k) {
        const mp100 lk = log(mp100(k + 1));
        const mp100 mag = exp(-s_re * lk);
        const mp100 ang = -s_im * lk;
        const mp100 coef = (k % 2 == 0 ? 1 : -1) * (d[k] - d[n]);
        sum_re += coef * mag * cos(ang);
        sum_im += coef * mag * sin(ang);
    }
    // -sum / (d_n (1 - 2^(1-s)))
    const mp100 dd = den_re * den_re + den_im * den_im;
    const mp100 q_re = (sum_re * den_re + sum_im * den_im) / dd;
    const mp100 q_im = (sum_im * den_re - sum_re * den_im) / dd;
    return {static_cast<double>(-q_re / d[n]), static_cast<double>(-q_im / d[n])};
}

// sum_{n <= Y} n^(-it) at 50 digits.
inline std::complex<double> zsum_mp(double Y, double t) {
    mp50 re = 0, im = 0;
    const mp50 tt(t);
    for (long long n = 1; n <= static_cast<long long>(std::floor(Y)); ++n) {
        const mp50 ph = tt * log(mp50(n));
        re += cos(ph);
        im -= sin(ph);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

// Bisection on a sign change of a real function.
template <typename F>
double bisect(F&& f, double lo, double hi, int iterations = 60) {
    double flo = f(lo);
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Maximum of |f| on a dense uniform grid.
template <typename F>
double dense_sup(F&& f, double lo, double hi, int points) {
    double best = 0.0;
    for (int i = 0; i <= points; ++i) best = std::max(best, std::abs(f(lo + (hi - lo) * i / points)));
    return best;
}

}  // namespace oracle
