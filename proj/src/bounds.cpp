#include "zetalab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/zeta_eval.hpp"

namespace zetalab {

namespace {

double log_T(double T) {
    require(std::isfinite(T) && T >= 16.0, "envelope: T must be >= 16");
    return std::log(T);
}

double sum_squares_quarter(const ShiftConfig& cfg) {
    double s = 0.0;
    for (double a : cfg.a) s += a * a;
    return s / 4.0;
}

template <typename PairFactor>
double shifted_rhs(const ShiftConfig& cfg, double T, PairFactor&& pair) {
    require(!cfg.a.empty() && cfg.a.size() == cfg.b.size(), "shift config: malformed");
    const double L = log_T(T);
    double rhs = T * std::pow(L, sum_squares_quarter(cfg));
    for (std::size_t j = 0; j < cfg.a.size(); ++j)
        for (std::size_t l = j + 1; l < cfg.a.size(); ++l)
            rhs *= std::pow(pair(cfg.b[j] - cfg.b[l]), 0.5 * cfg.a[j] * cfg.a[l]);
    return rhs;
}

}  // namespace

double g_func(double x, const EnvelopeParams& p) {
    require(std::isfinite(x) && x >= 0.0, "g_func: x must be >= 0");
    const double L = log_T(p.T);
    // x >= e^T compared in log space; e^T overflows for large T.
    const bool beyond = x > 0.0 && std::log(x) >= p.T;
    if (x <= 1.0 / L || beyond) return L;
    if (x <= 10.0) return 1.0 / x;
    return std::log(std::log(x));
}

double curran_rhs(const ShiftConfig& cfg, double T) {
    return shifted_rhs(cfg, T, [T](double diff) {
        return std::abs(eval_zeta_one_line(diff, T, 1e-10).value);
    });
}

double corollary_rhs(const ShiftConfig& cfg, double T) {
    const EnvelopeParams p{T};
    return shifted_rhs(cfg, T, [&p](double diff) { return g_func(std::abs(diff), p); });
}

double main_rhs(double m, double T, double Y) {
    require(std::isfinite(m) && m > 0.0, "main_rhs: m must be positive");
    require(std::isfinite(T) && T > 1.0, "main_rhs: T must exceed 1");
    require(std::isfinite(Y) && Y > 0.0, "main_rhs: Y must be positive");
    return T * std::pow(Y, m) * std::pow(std::log(T), (m - 1.0) * (m - 1.0));
}

Prop24Terms prop24_terms(double m, double T, double E) {
    require(std::isfinite(m) && m > 0.0, "prop24_rhs: m must be positive");
    require(std::isfinite(E) && E >= 10.0, "prop24_rhs: E must be >= 10");
    const double L = log_T(T);
    const double llE = std::log(std::log(E));
    const double llT = std::log(L);
    return {T * std::pow(L, (m - 1.0) * (m - 1.0)) * std::pow(E, 3.0) * llE,
            T * std::pow(L, m * m - 3.0 * m + 3.0) * std::pow(E, 2.0 * m) * llE * llT};
}

double prop24_rhs(double m, double T, double E) { return prop24_terms(m, T, E).total(); }

double holder_reduce(double m, double n, double S_mn, double T) {
    require(std::isfinite(m) && m > 0.0, "holder_reduce: m must be positive");
    require(std::isfinite(n) && n > 1.0, "holder_reduce: n must exceed 1");
    require(std::isfinite(S_mn) && S_mn >= 0.0, "holder_reduce: S_mn must be >= 0");
    require(std::isfinite(T) && T > 0.0, "holder_reduce: T must be positive");
    return std::pow(T, 1.0 - 1.0 / n) * std::pow(S_mn, 1.0 / n);
}

FitResult fit_exponent(std::span<const std::pair<double, double>> points) {
    if (points.size() < 3) throw ParameterError("fit_exponent: need at least 3 points");
    const double n = static_cast<double>(points.size());
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : points) {
        require(std::isfinite(x) && std::isfinite(y), "fit_exponent: non-finite point");
        mx += x;
        my += y;
    }
    std::vector<double> xs;
    for (const auto& pt : points) xs.push_back(pt.first);
    std::sort(xs.begin(), xs.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end())
        throw ParameterError("fit_exponent: x values must be distinct");
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (!(sxx > 1e-300)) throw ParameterError("fit_exponent: x values are not distinct");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (const auto& [x, y] : points) {
        const double r = y - (fit.intercept + fit.slope * x);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace zetalab
