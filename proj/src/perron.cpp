#include "zetalab/perron.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "zetalab/dirichlet_sums.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/zeta_eval.hpp"

namespace zetalab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRefinementLimit = 0.05;

// Y^s / s.
cplx kernel(double log_Y, cplx s) { return std::exp(s * log_Y) / s; }

struct LegIntegral {
    cplx value;  // already divided by 2 pi (i is applied by the caller)
    cplx coarse;
    double err = 0.0;
};

// (1/2pi) integral over u in [-Y, Y] of zeta(sigma + i(u + t)) Y^(sigma+iu) / (sigma+iu) du.
LegIntegral vertical_leg(double sigma, const PerronConfig& cfg, const PerronParams& params) {
    const double step = params.ds == 0.0 ? default_perron_step(cfg.Y) : params.ds;
    require(step > 0.0 && step <= 0.05, "perron: step must lie in (0, 0.05]");
    const auto P = std::max<std::size_t>(
        static_cast<std::size_t>(std::ceil(2.0 * cfg.Y / step - 1e-12)), 1);
    const Grid u{-cfg.Y, cfg.Y / static_cast<double>(P), 2 * P + 1};
    const Grid ordinates{u.t0 + cfg.t, u.dt, u.count};
    const GridZeta z = zeta_on_grid(sigma, ordinates, params.zeta_tol, params.threads);
    const double log_Y = std::log(cfg.Y);
    std::vector<cplx> f(u.count);
    double kernel_max = 0.0;
    for (std::size_t k = 0; k < u.count; ++k) {
        const cplx K = kernel(log_Y, {sigma, u.at(k)});
        kernel_max = std::max(kernel_max, std::abs(K));
        f[k] = z.values[k] * K;
    }
    const cplx fine = trapezoid(f, u.dt) / kTwoPi;
    const cplx coarse = trapezoid_coarse(f, u.dt) / kTwoPi;
    const double eval_err = z.err * kernel_max * 2.0 * cfg.Y / kTwoPi;
    return {fine, coarse, std::abs(fine - coarse) + eval_err};
}

// (1/2pi) integral over x in [1/2, c] of zeta(x + i(h + t)) Y^(x+ih) / (x+ih) dx.
LegIntegral horizontal_leg(double height, const PerronConfig& cfg, const PerronParams& params) {
    const double c = perron_abscissa(cfg.Y);
    const double step = params.ds == 0.0 ? default_perron_step(cfg.Y) : params.ds;
    const auto P = std::max<std::size_t>(
        static_cast<std::size_t>(std::ceil((c - 0.5) / step - 1e-12)), 1);
    const double h = (c - 0.5) / static_cast<double>(2 * P);
    const double log_Y = std::log(cfg.Y);
    std::vector<cplx> f(2 * P + 1);
    double eval_err = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double x = 0.5 + static_cast<double>(k) * h;
        const EvalResult z = eval_zeta({x, height + cfg.t}, params.zeta_tol);
        const cplx K = kernel(log_Y, {x, height});
        f[k] = z.value * K;
        eval_err = std::max(eval_err, z.err * std::abs(K));
    }
    const cplx fine = trapezoid(f, h) / kTwoPi;
    const cplx coarse = trapezoid_coarse(f, h) / kTwoPi;
    return {fine, coarse, std::abs(fine - coarse) + eval_err * (c - 0.5) / kTwoPi};
}

}  // namespace

void validate(const PerronConfig& cfg) {
    require(std::isfinite(cfg.Y) && cfg.Y >= 10.0, "perron: Y must be >= 10");
    require(std::isfinite(cfg.t), "perron: t must be finite");
}

double perron_abscissa(double Y) { return 1.0 + 1.0 / std::log(Y); }

double default_perron_step(double Y) { return std::min(0.05, 1.0 / (4.0 * std::log(Y))); }

EvalResult truncated_vertical(const PerronConfig& cfg, const PerronParams& params) {
    validate(cfg);
    const LegIntegral leg = vertical_leg(perron_abscissa(cfg.Y), cfg, params);
    // (1/2 pi i) * i du = du / (2 pi); the leg is already real-line normalized.
    if (std::abs(leg.value - leg.coarse) > kRefinementLimit * std::abs(leg.value)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "truncated_vertical: half-step refinement disagrees by more than 5% (coarse "
            << leg.coarse << ", fine " << leg.value << ")";
        throw NumericalFailure(msg.str());
    }
    return {leg.value, leg.err};
}

ContourPieces contour_decomposition(const PerronConfig& cfg, const PerronParams& params) {
    validate(cfg);
    const double guard = 2.0 / std::log(cfg.Y);
    if (std::abs(std::abs(cfg.t) - cfg.Y) < guard)
        throw DomainError("perron: the pole s = 1 - it lies within " + std::to_string(guard) +
                          " of a horizontal leg; choose a different t");
    ContourPieces pieces;
    const LegIntegral lower = horizontal_leg(-cfg.Y, cfg, params);
    const LegIntegral upper = horizontal_leg(cfg.Y, cfg, params);
    const LegIntegral middle = vertical_leg(0.5, cfg, params);
    const cplx inv_i{0.0, -1.0};
    // Lower leg runs from c down to 1/2, hence the sign.
    pieces.horiz_lower = -lower.value * inv_i;
    pieces.horiz_upper = upper.value * inv_i;
    pieces.vertical_half = middle.value;
    pieces.err = lower.err + upper.err + middle.err;
    if (std::abs(cfg.t) < cfg.Y) {
        const cplx w{1.0, -cfg.t};
        pieces.residue = std::exp(w * std::log(cfg.Y)) / w;
    }
    pieces.r1 = r1_bound(cfg);
    pieces.r2 = r2_bound(cfg);
    return pieces;
}

double r1_bound(const PerronConfig& cfg) {
    validate(cfg);
    const auto first = static_cast<long long>(std::floor(cfg.Y / 2.0)) + 1;
    const auto last = static_cast<long long>(std::ceil(2.0 * cfg.Y)) - 1;
    double sum = 0.0;
    for (long long n = first; n <= last; ++n) {
        const double d = std::abs(static_cast<double>(n) - cfg.Y);
        if (d == 0.0) continue;
        sum += std::min(1.0, 1.0 / d);
    }
    return sum;
}

double r2_bound(const PerronConfig& cfg) {
    validate(cfg);
    const double c = perron_abscissa(cfg.Y);
    const double zeta_c = eval_zeta({c, 0.0}).value.real();
    return (std::pow(4.0, c) + std::pow(cfg.Y, c)) / cfg.Y * zeta_c;
}

BoundReport perron_residual(const PerronConfig& cfg, const PerronParams& params) {
    const EvalResult approx = truncated_vertical(cfg, params);
    const cplx direct = zsum_direct({cfg.Y, cfg.t});
    std::ostringstream desc;
    desc << "perron_residual Y=" << cfg.Y << " t=" << cfg.t;
    return make_report(std::abs(direct - approx.value), r1_bound(cfg) + r2_bound(cfg), desc.str());
}

}  // namespace zetalab
