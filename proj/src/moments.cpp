#include "zetalab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "zetalab/dirichlet_sums.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/zeta_eval.hpp"

namespace zetalab {

namespace {

constexpr double kRefinementLimit = 0.05;
constexpr double kMaxInnerStep = 0.1;

// Fine grid of 2P+1 points over [lo, hi] with P coarse panels of width <= dt.
Grid refinement_grid(double lo, double hi, double dt) {
    const auto panels = static_cast<std::size_t>(std::ceil((hi - lo) / dt - 1e-12));
    const std::size_t P = std::max<std::size_t>(panels, 1);
    return {lo, (hi - lo) / static_cast<double>(2 * P), 2 * P + 1};
}

QuadResult finish(const std::vector<double>& samples, const Grid& grid, const char* what) {
    const double fine = trapezoid(samples, grid.dt);
    const double coarse = trapezoid_coarse(samples, grid.dt);
    const double err = std::abs(fine - coarse);
    if (err > kRefinementLimit * std::abs(fine)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << ": half-step refinement disagrees by more than 5% (coarse " << coarse
            << ", fine " << fine << ")";
        throw NumericalFailure(msg.str());
    }
    return {fine, err, grid.count - 1, grid.dt, coarse};
}

double resolve_step(double requested, double limit) {
    if (requested == 0.0) return limit;
    require(requested > 0.0 && std::isfinite(requested), "quadrature step must be positive");
    return requested;
}

}  // namespace

double max_moment_step(double Y) {
    if (Y <= std::exp(1.0)) return 0.25;
    return std::min(0.25, 1.0 / (4.0 * std::log(Y)));
}

double max_zeta_step(double t_max) {
    return max_moment_step(std::max(t_max, 1.0));
}

void validate(const MomentSpec& spec) {
    require(std::isfinite(spec.m) && spec.m > 0.0, "moment: m must be positive");
    require(std::isfinite(spec.T) && spec.T >= 100.0, "moment: T must be >= 100");
    require(std::isfinite(spec.Y) && spec.Y >= 1.0, "moment: Y must be >= 1");
    require(spec.epsilon > 0.0 && spec.epsilon < 1.0, "moment: epsilon must lie in (0, 1)");
    if (spec.variant == Variant::smoothed) SmoothCutoff(spec.U, spec.C_exponent);
}

void check_bound_range(const MomentSpec& spec) {
    require(spec.Y <= (1.0 - spec.epsilon) * spec.T,
            "moment: bound comparison needs Y <= (1 - epsilon) T");
}

QuadResult integrate_moment(const MomentSpec& spec, const QuadParams& params) {
    validate(spec);
    const double limit = max_moment_step(spec.Y);
    const double dt = resolve_step(params.dt, limit);
    require(dt <= limit * (1.0 + 1e-12), "moment: dt exceeds min(0.25, 1/(4 log Y))");

    const Grid grid = refinement_grid(spec.T, 2.0 * spec.T, dt);
    std::vector<cplx> sums;
    if (spec.variant == Variant::sharp) {
        sums = zsum_batch(spec.Y, grid, params.threads);
    } else {
        const std::vector<double> w = cutoff_weights(spec.Y, SmoothCutoff(spec.U, spec.C_exponent));
        sums = dirichlet_batch(w, grid, params.threads);
    }
    std::vector<double> samples(sums.size());
    for (std::size_t k = 0; k < sums.size(); ++k) samples[k] = std::pow(std::norm(sums[k]), spec.m);
    return finish(samples, grid, "integrate_moment");
}

void validate(const ShiftConfig& cfg, double T, double epsilon) {
    require(!cfg.a.empty(), "shift config: need k >= 1");
    require(cfg.a.size() == cfg.b.size(), "shift config: exponents and shifts differ in length");
    for (double a : cfg.a) require(std::isfinite(a) && a >= 0.0, "shift config: exponents must be >= 0");
    for (double b : cfg.b)
        require(std::isfinite(b) && std::abs(b) <= (1.0 - epsilon) * T,
                "shift config: |b_j| must be <= (1 - epsilon) T");
}

QuadResult sigma_moment(const ShiftConfig& cfg, double sigma, double T, const QuadParams& params) {
    require(std::isfinite(T) && T >= 100.0, "moment: T must be >= 100");
    require(std::isfinite(sigma) && sigma >= 0.5, "sigma_moment: sigma must be >= 1/2");
    validate(cfg, T);
    double t_max = 2.0 * T;
    for (double b : cfg.b) t_max = std::max(t_max, 2.0 * T + std::abs(b));
    const double dt = resolve_step(params.dt, max_zeta_step(t_max));
    require(dt <= 0.25, "sigma_moment: dt must be <= 0.25");

    const Grid grid = refinement_grid(T, 2.0 * T, dt);
    std::vector<double> samples(grid.count, 1.0);
    for (std::size_t j = 0; j < cfg.a.size(); ++j) {
        if (cfg.a[j] == 0.0) continue;
        const Grid shifted{grid.t0 + cfg.b[j], grid.dt, grid.count};
        const GridZeta z = zeta_on_grid(sigma, shifted, params.zeta_tol, params.threads);
        for (std::size_t k = 0; k < grid.count; ++k)
            samples[k] *= std::pow(std::abs(z.values[k]), cfg.a[j]);
    }
    return finish(samples, grid, "sigma_moment");
}

QuadResult shifted_moment(const ShiftConfig& cfg, double T, const QuadParams& params) {
    return sigma_moment(cfg, 0.5, T, params);
}

double trivial_sigma_bound(const ShiftConfig& cfg, double sigma, double T) {
    require(sigma > 1.0, "trivial bound: needs sigma > 1");
    const double z = eval_zeta({sigma, 0.0}).value.real();
    double bound = T;
    for (double a : cfg.a) bound *= std::pow(z, a);
    return bound;
}

QuadResult window_moment_range(double m, double t_lo, double t_hi, double E, int sign,
                               const QuadParams& params) {
    require(std::isfinite(m) && m > 0.0, "window_moment: m must be positive");
    require(std::isfinite(t_lo) && std::isfinite(t_hi) && t_hi > t_lo, "window_moment: empty range");
    require(std::isfinite(E) && E > 0.0, "window_moment: E must be positive");
    require(sign == 1 || sign == -1, "window_moment: sign must be +1 or -1");

    const double u_max = std::max(std::abs(t_lo), std::abs(t_hi)) + E;
    const double inner_limit = std::min(kMaxInnerStep, max_zeta_step(u_max));
    const double h = resolve_step(params.inner_ds, inner_limit);
    require(h <= kMaxInnerStep, "window_moment: inner step must be <= 0.1");
    const double dt = resolve_step(params.dt, max_zeta_step(u_max));
    require(dt <= 0.25, "window_moment: dt must be <= 0.25");

    // Inner nodes sit on multiples of h, so windows with the same endpoints see
    // the same interpolant regardless of the outer range.
    const auto j_lo = static_cast<long long>(std::floor((t_lo - E) / h)) - 1;
    const auto j_hi = static_cast<long long>(std::ceil((t_hi + E) / h)) + 1;
    const Grid nodes{static_cast<double>(j_lo) * h, h, static_cast<std::size_t>(j_hi - j_lo + 1)};
    const GridZeta z = zeta_on_grid(0.5, nodes, params.zeta_tol, params.threads);
    std::vector<double> v(nodes.count);
    for (std::size_t i = 0; i < nodes.count; ++i) v[i] = std::abs(z.values[i]);

    // Integral of the piecewise-linear interpolant of |zeta| through the nodes
    // j = first, first + stride, ... (global indices), from the first such node to u.
    struct Primitive {
        long long first;
        double step;
        std::vector<double> vals, cumulative;
        double operator()(double u) const {
            const double pos = u / step - static_cast<double>(first);
            auto i = static_cast<std::size_t>(std::max(0.0, std::floor(pos)));
            i = std::min(i, vals.size() - 2);
            const double th = pos - static_cast<double>(i);
            return cumulative[i] + step * (vals[i] * th + 0.5 * (vals[i + 1] - vals[i]) * th * th);
        }
    };
    auto make_primitive = [&](long long stride) {
        Primitive p;
        // Smallest multiple of stride at or above j_lo, in units of stride.
        p.first = (j_lo + (stride - ((j_lo % stride) + stride) % stride) % stride) / stride;
        p.step = h * static_cast<double>(stride);
        for (long long j = p.first * stride; j <= j_hi; j += stride) p.vals.push_back(v[static_cast<std::size_t>(j - j_lo)]);
        p.cumulative.assign(p.vals.size(), 0.0);
        for (std::size_t i = 1; i < p.vals.size(); ++i)
            p.cumulative[i] = p.cumulative[i - 1] + 0.5 * p.step * (p.vals[i - 1] + p.vals[i]);
        return p;
    };
    const Primitive fine = make_primitive(1);
    const Primitive coarse = make_primitive(2);

    const Grid outer = refinement_grid(t_lo, t_hi, dt);
    std::vector<double> samples(outer.count), coarse_samples(outer.count);
    for (std::size_t k = 0; k < outer.count; ++k) {
        const double t = outer.at(k);
        auto window = [&](const Primitive& P) {
            const double inner = sign > 0 ? P(t + E) - P(t) : P(t) - P(t - E);
            return std::pow(std::max(inner, 0.0), 2.0 * m);
        };
        samples[k] = window(fine);
        coarse_samples[k] = window(coarse);
    }
    QuadResult q = finish(samples, outer, "window_moment");
    // The inner interpolant is second order: halving h cuts its error by about 4,
    // so the h versus 2h gap bounds the error of the fine interpolant.
    q.err += std::abs(q.value - trapezoid(coarse_samples, q.dt));
    return q;
}

QuadResult window_moment(double m, double T, double E, int sign, const QuadParams& params) {
    require(std::isfinite(T) && T >= 100.0, "window_moment: T must be >= 100");
    require(m >= 2.0, "window_moment: m must be >= 2");
    require(E >= 10.0 && E <= 0.95 * T, "window_moment: need 10 <= E <= (1 - epsilon) T");
    return window_moment_range(m, T, 2.0 * T, E, sign, params);
}

}  // namespace zetalab
