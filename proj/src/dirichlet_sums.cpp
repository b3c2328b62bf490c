#include "zetalab/dirichlet_sums.hpp"

#include <algorithm>
#include <cmath>

#include "zetalab/errors.hpp"
#include "zetalab/numeric.hpp"

namespace zetalab {

namespace {

std::size_t term_count(double Y) {
    require(std::isfinite(Y), "sum length must be finite");
    if (Y > kMaxSumLength) throw CapacityError("sum length exceeds the desk-scale cap");
    return Y < 1.0 ? 0 : static_cast<std::size_t>(std::floor(Y));
}

}  // namespace

cplx zsum_direct(const SumRequest& req) {
    require(std::isfinite(req.t), "ordinate must be finite");
    const std::size_t N = term_count(req.Y);
    CompensatedComplexSum acc;
    for (std::size_t n = 1; n <= N; ++n)
        acc.add(unit_phase(req.t, split_log(static_cast<double>(n))));
    return acc.value();
}

std::vector<cplx> dirichlet_batch(std::span<const double> coeffs, const Grid& grid,
                                  unsigned threads) {
    validate(grid);
    if (coeffs.size() > kMaxBatchTerms)
        throw CapacityError("dirichlet_batch: more than " + std::to_string(kMaxBatchTerms) +
                            " terms");
    if (grid.count > kMaxBatchPoints)
        throw CapacityError("dirichlet_batch: grid too large");

    const std::size_t N = coeffs.size();
    std::vector<cplx> out(grid.count, cplx{0.0, 0.0});
    if (N == 0) return out;

    std::vector<SplitLog> logs(N);
    std::vector<cplx> step(N);
    for (std::size_t i = 0; i < N; ++i) {
        logs[i] = split_log(static_cast<double>(i + 1));
        step[i] = unit_phase(grid.dt, logs[i]);
    }

    parallel_for(grid.count, kRenormalizeEvery, threads, [&](std::size_t k0, std::size_t k1) {
        const double t0 = grid.at(k0);
        std::vector<double> re(N), im(N);
        for (std::size_t i = 0; i < N; ++i) {
            const cplx z = coeffs[i] * unit_phase(t0, logs[i]);
            re[i] = z.real();
            im[i] = z.imag();
        }
        for (std::size_t k = k0; k < k1; ++k) {
            // Kahan sum in increasing n.
            double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double yr = re[i] - cr;
                const double tr = sr + yr;
                cr = (tr - sr) - yr;
                sr = tr;
                const double yi = im[i] - ci;
                const double ti = si + yi;
                ci = (ti - si) - yi;
                si = ti;
            }
            out[k] = {sr, si};
            if (k + 1 == k1) break;
            for (std::size_t i = 0; i < N; ++i) {
                const double a = re[i], b = im[i];
                const double c = step[i].real(), d = step[i].imag();
                re[i] = a * c - b * d;
                im[i] = a * d + b * c;
            }
        }
    });
    return out;
}

std::vector<cplx> zsum_batch(double Y, const Grid& grid, unsigned threads) {
    const std::size_t N = term_count(Y);
    if (N > kMaxBatchTerms)
        throw CapacityError("zsum_batch: Y exceeds the batch memory guard");
    const std::vector<double> ones(N, 1.0);
    return dirichlet_batch(ones, grid, threads);
}

std::vector<double> cutoff_weights(double Y, const SmoothCutoff& cutoff) {
    const std::size_t N = term_count(Y);
    std::vector<double> w(N);
    for (std::size_t n = 1; n <= N; ++n) w[n - 1] = cutoff(static_cast<double>(n) / Y);
    return w;
}

cplx zsum_smoothed(double Y, double t, const SmoothCutoff& cutoff) {
    require(std::isfinite(t), "ordinate must be finite");
    const std::vector<double> w = cutoff_weights(Y, cutoff);
    CompensatedComplexSum acc;
    for (std::size_t n = 1; n <= w.size(); ++n) {
        if (w[n - 1] == 0.0) continue;
        acc.add(w[n - 1] * unit_phase(t, split_log(static_cast<double>(n))));
    }
    return acc.value();
}

cplx long_range_approx(double x, double t) {
    require(x >= 1.0 && std::isfinite(x), "long_range_approx: x must be >= 1");
    require(std::isfinite(t), "ordinate must be finite");
    const cplx s{1.0, t};
    const auto power = [&](double base) { return std::exp(s * std::log(base)); };
    return (power(2.0 * x) - power(x)) / s;
}

}  // namespace zetalab
