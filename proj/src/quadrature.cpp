#include "zetalab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/numeric.hpp"

namespace zetalab {

namespace {

// Nodes are kept while the endpoint distance stays representable.
constexpr double kMaxAbscissa = 3.5;

struct Node {
    double offset_lo;  // distance from a, in units of (b - a) / 2
    double offset_hi;  // distance from b
    double weight;
};

Node node_at(double u) {
    const double sh = std::sinh(u);
    const double ch = std::cosh(u);
    const double e = std::exp(std::numbers::pi * sh);
    // 1 + tanh(pi/2 sinh u) and 1 - tanh(pi/2 sinh u), without cancellation.
    const double lo = 2.0 * e / (1.0 + e);
    const double hi = 2.0 / (1.0 + e);
    const double c = std::cosh(0.5 * std::numbers::pi * sh);
    return {lo, hi, 0.5 * std::numbers::pi * ch / (c * c)};
}

template <typename T>
T trap(std::span<const T> samples, double h, std::size_t stride) {
    require(samples.size() >= 2, "trapezoid: need at least two samples");
    std::vector<T> terms;
    terms.reserve(samples.size() / stride + 1);
    const std::size_t last = samples.size() - 1;
    for (std::size_t i = 0; i <= last; i += stride) {
        const bool end = (i == 0 || i == last);
        terms.push_back(end ? samples[i] * 0.5 : samples[i]);
    }
    return pairwise_sum(std::span<const T>(terms)) * (h * static_cast<double>(stride));
}

}  // namespace

TanhSinhResult tanh_sinh(const std::function<cplx(double)>& f, double a, double b,
                         double abs_tol, int max_level, int min_level) {
    require(b > a, "tanh_sinh: empty interval");
    require(abs_tol > 0.0, "tanh_sinh: tolerance must be positive");
    const double half = 0.5 * (b - a);

    auto eval = [&](double u) -> cplx {
        const Node nd = node_at(u);
        if (nd.weight == 0.0) return {0.0, 0.0};
        const double x = u < 0.0 ? a + half * nd.offset_lo : b - half * nd.offset_hi;
        if (!(x > a && x < b)) return {0.0, 0.0};
        return f(x) * nd.weight;
    };

    // Level 0: step 1, nodes at integers.
    double h = 1.0;
    CompensatedComplexSum acc;
    acc.add(eval(0.0));
    for (int k = 1; k * h <= kMaxAbscissa; ++k) {
        acc.add(eval(k * h));
        acc.add(eval(-k * h));
    }
    cplx estimate = acc.value() * h * half;
    double delta = 0.0;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        // New nodes are the odd multiples of the halved step.
        for (int k = 1; k * h <= kMaxAbscissa; k += 2) {
            acc.add(eval(k * h));
            acc.add(eval(-k * h));
        }
        const cplx next = acc.value() * h * half;
        delta = std::abs(next - estimate);
        estimate = next;
        if (level >= min_level && delta < abs_tol) return {estimate, delta, level};
    }
    throw NumericalFailure("tanh_sinh: no convergence, last refinement delta " +
                           std::to_string(delta));
}

double trapezoid(std::span<const double> samples, double h) { return trap(samples, h, 1); }
cplx trapezoid(std::span<const cplx> samples, double h) { return trap(samples, h, 1); }

double trapezoid_coarse(std::span<const double> samples, double h) {
    require(samples.size() % 2 == 1, "trapezoid_coarse: need an odd sample count");
    return trap(samples, h, 2);
}
cplx trapezoid_coarse(std::span<const cplx> samples, double h) {
    require(samples.size() % 2 == 1, "trapezoid_coarse: need an odd sample count");
    return trap(samples, h, 2);
}

}  // namespace zetalab
