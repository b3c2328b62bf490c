#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>

#include "zetalab/types.hpp"

namespace zetalab {

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(cplx z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

// Fixed-order pairwise sum; the result depends only on the input order.
double pairwise_sum(std::span<const double> xs);
cplx pairwise_sum(std::span<const cplx> xs);

// log n as an unevaluated sum hi + lo, accurate beyond double precision where
// long double is wider than double.
struct SplitLog {
    double hi = 0.0;
    double lo = 0.0;
};

inline SplitLog split_log(double n) {
    const long double L = std::log(static_cast<long double>(n));
    const double hi = static_cast<double>(L);
    return {hi, static_cast<double>(L - static_cast<long double>(hi))};
}

// Relative accuracy of split_log.
inline constexpr double kLogEpsilon = static_cast<double>(std::numeric_limits<long double>::epsilon());

// exp(-i t log n) with the rounding error of t * hi and the t * lo term folded in.
inline cplx unit_phase(double t, SplitLog log_n) {
    const double p = t * log_n.hi;
    const double e = std::fma(t, log_n.hi, -p) + t * log_n.lo;
    const double c = std::cos(p);
    const double s = std::sin(p);
    // cos(p + e) - i sin(p + e) to first order in e.
    return {c - e * s, -(s + e * c)};
}

inline cplx unit_phase(double t, double log_n) { return unit_phase(t, SplitLog{log_n, 0.0}); }

// Worker count: 0 means "use hardware concurrency".
unsigned resolve_threads(unsigned requested);

// Splits [0, n) into contiguous chunks and runs body(begin, end) on each.
// Chunk boundaries depend on n and chunk size only, never on the worker count.
void parallel_for(std::size_t n, std::size_t chunk, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace zetalab
