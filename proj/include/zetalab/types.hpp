#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace zetalab {

using cplx = std::complex<double>;

inline constexpr const char* kVersion = "0.1.0";

enum class Precision { standard, extended };

// A complex value paired with an absolute error estimate.
struct EvalResult {
    cplx value;
    double err = 0.0;
};

// Equispaced ordinates t0 + k*dt, 0 <= k < count.
struct Grid {
    double t0 = 0.0;
    double dt = 1.0;
    std::size_t count = 1;

    double at(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }
    double last() const { return at(count - 1); }
};

void validate(const Grid& grid);

// One LHS/RHS comparison.
struct BoundReport {
    double lhs = 0.0;
    double rhs = 1.0;
    double ratio = 0.0;
    std::string config;
};

BoundReport make_report(double lhs, double rhs, std::string config);

}  // namespace zetalab
