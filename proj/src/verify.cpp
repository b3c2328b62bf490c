#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <sstream>

#include "zetalab/bounds.hpp"
#include "zetalab/dirichlet_sums.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/experiments.hpp"
#include "zetalab/moments.hpp"
#include "zetalab/perron.hpp"
#include "zetalab/smoothing.hpp"
#include "zetalab/zeta_eval.hpp"

namespace zetalab {

namespace {

struct Pinned {
    double sigma, t, re, im;
};

// Reference values from the accelerated eta-series oracle at 100 digits.
constexpr std::array<Pinned, 20> kPinnedZeta{{
    {0.5, 0, -1.4603545088095868, 0},
    {0.5, 1, 0.14393642707718907, -0.72209974353167306},
    {0.5, 5, 0.70181237116568662, 0.23103800839141994},
    {0.5, 14.134725141734693, 1.160242651193126e-16, -7.316759391419366e-16},
    {0.5, 21, -0.0051620646381019004, -0.024546964575121902},
    {0.5, 37.5, -0.03618883450130092, -0.16423113092668892},
    {0.5, 60, 0.54120083514634809, 0.22718392236826873},
    {0.5, 99.25, 0.71907253257473513, 1.1940540192041154},
    {0.6, 3, 0.55196314173388206, -0.085917757518078813},
    {0.75, 10, 1.4614349531262221, -0.11416177125806473},
    {0.75, 50, 0.23903524125986128, 0.31824888870622503},
    {0.9, 7, 1.0256598143164866, 0.32047153165665454},
    {1.1, 0, 10.584448464950801, 0},
    {1.25, 20, 0.78473149148324672, -0.539682328335784},
    {1.5, 2, 0.75218186903423256, -0.33397906099331398},
    {1.5, 80, 1.1252349641525001, 0.55046688472387395},
    {2, 0, 1.6449340668482264, 0},
    {2, 33, 0.79172215147697067, 0.20321687393514393},
    {3, 12, 0.96879931249040752, -0.12440405491483973},
    {4.5, 90, 1.0410353982610017, 0.028038214531247246},
}};

struct PinnedRemainder {
    double Y, r1, r2;
};

// Exact rational sums for r1; r2 at 30 digits.
constexpr std::array<PinnedRemainder, 3> kPinnedRemainders{{
    {10.5, 5.841114234922284, 10.074878772058955672},
    {100.5, 10.444234075553084, 14.422777035118639183},
    {1000.5, 15.049383637780386, 20.412620833032156738},
}};

class Suite {
public:
    Suite(const VerifyOptions& options, std::vector<CheckOutcome>& out)
        : options_(options), out_(out) {}

    // body returns (measured, threshold, passed, detail).
    template <typename Body>
    void run(const std::string& name, Body&& body) {
        CheckOutcome c;
        c.name = name;
        try {
            body(c);
        } catch (const std::exception& e) {
            c.passed = false;
            c.detail = std::string("exception: ") + e.what();
        }
        out_.push_back(std::move(c));
    }

    bool full() const { return options_.suite == "full"; }
    unsigned threads() const { return options_.threads; }
    const EnvelopeFn& g() const { return envelope_; }
    void set_envelope(EnvelopeFn g) { envelope_ = std::move(g); }

private:
    const VerifyOptions& options_;
    std::vector<CheckOutcome>& out_;
    EnvelopeFn envelope_;
};

void zeta_checks(Suite& suite) {
    suite.run("zeta.conjugate_symmetry", [](CheckOutcome& c) {
        const std::array<ZetaPoint, 5> pts{{{0.5, 14.13}, {0.5, 100}, {0.75, 37}, {1.5, 250}, {2, 3}}};
        double worst = 0.0;
        for (const auto& p : pts) {
            const EvalResult a = eval_zeta(p, 1e-11);
            const EvalResult b = eval_zeta({p.sigma, -p.t}, 1e-11);
            const double allowed = 2.0 * std::max(a.err, b.err);
            worst = std::max(worst, std::abs(b.value - std::conj(a.value)) / allowed);
        }
        c.measured = worst;
        c.threshold = 1.0;
        c.passed = worst <= 1.0;
        c.detail = "max |zeta(conj s) - conj zeta(s)| / (2 err)";
    });

    suite.run("zeta.hardy_realness", [&suite](CheckOutcome& c) {
        const int count = suite.full() ? 200 : 50;
        double worst = 0.0;
        bool ok = true;
        for (int i = 0; i < count; ++i) {
            const double t = 1000.0 * (i + 0.5) / count;
            const EvalResult z = hardy_z(t, 1e-10);
            const double im = std::abs(z.value.imag());
            worst = std::max(worst, im);
            ok = ok && im <= std::max(1e-8, 2.0 * z.err);
        }
        c.measured = worst;
        c.threshold = 1e-8;
        c.passed = ok;
        c.detail = "max |Im Z(t)| over t in [0, 1000]";
    });

    suite.run("zeta.series_consistency", [](CheckOutcome& c) {
        constexpr long long N = 100000;
        double worst = 0.0;
        for (double sigma : {1.5, 2.0, 3.0}) {
            for (double t : {0.0, 10.0, 100.0}) {
                const cplx s{sigma, t};
                cplx direct{0.0, 0.0};
                for (long long n = N - 1; n >= 1; --n) direct += std::pow(static_cast<double>(n), -s);
                const cplx Nd{static_cast<double>(N), 0.0};
                direct += std::pow(Nd, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(Nd, -s);
                const EvalResult z = eval_zeta({sigma, t}, 1e-12);
                const double tail = std::abs(s) / 12.0 * std::pow(static_cast<double>(N), -sigma - 1.0);
                const double allowed = z.err + 2.0 * tail + 1e-13;
                worst = std::max(worst, std::abs(z.value - direct) / allowed);
            }
        }
        c.measured = worst;
        c.threshold = 1.0;
        c.passed = worst <= 1.0;
        c.detail = "max |EM - (series + integral tail)| / allowance";
    });

    suite.run("zeta.accuracy_regression", [](CheckOutcome& c) {
        double worst = 0.0;
        for (const Pinned& p : kPinnedZeta) {
            const EvalResult z = eval_zeta({p.sigma, p.t}, 1e-12);
            worst = std::max(worst, std::abs(z.value - cplx{p.re, p.im}));
        }
        c.measured = worst;
        c.threshold = 1e-9;
        c.passed = worst <= 1e-9;
        c.detail = "20 pinned points";
    });
}

void dirichlet_checks(Suite& suite) {
    suite.run("zsum.triangle_bound", [](CheckOutcome& c) {
        double worst = 0.0;
        for (double Y : {10.0, 100.5, 1000.0})
            for (double t : {0.3, 50.0, 1234.5})
                worst = std::max(worst, std::abs(zsum_direct({Y, t})) / std::floor(Y));
        c.measured = worst;
        c.threshold = 1.0 + 1e-12;
        c.passed = worst <= c.threshold;
        c.detail = "max |sum| / floor(Y)";
    });

    suite.run("zsum.conjugate_symmetry", [](CheckOutcome& c) {
        double worst = 0.0;
        for (double Y : {10.0, 100.5, 1000.0})
            for (double t : {0.3, 50.0, 1234.5}) {
                const cplx a = zsum_direct({Y, t});
                const cplx b = zsum_direct({Y, -t});
                worst = std::max(worst, std::abs(b - std::conj(a)) / std::max(std::abs(a), 1e-300));
            }
        c.measured = worst;
        c.threshold = 1e-12;
        c.passed = worst <= 1e-12;
        c.detail = "relative deviation";
    });

    suite.run("zsum.batch_oracle", [&suite](CheckOutcome& c) {
        std::vector<std::pair<double, std::size_t>> cases{{100.0, 1000}, {1000.0, 1000}, {100.0, 10000}};
        if (suite.full()) cases.emplace_back(10000.0, 1000);
        double worst = 0.0;
        for (const auto& [Y, count] : cases) {
            const Grid grid{1000.0, 1000.0 / static_cast<double>(count), count};
            const std::vector<cplx> batch = zsum_batch(Y, grid, suite.threads());
            for (std::size_t k = 0; k < count; ++k) {
                const cplx d = zsum_direct({Y, grid.at(k)});
                worst = std::max(worst, std::abs(batch[k] - d) / std::max(std::abs(d), 1e-300));
            }
        }
        c.measured = worst;
        c.threshold = 1e-9;
        c.passed = worst <= 1e-9;
        c.detail = "max pointwise relative deviation, batch vs direct";
    });

    suite.run("zsum.smoothed_difference", [](CheckOutcome& c) {
        double worst = 0.0;
        bool ok = true;
        for (double Y : {10.0, 100.0, 1000.0})
            for (double U : {4.0, 10.0}) {
                const SmoothCutoff phi(U, 1.0);
                long long outside = 0;
                for (long long n = 1; n <= static_cast<long long>(Y); ++n) {
                    const double x = static_cast<double>(n) / Y;
                    if (!(x > 1.0 / U && x < 1.0 - 1.0 / U)) ++outside;
                }
                ok = ok && static_cast<double>(outside) <= 2.0 * Y / U + 2.0;
                for (double t : {0.0, 7.5, 100.0}) {
                    const double diff = std::abs(zsum_direct({Y, t}) - zsum_smoothed(Y, t, phi));
                    worst = std::max(worst, diff / static_cast<double>(outside));
                }
            }
        c.measured = worst;
        c.threshold = 1.0;
        c.passed = ok && worst <= 1.0 + 1e-12;
        c.detail = "max |sharp - smoothed| / #{n outside the plateau}";
    });
}

void smoothing_checks(Suite& suite) {
    suite.run("cutoff.range_support_plateau", [](CheckOutcome& c) {
        long long violations = 0;
        for (double U : {4.0, 8.0, 16.0, 32.0}) {
            const SmoothCutoff phi(U, 1.0);
            for (int i = 0; i <= 10000; ++i) {
                const double x = -0.1 + 1.2 * i / 10000.0;
                const double v = phi(x);
                if (v < 0.0 || v > 1.0) ++violations;
                if ((x <= 0.0 || x >= 1.0) && v != 0.0) ++violations;
                if (x > 1.0 / U && x < 1.0 - 1.0 / U && v != 1.0) ++violations;
            }
        }
        c.measured = static_cast<double>(violations);
        c.threshold = 0.0;
        c.passed = violations == 0;
        c.detail = "violations on a 10^4-point grid";
    });

    suite.run("cutoff.monotone_transitions", [](CheckOutcome& c) {
        long long violations = 0;
        for (double U : {4.0, 8.0, 16.0, 32.0}) {
            const SmoothCutoff phi(U, 1.0);
            double prev = 0.0;
            for (int i = 1; i <= 10000; ++i) {
                const double v = phi((1.0 / U) * i / 10000.0);
                if (v < prev) ++violations;
                prev = v;
            }
            prev = 1.0;
            for (int i = 0; i < 10000; ++i) {
                const double v = phi(1.0 - 1.0 / U + (1.0 / U) * i / 10000.0);
                if (v > prev) ++violations;
                prev = v;
            }
        }
        c.measured = static_cast<double>(violations);
        c.threshold = 0.0;
        c.passed = violations == 0;
        c.detail = "monotonicity violations";
    });

    suite.run("mellin.decay_u_stability", [](CheckOutcome& c) {
        const std::array<cplx, 4> samples{{{0.5, 10}, {0.5, 30}, {0.5, 100}, {0.5, 300}}};
        double worst = 1.0;
        for (int i = 1; i <= 3; ++i) {
            const double k16 = decay_envelope_check(SmoothCutoff(16, 1), i, samples).ratio;
            const double k32 = decay_envelope_check(SmoothCutoff(32, 1), i, samples).ratio;
            const double r = k32 / k16;
            worst = std::max(worst, std::max(r, 1.0 / r));
        }
        c.measured = worst;
        c.threshold = 2.0;
        c.passed = std::isfinite(worst) && worst < 2.0;
        c.detail = "max factor between K_i(U=32) and K_i(U=16), i = 1..3";
    });

    suite.run("mellin.quadrature_convergence", [](CheckOutcome& c) {
        double worst = 0.0;
        for (double U : {8.0, 16.0, 32.0})
            for (cplx s : {cplx{0.5, 0}, cplx{1, 0}, cplx{2, 0}, cplx{0.5, 10}, cplx{0.5, 100}, cplx{0.5, 300}})
                worst = std::max(worst, mellin_transform(SmoothCutoff(U, 1), s).err);
        c.measured = worst;
        c.threshold = 1e-10;
        c.passed = worst < 1e-10;
        c.detail = "max change under step halving";
    });
}

void moment_checks(Suite& suite) {
    const double T = 1000.0, Y = 30.0;
    QuadParams params;
    params.threads = suite.threads();

    suite.run("moment.holder_consistency", [&](CheckOutcome& c) {
        double worst = 0.0;
        bool ok = true;
        for (auto [m, n] : {std::pair{1.0, 2.0}, std::pair{1.25, 2.0}, std::pair{2.0, 1.5}}) {
            const QuadResult low = integrate_moment({m, T, Y}, params);
            const QuadResult high = integrate_moment({m * n, T, Y}, params);
            const double bound = holder_reduce(m, n, high.value, T);
            const double propagated = bound * high.err / (n * high.value);
            ok = ok && low.value <= bound + 3.0 * (low.err + propagated);
            worst = std::max(worst, low.value / bound);
        }
        c.measured = worst;
        c.threshold = 1.0;
        c.passed = ok;
        c.detail = "max S_m / (T^(1-1/n) S_mn^(1/n))";
    });

    suite.run("moment.trivial_sum", [&](CheckOutcome& c) {
        double worst = 0.0;
        for (double m : {0.5, 1.0, 2.5})
            worst = std::max(worst, std::abs(integrate_moment({m, T, 1.0}, params).value - T) / T);
        c.measured = worst;
        c.threshold = 1e-8;
        c.passed = worst <= 1e-8;
        c.detail = "|S_m(T,1) - T| / T";
    });

    suite.run("moment.nonnegative", [&](CheckOutcome& c) {
        double least = INFINITY;
        for (double m : {0.25, 1.0, 3.0})
            for (double y : {2.0, 7.5, 30.0}) least = std::min(least, integrate_moment({m, T, y}, params).value);
        c.measured = least;
        c.threshold = 0.0;
        c.passed = least >= 0.0;
        c.detail = "min S_m over a small (m, Y) sample";
    });

    suite.run("moment.refinement_convergence", [&](CheckOutcome& c) {
        double worst = 0.0;
        for (double m : {1.0, 2.0, 2.5}) {
            const QuadResult q = integrate_moment({m, T, Y}, params);
            worst = std::max(worst, q.err / q.value);
        }
        c.measured = worst;
        c.threshold = 0.02;
        c.passed = worst < 0.02;
        c.detail = "max |fine - coarse| / fine";
    });

    suite.run("moment.power_mean_ordering", [&](CheckOutcome& c) {
        double prev = 0.0;
        double worst = 0.0;
        bool ok = true;
        for (double m : {0.5, 1.0, 1.5, 2.0, 2.5}) {
            const double norm = std::pow(integrate_moment({m, T, Y}, params).value / T, 1.0 / (2.0 * m));
            ok = ok && norm >= prev * (1.0 - 1e-12);
            worst = std::max(worst, prev / norm);
            prev = norm;
        }
        c.measured = worst;
        c.threshold = 1.0;
        c.passed = ok;
        c.detail = "max ratio of consecutive normalized power means";
    });

    if (suite.full()) {
        suite.run("moment.refinement_acceptance_configs", [&](CheckOutcome& c) {
            double worst = 0.0;
            const QuadResult mv = integrate_moment({1.0, 2000.0, 50.0}, params);
            worst = std::max(worst, mv.err / mv.value);
            for (double t : {1e3, 3e3, 1e4}) {
                const QuadResult q = integrate_moment({2.5, t, std::sqrt(t)}, params);
                worst = std::max(worst, q.err / q.value);
            }
            for (double t : {2000.0, 5000.0}) {
                const QuadResult q = shifted_moment({{2.0}, {0.0}}, t, params);
                worst = std::max(worst, q.err / q.value);
            }
            c.measured = worst;
            c.threshold = 0.02;
            c.passed = worst < 0.02;
            c.detail = "max |fine - coarse| / fine over the acceptance moment configurations";
        });

        suite.run("moment.mean_square", [&](CheckOutcome& c) {
            const QuadResult q = integrate_moment({1.0, 2000.0, 50.0}, params);
            const double ratio = q.value / (2000.0 * 50.0);
            c.measured = ratio;
            c.threshold = 0.1;
            c.passed = std::abs(ratio - 1.0) <= 0.1;
            c.detail = "S_1(2000, 50) / (T Y)";
        });
    }
}

void bounds_checks(Suite& suite) {
    suite.run("g_func.continuity", [&suite](CheckOutcome& c) {
        const EnvelopeFn& g = suite.g();
        double worst = 0.0;
        for (double T : {16.0, 100.0, 500.0, std::exp(10.0), std::exp(100.0)}) {
            const EnvelopeParams p{T};
            const double L = std::log(T);
            worst = std::max(worst, std::abs(g(1.0 / L, p) - L) / L);
            if (T < 700.0) worst = std::max(worst, std::abs(g(std::exp(T), p) - L) / L);
        }
        // The jump at x = 10: left value 1/10 (tie goes to the 1/x case), right log log 10.
        const EnvelopeParams p{std::exp(10.0)};
        const double jump = g(10.0, p) - g(std::nextafter(10.0, 11.0), p);
        const double expected = 0.1 - std::log(std::log(10.0));
        worst = std::max(worst, std::abs(jump - expected));
        worst = std::max(worst, std::abs(g(10.0, p) - 0.1));
        c.measured = worst;
        c.threshold = 1e-9;
        c.passed = worst <= 1e-9;
        c.detail = "branch agreement at 1/log T and e^T, pinned jump at 10";
    });

    suite.run("g_func.maximum", [&suite](CheckOutcome& c) {
        const EnvelopeParams p{std::exp(100.0)};
        double best = suite.g()(0.0, p);
        double arg = 0.0;
        for (int i = -600; i <= 600; ++i) {
            const double x = std::pow(10.0, i / 100.0);
            const double v = suite.g()(x, p);
            if (v > best) {
                best = v;
                arg = x;
            }
        }
        c.measured = best;
        c.threshold = 100.0;
        c.passed = std::abs(best - 100.0) < 1e-12 && arg <= 0.01;
        c.detail = "max g over the grid for log T = 100, attained on the first case";
    });

    suite.run("g_func.positive", [&suite](CheckOutcome& c) {
        double least = INFINITY;
        for (double T : {16.0, std::exp(10.0), std::exp(100.0)}) {
            const EnvelopeParams p{T};
            for (int i = -800; i <= 800; ++i) least = std::min(least, suite.g()(std::pow(10.0, i / 100.0), p));
            least = std::min(least, suite.g()(0.0, p));
        }
        c.measured = least;
        c.threshold = 0.0;
        c.passed = least > 0.0;
        c.detail = "min g over log-spaced x in [1e-8, 1e8]";
    });

    suite.run("bounds.permutation_symmetry", [](CheckOutcome& c) {
        const double T = std::exp(10.0);
        const ShiftConfig cfg{{1.0, 2.0, 0.5}, {0.0, 3.0, -20.0}};
        const ShiftConfig perm{{0.5, 1.0, 2.0}, {-20.0, 0.0, 3.0}};
        const double d1 = std::abs(corollary_rhs(cfg, T) / corollary_rhs(perm, T) - 1.0);
        const double d2 = std::abs(curran_rhs(cfg, T) / curran_rhs(perm, T) - 1.0);
        c.measured = std::max(d1, d2);
        c.threshold = 1e-10;
        c.passed = c.measured <= 1e-10;
        c.detail = "relative change under permutation of (a_j, b_j)";
    });

    suite.run("main_rhs.monotone", [](CheckOutcome& c) {
        long long violations = 0;
        for (double T : {50.0, 100.0, 1000.0, 1e4})
            for (double Y : {2.0, 10.0, 100.0})
                for (double m : {2.5, 3.0, 4.0}) {
                    const double base = main_rhs(m, T, Y);
                    if (main_rhs(m, T * 1.01, Y) <= base) ++violations;
                    if (main_rhs(m, T, Y * 1.01) <= base) ++violations;
                    if (Y * std::pow(std::log(T), 2.0 * (m - 1.0)) > 1.0 && main_rhs(m + 0.01, T, Y) <= base)
                        ++violations;
                }
        c.measured = static_cast<double>(violations);
        c.threshold = 0.0;
        c.passed = violations == 0;
        c.detail = "finite-difference monotonicity violations";
    });
}

void perron_checks(Suite& suite) {
    std::vector<PerronConfig> configs{{10.5, 0.0}, {10.5, 5.0}};
    if (suite.full()) configs = {{10.5, 0}, {10.5, 5}, {10.5, 20}, {100.5, 0}, {100.5, 5}, {100.5, 20}};
    PerronParams params;
    params.threads = suite.threads();

    suite.run("perron.contour_identity", [&](CheckOutcome& c) {
        double worst = 0.0;
        for (const auto& cfg : configs) {
            const EvalResult v = truncated_vertical(cfg, params);
            const ContourPieces legs = contour_decomposition(cfg, params);
            worst = std::max(worst, std::abs(legs.total() - v.value) / (3.0 * (legs.err + v.err)));
        }
        c.measured = worst;
        c.threshold = 1.0;
        c.passed = worst <= 1.0;
        c.detail = "max |legs + residue - vertical| / (3 x combined err)";
    });

    suite.run("perron.residual_envelope", [&](CheckOutcome& c) {
        double worst = 0.0;
        for (const auto& cfg : configs) worst = std::max(worst, perron_residual(cfg, params).ratio);
        c.measured = worst;
        c.threshold = 10.0;
        c.passed = worst <= 10.0;
        c.detail = "max |direct - truncated| / (r1 + r2)";
    });

    suite.run("perron.conjugate_symmetry", [&](CheckOutcome& c) {
        double worst = 0.0;
        for (const auto& cfg : configs) {
            if (cfg.t == 0.0) continue;
            const ContourPieces a = contour_decomposition(cfg, params);
            const ContourPieces b = contour_decomposition({cfg.Y, -cfg.t}, params);
            const double allowed = a.err + b.err;
            worst = std::max(worst, std::abs(b.horiz_lower - std::conj(a.horiz_upper)) / allowed);
            worst = std::max(worst, std::abs(b.vertical_half - std::conj(a.vertical_half)) / allowed);
            worst = std::max(worst, std::abs(b.residue - std::conj(a.residue)) / allowed);
        }
        c.measured = worst;
        c.threshold = 1.0;
        c.passed = worst <= 1.0;
        c.detail = "legs at -t against conjugated legs at t";
    });

    suite.run("perron.remainder_regression", [](CheckOutcome& c) {
        double worst = 0.0;
        for (const auto& p : kPinnedRemainders) {
            worst = std::max(worst, std::abs(r1_bound({p.Y, 0.0}) / p.r1 - 1.0));
            worst = std::max(worst, std::abs(r2_bound({p.Y, 0.0}) / p.r2 - 1.0));
        }
        c.measured = worst;
        c.threshold = 1e-12;
        c.passed = worst <= 1e-12;
        c.detail = "relative deviation from pinned r1, r2";
    });
}

}  // namespace

std::vector<CheckOutcome> verify_checks(const VerifyOptions& options) {
    require(options.suite == "fast" || options.suite == "full", "verify: suite must be fast or full");
    std::vector<CheckOutcome> out;
    Suite suite(options, out);
    suite.set_envelope(options.envelope ? options.envelope : EnvelopeFn(g_func));
    zeta_checks(suite);
    dirichlet_checks(suite);
    smoothing_checks(suite);
    moment_checks(suite);
    bounds_checks(suite);
    perron_checks(suite);
    return out;
}

RunRecord run_verify(const VerifyOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    RunRecord record;
    record.command = "verify";
    record.config = {{"suite", options.suite}};
    record.columns = {"check", "passed", "measured", "threshold", "detail"};
    long long passed = 0;
    for (const CheckOutcome& c : verify_checks(options)) {
        record.rows.push_back({c.name, c.passed, c.measured, c.threshold, c.detail});
        if (c.passed)
            ++passed;
        else if (!record.failure)
            record.failure = c.name;
    }
    record.summary.emplace_back("checks", static_cast<long long>(record.rows.size()));
    record.summary.emplace_back("passed", passed);
    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

}  // namespace zetalab
