// Runs every acceptance criterion and prints one PASS/FAIL line for each.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "zetalab/bounds.hpp"
#include "zetalab/dirichlet_sums.hpp"
#include "zetalab/experiments.hpp"
#include "zetalab/moments.hpp"
#include "zetalab/perron.hpp"
#include "zetalab/smoothing.hpp"
#include "zetalab/zeta_eval.hpp"

#ifndef ZETALAB_CLI_PATH
#error "ZETALAB_CLI_PATH must name the zetalab executable"
#endif

using namespace zetalab;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double time_limit, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit > 0.0 && secs > time_limit) {
        o.passed = false;
        o.detail += "; over the time limit";
    }
    if (!o.passed) ++failures;
    std::printf("%s  %2d %-28s %s [%.1fs]\n", o.passed ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

std::string run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + ZETALAB_CLI_PATH + "\" " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("cannot start " + cmd);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    if (status != 0) throw std::runtime_error("'" + args + "' exited with status " + std::to_string(status));
    return out;
}

}  // namespace

int main() {
    const unsigned threads = 0;

    criterion(1, "kernel oracle equivalence", 60.0, [&] {
        double worst = 0.0;
        const Grid grid{1000.0, 1.0, 1000};
        for (double Y : {1e2, 1e3, 1e4}) {
            const std::vector<cplx> batch = zsum_batch(Y, grid, threads);
            for (std::size_t k = 0; k < grid.count; ++k) {
                const cplx d = zsum_direct({Y, grid.at(k)});
                worst = std::max(worst, std::abs(batch[k] - d) / std::abs(d));
            }
        }
        return Outcome{worst <= 1e-9, "max relative deviation " + fmt(worst) + " (limit 1e-09)"};
    });

    criterion(2, "zeta self-validation", 60.0, [&] {
        double im = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double t = 10.0 + 990.0 * i / 199.0;
            im = std::max(im, std::abs(hardy_z(t).value.imag()));
        }
        const std::array<std::pair<double, double>, 20> pts{{{0.5, 0},     {0.5, 1},   {0.5, 5},
                                                             {0.5, 14.134725141734693}, {0.5, 21},
                                                             {0.5, 37.5},  {0.5, 60},  {0.5, 99.25},
                                                             {0.6, 3},     {0.75, 10}, {0.75, 50},
                                                             {0.9, 7},     {1.1, 0},   {1.25, 20},
                                                             {1.5, 2},     {1.5, 80},  {2, 0},
                                                             {2, 33},      {3, 12},    {4.5, 90}}};
        double dev = 0.0;
        for (const auto& [s, t] : pts)
            dev = std::max(dev, std::abs(eval_zeta({s, t}).value - oracle::zeta_eta(s, t)));
        return Outcome{im <= 1e-8 && dev <= 1e-9,
                       "max |Im Z| " + fmt(im) + " (limit 1e-08), max oracle deviation " + fmt(dev) + " (limit 1e-09)"};
    });

    criterion(3, "mean-value check", 120.0, [&] {
        QuadParams p;
        p.threads = threads;
        const QuadResult a = integrate_moment({1.0, 2000.0, 50.0}, p);
        const QuadResult b = integrate_moment({1.0, 1000.0, 50.0}, p);
        const double ra = a.value / (2000.0 * 50.0), rb = b.value / (1000.0 * 50.0);
        const double refine = std::max(a.err / a.value, b.err / b.value);
        const bool ok = ra >= 0.9 && ra <= 1.1 && rb >= 0.9 && rb <= 1.1 && refine < 0.02;
        return Outcome{ok, "S_1(2000,50)/(2000*50) " + fmt(ra) + ", S_1(1000,50)/(1000*50) " + fmt(rb) +
                               ", refinement " + fmt(refine) + "; literal S_1(2000,50)/(1000*50) " +
                               fmt(a.value / (1000.0 * 50.0)) + " (info)"};
    });

    criterion(4, "second-moment growth", 300.0, [&] {
        QuadParams p;
        p.threads = threads;
        std::ostringstream d;
        bool ok = true;
        for (double T : {2000.0, 5000.0}) {
            const QuadResult q = shifted_moment({{2.0}, {0.0}}, T, p);
            const double mean = q.value / T;
            const double target = std::log(T * std::sqrt(2.0));
            // Mean of log(t/2pi) + 2 gamma over [T, 2T] from the classical mean square.
            const double classical = std::log(2.0 * T / std::numbers::pi) + 2.0 * std::numbers::egamma - 1.0;
            const double rel = std::abs(mean / target - 1.0);
            ok = ok && rel <= 0.2 && q.err / q.value < 0.02;
            d << "T=" << T << ": mean " << fmt(mean) << " vs log(T sqrt 2) " << fmt(target) << " (rel " << fmt(rel)
              << ", classical " << fmt(classical) << ") ";
        }
        return Outcome{ok, d.str()};
    });

    const std::array<PerronConfig, 6> perron_sample{
        {{10.5, 0}, {10.5, 5}, {10.5, 20}, {100.5, 0}, {100.5, 5}, {100.5, 20}}};
    PerronParams pp;
    pp.threads = threads;

    criterion(5, "Perron residual", 120.0, [&] {
        double worst = 0.0;
        for (const auto& cfg : perron_sample) worst = std::max(worst, perron_residual(cfg, pp).ratio);
        return Outcome{worst <= 10.0, "max |direct - truncated|/(r1+r2) " + fmt(worst) + " (limit 10)"};
    });

    criterion(6, "contour identity", 120.0, [&] {
        double worst = 0.0;
        for (const auto& cfg : perron_sample) {
            const EvalResult v = truncated_vertical(cfg, pp);
            const ContourPieces legs = contour_decomposition(cfg, pp);
            worst = std::max(worst, std::abs(legs.total() - v.value) / (3.0 * (legs.err + v.err)));
        }
        return Outcome{worst <= 1.0, "max |legs + residue - vertical| / (3 x err) " + fmt(worst) + " (limit 1)"};
    });

    criterion(7, "Mellin decay", 60.0, [&] {
        const std::array<cplx, 4> samples{{{0.5, 10}, {0.5, 30}, {0.5, 100}, {0.5, 300}}};
        std::ostringstream d;
        bool ok = true;
        for (int i = 1; i <= 3; ++i) {
            const double k16 = decay_envelope_check(SmoothCutoff(16, 1), i, samples).ratio;
            const double k32 = decay_envelope_check(SmoothCutoff(32, 1), i, samples).ratio;
            const double r = k32 / k16;
            ok = ok && std::isfinite(k16) && std::isfinite(k32) && r >= 0.4 && r <= 2.5;
            d << "K" << i << " " << fmt(k16) << " -> " << fmt(k32) << " (ratio " << fmt(r) << ") ";
        }
        return Outcome{ok, d.str()};
    });

    criterion(8, "Hoelder consistency", 120.0, [&] {
        QuadParams p;
        p.threads = threads;
        std::ostringstream d;
        bool ok = true;
        for (auto [m, n] : {std::pair{1.0, 2.0}, std::pair{1.25, 2.0}}) {
            const double sm = integrate_moment({m, 1000.0, 30.0}, p).value;
            const double smn = integrate_moment({m * n, 1000.0, 30.0}, p).value;
            const double bound = holder_reduce(m, n, smn, 1000.0);
            ok = ok && sm <= bound * 1.05;
            d << "(m,n)=(" << m << "," << n << "): S_m/bound " << fmt(sm / bound) << " ";
        }
        return Outcome{ok, d.str()};
    });

    criterion(9, "scaling sanity", 900.0, [&] {
        ScalingOptions o;
        o.m = 2.5;
        o.T_list = {1e3, 3e3, 1e4};
        o.Y_rule = "sqrt(T)";
        o.threads = threads;
        const RunRecord r = run_scaling(o);
        if (r.failure || r.rows.size() != 3) return Outcome{false, "scaling run incomplete"};
        std::vector<double> ratios;
        for (const auto& row : r.rows) ratios.push_back(std::get<double>(row[6]));
        const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
        const double spread = *hi / *lo;
        const bool increasing = ratios[0] < ratios[1] && ratios[1] < ratios[2];
        const double growth = ratios[2] / ratios[0];
        double slope = std::nan("");
        for (const auto& [k, v] : r.summary)
            if (k == "fit_slope") slope = std::get<double>(v);
        const bool ok = spread < 5.0 && !(increasing && growth > 1.5);
        return Outcome{ok, "ratios " + fmt(ratios[0]) + ", " + fmt(ratios[1]) + ", " + fmt(ratios[2]) +
                               "; spread " + fmt(spread) + " (limit 5), last/first " + fmt(growth) +
                               "; fitted slope " + fmt(slope) + " (reported)"};
    });

    criterion(10, "g pinned values", 10.0, [&] {
        const EnvelopeParams p{std::exp(100.0)};
        double dev = 0.0;
        dev = std::max(dev, std::abs(g_func(0.005, p) - 100.0));
        dev = std::max(dev, std::abs(g_func(2.0, p) - 0.5));
        dev = std::max(dev, std::abs(g_func(100.0, p) - std::log(std::log(100.0))));
        double cont = 0.0;
        for (double T : {16.0, 100.0, 600.0}) {
            const EnvelopeParams q{T};
            const double L = std::log(T);
            cont = std::max(cont, std::abs(g_func(1.0 / L, q) - L));
            cont = std::max(cont, std::abs(g_func(std::exp(T), q) - L));
        }
        const double jump = g_func(10.0, p) - g_func(std::nextafter(10.0, 11.0), p);
        const double jump_dev = std::abs(jump - (0.1 - std::log(std::log(10.0))));
        const bool ok = dev <= 1e-12 && cont == 0.0 && jump_dev <= 1e-9;
        return Outcome{ok, "branch deviation " + fmt(dev) + ", continuity gap " + fmt(cont) + ", jump " +
                               std::to_string(jump) + " (deviation " + fmt(jump_dev) + ")"};
    });

    criterion(11, "determinism", 600.0, [&] {
        const std::string args = "scaling --m 2.5 --T-list 1000,3000,10000 --Y-rule 'sqrt(T)' --deterministic";
        const std::string a = run_cli(args + " --threads 1");
        const std::string b = run_cli(args + " --threads 4");
        const std::string c = run_cli(args + " --threads 3 --format csv");
        const bool ok = !a.empty() && a == b && b == c;
        return Outcome{ok, std::to_string(a.size()) + " bytes, outputs for 1, 4 and 3 threads " +
                               (ok ? "identical" : "differ")};
    });

    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
