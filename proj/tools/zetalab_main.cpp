#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zetalab/bounds.hpp"
#include "zetalab/dirichlet_sums.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/experiments.hpp"
#include "zetalab/moments.hpp"
#include "zetalab/perron.hpp"
#include "zetalab/smoothing.hpp"
#include "zetalab/zeta_eval.hpp"

namespace zl = zetalab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitInvariant = 3;

// Desk-scale caps, lifted by --unsafe-scale.
constexpr double kCapT = 1e5;
constexpr double kCapY = 1e4;
constexpr double kCapEvaluations = 1e7;

struct Options {
    // shared
    std::string precision = "double";
    bool deterministic = false;
    std::string format = "csv";
    std::string out;
    unsigned threads = 0;
    bool unsafe_scale = false;
    double tol = 0.0;

    // numeric parameters
    double T = 1000.0;
    double Y = 10.0;
    double m = 1.0;
    double E = 10.0;
    double U = 0.0;
    double C_exp = 1.0;
    double dt = 0.0;
    double sigma = 0.5;
    double t = 0.0;
    double epsilon = 0.05;
    std::size_t count = 1;
    int sign = 1;
    bool hardy = false;
    std::vector<double> a, b, tau, T_list;
    std::string Y_rule = "sqrt(T)";
    std::string suite = "fast";
    std::string inject_fault;
};

std::string num(double x) { return zl::format_number(x); }

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
    return s;
}

void cap(bool ok, const Options& o, const std::string& what) {
    if (!ok && !o.unsafe_scale) throw zl::CapacityError(what + " exceeds the desk-scale cap (use --unsafe-scale)");
}

void cap_T(double T, const Options& o) { cap(T <= kCapT, o, "T = " + num(T)); }
void cap_Y(double Y, const Options& o) { cap(Y <= kCapY, o, "Y = " + num(Y)); }
void cap_evaluations(double n, const Options& o) {
    cap(n <= kCapEvaluations, o, num(std::ceil(n)) + " grid evaluations");
}

void standard_precision_only(const Options& o, const std::string& command) {
    if (zl::parse_precision(o.precision) != zl::Precision::standard)
        throw zl::ParameterError(command + ": extended precision applies to the zeta command only");
}

zl::RunRecord run_zeta(const Options& o) {
    const zl::Precision precision = zl::parse_precision(o.precision);
    const double tol = o.tol > 0.0 ? o.tol : (o.hardy ? 1e-10 : 1e-12);
    zl::require(o.count >= 1, "zeta: count must be >= 1");
    cap_evaluations(static_cast<double>(o.count), o);
    zl::RunRecord r;
    r.command = "zeta";
    r.precision = precision;
    r.config = {{"sigma", num(o.sigma)}, {"t", num(o.t)}, {"count", std::to_string(o.count)},
                {"dt", num(o.dt)}, {"tol", num(tol)}, {"hardy", o.hardy ? "true" : "false"}};
    r.columns = {"sigma", "t", "re", "im", "abs", "err"};
    for (std::size_t k = 0; k < o.count; ++k) {
        const double t = o.t + static_cast<double>(k) * o.dt;
        const zl::EvalResult z =
            o.hardy ? zl::hardy_z(t, tol, precision) : zl::eval_zeta({o.sigma, t}, tol, precision);
        r.rows.push_back({o.hardy ? 0.5 : o.sigma, t, z.value.real(), z.value.imag(), std::abs(z.value), z.err});
    }
    return r;
}

zl::RunRecord run_zsum(const Options& o) {
    standard_precision_only(o, "zsum");
    cap_Y(o.Y, o);
    zl::require(o.count >= 1, "zsum: count must be >= 1");
    cap_evaluations(static_cast<double>(o.count), o);
    zl::RunRecord r;
    r.command = "zsum";
    r.config = {{"Y", num(o.Y)}, {"t", num(o.t)}, {"count", std::to_string(o.count)}, {"dt", num(o.dt)},
                {"U", num(o.U)}, {"C_exp", num(o.C_exp)}};
    r.columns = {"t", "re", "im", "abs"};
    std::vector<zl::cplx> values;
    std::vector<double> ts;
    if (o.U > 0.0) {
        const zl::SmoothCutoff phi(o.U, o.C_exp);
        for (std::size_t k = 0; k < o.count; ++k) {
            ts.push_back(o.t + static_cast<double>(k) * o.dt);
            values.push_back(zl::zsum_smoothed(o.Y, ts.back(), phi));
        }
    } else if (o.count == 1) {
        ts.push_back(o.t);
        values.push_back(zl::zsum_direct({o.Y, o.t}));
    } else {
        const zl::Grid grid{o.t, o.dt, o.count};
        values = zl::zsum_batch(o.Y, grid, o.threads);
        for (std::size_t k = 0; k < o.count; ++k) ts.push_back(grid.at(k));
    }
    for (std::size_t k = 0; k < values.size(); ++k)
        r.rows.push_back({ts[k], values[k].real(), values[k].imag(), std::abs(values[k])});
    return r;
}

zl::RunRecord run_moment(const Options& o) {
    standard_precision_only(o, "moment");
    cap_T(o.T, o);
    cap_Y(o.Y, o);
    zl::MomentSpec spec{o.m, o.T, o.Y};
    spec.epsilon = o.epsilon;
    if (o.U > 0.0) {
        spec.variant = zl::Variant::smoothed;
        spec.U = o.U;
        spec.C_exponent = o.C_exp;
    }
    zl::validate(spec);
    const double dt = o.dt > 0.0 ? o.dt : zl::max_moment_step(o.Y);
    cap_evaluations(o.T / dt + 1.0, o);
    zl::QuadParams params;
    params.dt = o.dt;
    params.threads = o.threads;
    const zl::QuadResult q = zl::integrate_moment(spec, params);
    const double rhs = zl::main_rhs(o.m, o.T, o.Y);
    zl::RunRecord r;
    r.command = "moment";
    r.config = {{"m", num(o.m)}, {"T", num(o.T)}, {"Y", num(o.Y)}, {"U", num(o.U)},
                {"C_exp", num(o.C_exp)}, {"dt", num(o.dt)}, {"epsilon", num(o.epsilon)}};
    r.columns = {"m", "T", "Y", "variant", "S_m", "S_m_err", "S_m_coarse", "dt", "panels", "rhs", "ratio"};
    r.rows.push_back({o.m, o.T, o.Y, std::string(o.U > 0.0 ? "smoothed" : "sharp"), q.value, q.err, q.coarse,
                      q.dt, static_cast<long long>(q.panels), rhs, q.value / rhs});
    r.summary.emplace_back("theorem_scope", o.m > 2.0);
    return r;
}

zl::RunRecord run_shifted(const Options& o) {
    standard_precision_only(o, "shifted");
    cap_T(o.T, o);
    const zl::ShiftConfig cfg{o.a, o.b};
    zl::validate(cfg, o.T, o.epsilon);
    const double dt = o.dt > 0.0 ? o.dt : zl::max_zeta_step(2.0 * o.T + 1.0);
    cap_evaluations(o.T / dt * static_cast<double>(cfg.a.size()), o);
    zl::QuadParams params;
    params.dt = o.dt;
    params.threads = o.threads;
    if (o.tol > 0.0) params.zeta_tol = o.tol;
    const zl::QuadResult q =
        o.sigma == 0.5 ? zl::shifted_moment(cfg, o.T, params) : zl::sigma_moment(cfg, o.sigma, o.T, params);
    zl::RunRecord r;
    r.command = "shifted";
    r.config = {{"a", join(o.a)}, {"b", join(o.b)}, {"T", num(o.T)}, {"sigma", num(o.sigma)},
                {"dt", num(o.dt)}, {"tol", num(params.zeta_tol)}, {"epsilon", num(o.epsilon)}};
    r.columns = {"T", "sigma", "value", "err", "dt", "corollary_rhs", "curran_rhs"};
    const bool critical = o.sigma == 0.5;
    r.rows.push_back({o.T, o.sigma, q.value, q.err, q.dt,
                      critical ? zl::corollary_rhs(cfg, o.T) : std::nan(""),
                      critical ? zl::curran_rhs(cfg, o.T) : std::nan("")});
    if (!critical) r.summary.emplace_back("trivial_bound", zl::trivial_sigma_bound(cfg, o.sigma, o.T));
    return r;
}

zl::RunRecord run_window(const Options& o) {
    standard_precision_only(o, "window");
    cap_T(o.T, o);
    const double dt = o.dt > 0.0 ? o.dt : zl::max_zeta_step(2.0 * o.T + o.E);
    cap_evaluations(o.T / dt * (o.E / 0.1), o);
    zl::QuadParams params;
    params.dt = o.dt;
    params.threads = o.threads;
    if (o.tol > 0.0) params.zeta_tol = o.tol;
    const zl::QuadResult q = zl::window_moment(o.m, o.T, o.E, o.sign, params);
    const zl::Prop24Terms terms = zl::prop24_terms(o.m, o.T, o.E);
    zl::RunRecord r;
    r.command = "window";
    r.config = {{"m", num(o.m)}, {"T", num(o.T)}, {"E", num(o.E)}, {"sign", std::to_string(o.sign)},
                {"dt", num(o.dt)}, {"tol", num(params.zeta_tol)}};
    r.columns = {"m", "T", "E", "sign", "value", "err", "dt", "rhs_first", "rhs_second", "rhs", "ratio"};
    r.rows.push_back({o.m, o.T, o.E, static_cast<long long>(o.sign), q.value, q.err, q.dt, terms.first,
                      terms.second, terms.total(), q.value / terms.total()});
    return r;
}

zl::RunRecord run_perron(const Options& o) {
    standard_precision_only(o, "perron");
    cap_Y(o.Y, o);
    const zl::PerronConfig cfg{o.Y, o.t};
    zl::validate(cfg);
    zl::PerronParams params;
    params.ds = o.dt;
    params.threads = o.threads;
    if (o.tol > 0.0) params.zeta_tol = o.tol;
    const double ds = o.dt > 0.0 ? o.dt : zl::default_perron_step(o.Y);
    cap_evaluations(4.0 * o.Y / ds, o);
    const zl::EvalResult v = zl::truncated_vertical(cfg, params);
    const zl::ContourPieces legs = zl::contour_decomposition(cfg, params);
    const zl::cplx direct = zl::zsum_direct({o.Y, o.t});
    const zl::BoundReport residual = zl::make_report(std::abs(direct - v.value), legs.r1 + legs.r2, "");
    zl::RunRecord r;
    r.command = "perron";
    r.config = {{"Y", num(o.Y)}, {"t", num(o.t)}, {"dt", num(o.dt)}, {"tol", num(params.zeta_tol)}};
    r.columns = {"quantity", "re", "im", "err"};
    auto row = [&](const std::string& name, zl::cplx z, double err) {
        r.rows.push_back({name, z.real(), z.imag(), err});
    };
    row("direct", direct, 0.0);
    row("truncated_vertical", v.value, v.err);
    row("horiz_lower", legs.horiz_lower, std::nan(""));
    row("vertical_half", legs.vertical_half, std::nan(""));
    row("horiz_upper", legs.horiz_upper, std::nan(""));
    row("residue", legs.residue, 0.0);
    row("legs_total", legs.total(), legs.err);
    const double identity_gap = std::abs(legs.total() - v.value);
    r.summary.emplace_back("c", zl::perron_abscissa(o.Y));
    r.summary.emplace_back("r1", legs.r1);
    r.summary.emplace_back("r2", legs.r2);
    r.summary.emplace_back("residual", residual.lhs);
    r.summary.emplace_back("residual_ratio", residual.ratio);
    r.summary.emplace_back("identity_gap", identity_gap);
    r.summary.emplace_back("identity_tolerance", 3.0 * (legs.err + v.err));
    return r;
}

zl::RunRecord run_smooth(const Options& o) {
    standard_precision_only(o, "smooth");
    const double U = o.U > 0.0 ? o.U : 16.0;
    const zl::SmoothCutoff phi(U, o.C_exp);
    std::vector<double> tau = o.tau.empty() ? std::vector<double>{10, 30, 100, 300} : o.tau;
    const double tol = o.tol > 0.0 ? o.tol : 1e-13;
    zl::RunRecord r;
    r.command = "smooth";
    r.config = {{"U", num(U)}, {"C_exp", num(o.C_exp)}, {"sigma", num(o.sigma)}, {"tau", join(tau)},
                {"tol", num(tol)}};
    r.columns = {"sigma", "tau", "re", "im", "abs", "err"};
    std::vector<zl::cplx> samples;
    for (double t : tau) {
        const zl::cplx s{o.sigma, t};
        samples.push_back(s);
        const zl::MellinValue v = zl::mellin_transform(phi, s, tol);
        r.rows.push_back({o.sigma, t, v.value.real(), v.value.imag(), std::abs(v.value), v.err});
    }
    for (int i = 1; i <= 4; ++i)
        r.summary.emplace_back("K" + std::to_string(i), zl::decay_envelope_check(phi, i, samples).ratio);
    if (o.Y >= 1.0) r.summary.emplace_back("diff_mass", zl::diff_mass(o.Y, phi));
    return r;
}

zl::RunRecord run_scaling_cmd(const Options& o) {
    standard_precision_only(o, "scaling");
    if (o.T_list.empty()) throw zl::ParameterError("scaling: --T-list is empty");
    double evaluations = 0.0;
    for (double T : o.T_list) {
        cap_T(T, o);
        const double Y = zl::apply_y_rule(o.Y_rule, T);
        cap_Y(Y, o);
        evaluations += T / (o.dt > 0.0 ? o.dt : zl::max_moment_step(Y)) + 1.0;
    }
    cap_evaluations(evaluations, o);
    zl::ScalingOptions s;
    s.m = o.m;
    s.T_list = o.T_list;
    s.Y_rule = o.Y_rule;
    s.epsilon = o.epsilon;
    s.dt = o.dt;
    s.threads = o.threads;
    return zl::run_scaling(s);
}

zl::RunRecord run_verify_cmd(const Options& o) {
    standard_precision_only(o, "verify");
    zl::VerifyOptions v;
    v.suite = o.suite;
    v.threads = o.threads;
    if (o.inject_fault == "g-branch-order")
        v.envelope = zl::g_func_reversed;
    else if (!o.inject_fault.empty())
        throw zl::ParameterError("unknown fault: " + o.inject_fault);
    zl::RunRecord r = zl::run_verify(v);
    if (!o.inject_fault.empty()) r.config.emplace_back("inject_fault", o.inject_fault);
    return r;
}

// Turns key=value lines into flags placed before the command-line ones, so
// flags given explicitly win under the take-last policy.
std::vector<std::string> config_file_args(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw zl::IoError("cannot read config file: " + path);
    std::vector<std::string> args;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw zl::ParameterError(path + ":" + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw zl::ParameterError(path + ":" + std::to_string(lineno) + ": empty key");
        if (value == "true" || value == "false") {
            if (value == "true") args.push_back("--" + key);
            continue;
        }
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

// Pulls "--config PATH" / "--config=PATH" out of the argument list.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string path;
        std::size_t width = 0;
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            width = 2;
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            width = 1;
        } else {
            continue;
        }
        args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i + width));
        // Insert right after the subcommand name, which must come first.
        const std::vector<std::string> extra = config_file_args(path);
        const std::size_t at = args.empty() ? 0 : 1;
        args.insert(args.begin() + static_cast<long>(at), extra.begin(), extra.end());
        return args;
    }
    return args;
}

unsigned env_threads() {
    const char* env = std::getenv("ZETALAB_THREADS");
    if (!env || !*env) return 0;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 0) throw zl::ParameterError("ZETALAB_THREADS must be a non-negative integer");
    return static_cast<unsigned>(v);
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"zetalab: numerical experiments on moments of zeta sums"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(zl::kVersion));
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::map<std::string, std::function<zl::RunRecord(const Options&)>> runners;

    auto shared = [&](CLI::App* sub) {
        sub->add_option("--precision", o.precision, "double or extended")
            ->check(CLI::IsMember({"double", "extended"}));
        sub->add_flag("--deterministic", o.deterministic, "omit wall time; byte-identical output");
        sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", o.out, "output path (default stdout)");
        sub->add_option("--threads", o.threads, "worker threads (0 = hardware)");
        sub->add_flag("--unsafe-scale", o.unsafe_scale, "lift the desk-scale caps");
        sub->add_option("--config", "key=value file; flags override it");
    };
    auto add = [&](const std::string& name, const std::string& help, auto runner) {
        CLI::App* sub = app.add_subcommand(name, help);
        shared(sub);
        runners[name] = runner;
        return sub;
    };
    auto delimited = [](CLI::Option* opt) {
        opt->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    };

    auto* zeta = add("zeta", "zeta(sigma + it) or Hardy's Z(t)", run_zeta);
    zeta->add_option("--sigma", o.sigma);
    zeta->add_option("--t", o.t);
    zeta->add_option("--count", o.count, "number of points t, t+dt, ...");
    zeta->add_option("--dt", o.dt);
    zeta->add_option("--tol", o.tol);
    zeta->add_flag("--hardy", o.hardy);

    auto* zsum = add("zsum", "sum of n^(-it) over n <= Y", run_zsum);
    zsum->add_option("--Y", o.Y);
    zsum->add_option("--t", o.t);
    zsum->add_option("--count", o.count);
    zsum->add_option("--dt", o.dt);
    zsum->add_option("--U", o.U, "smooth cutoff parameter; 0 = sharp");
    zsum->add_option("--C-exp", o.C_exp);

    auto* moment = add("moment", "S_m(T, Y), sharp or smoothed", run_moment);
    moment->add_option("--m", o.m);
    moment->add_option("--T", o.T);
    moment->add_option("--Y", o.Y);
    moment->add_option("--U", o.U, "smooth cutoff parameter; 0 = sharp");
    moment->add_option("--C-exp", o.C_exp);
    moment->add_option("--dt", o.dt);
    moment->add_option("--epsilon", o.epsilon);

    auto* shifted = add("shifted", "integral of a product of shifted |zeta|^a_j", run_shifted);
    delimited(shifted->add_option("--a", o.a, "exponents, comma separated")->required());
    delimited(shifted->add_option("--b", o.b, "shifts, comma separated")->required());
    shifted->add_option("--T", o.T);
    shifted->add_option("--sigma", o.sigma);
    shifted->add_option("--dt", o.dt);
    shifted->add_option("--tol", o.tol);
    shifted->add_option("--epsilon", o.epsilon);

    auto* window = add("window", "windowed moment of |zeta| averages", run_window);
    window->add_option("--m", o.m);
    window->add_option("--T", o.T);
    window->add_option("--E", o.E);
    window->add_option("--sign", o.sign)->check(CLI::IsMember({-1, 1}));
    window->add_option("--dt", o.dt);
    window->add_option("--tol", o.tol);

    auto* perron = add("perron", "truncated Perron integral and its contour legs", run_perron);
    perron->add_option("--Y", o.Y);
    perron->add_option("--t", o.t);
    perron->add_option("--dt", o.dt, "contour step");
    perron->add_option("--tol", o.tol);

    auto* smooth = add("smooth", "Mellin transform of the smooth cutoff", run_smooth);
    smooth->add_option("--U", o.U);
    smooth->add_option("--C-exp", o.C_exp);
    smooth->add_option("--sigma", o.sigma);
    delimited(smooth->add_option("--tau", o.tau, "ordinates, comma separated"));
    smooth->add_option("--Y", o.Y, "also report the cutoff mass near the ends");
    smooth->add_option("--tol", o.tol);

    auto* scaling = add("scaling", "S_m against T Y^m (log T)^((m-1)^2)", run_scaling_cmd);
    scaling->add_option("--m", o.m);
    delimited(scaling->add_option("--T-list", o.T_list, "comma separated")->required());
    scaling->add_option("--Y-rule", o.Y_rule);
    scaling->add_option("--epsilon", o.epsilon);
    scaling->add_option("--dt", o.dt);

    auto* verify = add("verify", "run the invariant suite", run_verify_cmd);
    verify->add_option("--suite", o.suite)->check(CLI::IsMember({"fast", "full"}));
    verify->add_option("--inject-fault", o.inject_fault)->group("");

    try {
        o.threads = env_threads();
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    } catch (const zl::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const zl::Format format = zl::parse_format(o.format);
        const auto start = std::chrono::steady_clock::now();
        zl::RunRecord record = runners.at(command)(o);
        record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        record.deterministic = o.deterministic;
        if (record.precision == zl::Precision::standard) record.precision = zl::parse_precision(o.precision);
        zl::emit(record, format, o.out);
        if (record.failure) {
            std::cerr << (command == "verify" ? "invariant violated: " : "run stopped: ") << *record.failure
                      << "\n";
            return command == "verify" ? kExitInvariant : kExitNumerical;
        }
        return kExitOk;
    } catch (const zl::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const zl::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const zl::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
