#include <chrono>
#include <cmath>
#include <regex>
#include <sstream>

#include "zetalab/errors.hpp"
#include "zetalab/experiments.hpp"
#include "zetalab/moments.hpp"

namespace zetalab {

namespace {

double parse_number(const std::string& s, const std::string& rule) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParameterError("Y rule: cannot parse '" + rule + "'");
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + format_number(xs[i]);
    return out;
}

}  // namespace

double apply_y_rule(const std::string& rule, double T) {
    std::string r;
    for (char c : rule)
        if (!std::isspace(static_cast<unsigned char>(c))) r += c;
    static const std::regex power(R"(T\^([-+0-9.eE]+))");
    static const std::regex scaled(R"(([-+0-9.eE]+)\*(T|sqrt\(T\)))");
    std::smatch match;
    if (r == "T") return T;
    if (r == "sqrt(T)") return std::sqrt(T);
    if (r == "log(T)") return std::log(T);
    if (std::regex_match(r, match, power)) return std::pow(T, parse_number(match[1], rule));
    if (std::regex_match(r, match, scaled)) {
        const double c = parse_number(match[1], rule);
        return c * (match[2] == "T" ? T : std::sqrt(T));
    }
    return parse_number(r, rule);
}

RunRecord run_scaling(const ScalingOptions& options) {
    require(!options.T_list.empty(), "scaling: T list is empty");
    require(std::isfinite(options.m) && options.m > 0.0, "scaling: m must be positive");
    const auto start = std::chrono::steady_clock::now();

    RunRecord record;
    record.command = "scaling";
    record.config = {{"m", format_number(options.m)},
                     {"T_list", join(options.T_list)},
                     {"Y_rule", options.Y_rule},
                     {"epsilon", format_number(options.epsilon)},
                     {"dt", format_number(options.dt)}};
    record.columns = {"T", "Y", "m", "S_m", "S_m_err", "rhs", "ratio", "dt"};

    // Validate every point before spending time on any integral.
    std::vector<MomentSpec> specs;
    for (double T : options.T_list) {
        MomentSpec spec{options.m, T, apply_y_rule(options.Y_rule, T)};
        spec.epsilon = options.epsilon;
        validate(spec);
        check_bound_range(spec);
        specs.push_back(spec);
    }

    std::vector<std::pair<double, double>> fit_points;
    for (const MomentSpec& spec : specs) {
        QuadParams params;
        params.dt = options.dt;
        params.threads = options.threads;
        QuadResult q;
        try {
            q = integrate_moment(spec, params);
        } catch (const NumericalFailure& e) {
            record.failure = "T=" + format_number(spec.T) + ": " + e.what();
            break;
        }
        const double rhs = main_rhs(spec.m, spec.T, spec.Y);
        record.rows.push_back({spec.T, spec.Y, spec.m, q.value, q.err, rhs, q.value / rhs, q.dt});
        fit_points.emplace_back(std::log(std::log(spec.T)),
                                std::log(q.value / (spec.T * std::pow(spec.Y, spec.m))));
    }

    record.summary.emplace_back("theorem_scope", options.m > 2.0);
    if (fit_points.size() >= 3) {
        const FitResult fit = fit_exponent(fit_points);
        record.summary.emplace_back("fit_slope", fit.slope);
        record.summary.emplace_back("fit_intercept", fit.intercept);
        record.summary.emplace_back("fit_residual", fit.residual);
        record.summary.emplace_back("target_exponent", (options.m - 1.0) * (options.m - 1.0));
    }
    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

double g_func_reversed(double x, const EnvelopeParams& p) {
    const double L = std::log(p.T);
    const bool beyond = x > 0.0 && std::log(x) >= p.T;
    if (x >= 10.0 && !beyond) return std::log(std::log(x));
    if (x >= 1.0 / L && x <= 10.0) return 1.0 / x;
    return L;
}

}  // namespace zetalab
