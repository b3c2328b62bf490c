#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "zetalab/bounds.hpp"
#include "zetalab/types.hpp"

namespace zetalab {

using Cell = std::variant<double, long long, std::string, bool>;
using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Everything one run produces. Rows line up with columns.
struct RunRecord {
    std::string command;
    KeyValues config;  // resolved configuration echo
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> summary;
    std::string version = kVersion;
    Precision precision = Precision::standard;
    bool deterministic = false;
    double wall_seconds = 0.0;
    std::optional<std::string> failure;  // set when the run stopped early
};

enum class Format { csv, json };

Format parse_format(const std::string& name);
Precision parse_precision(const std::string& name);
std::string to_string(Precision p);

// 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double x);

// CSV: '#'-prefixed config/summary lines, then the header row, then data rows.
// JSON: one object with config, results, summary and metadata.
// Wall time is omitted in deterministic mode so identical runs are byte-identical.
std::string render(const RunRecord& record, Format format);
// An empty path or "-" writes to stdout.
void emit(const RunRecord& record, Format format, const std::string& path);

// Y as a function of T: "sqrt(T)", "T^p", "c*T", "c*sqrt(T)", "log(T)", or a constant.
double apply_y_rule(const std::string& rule, double T);

struct ScalingOptions {
    double m = 2.5;
    std::vector<double> T_list;
    std::string Y_rule = "sqrt(T)";
    double epsilon = 0.05;
    double dt = 0.0;  // 0: default step per Y
    unsigned threads = 0;
};

// S_m at each T against T Y^m (log T)^((m-1)^2), plus a least-squares fit of
// log(S_m / (T Y^m)) against log log T. Columns: T, Y, m, S_m, S_m_err, rhs, ratio, dt.
RunRecord run_scaling(const ScalingOptions& options);

struct CheckOutcome {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

using EnvelopeFn = std::function<double(double, const EnvelopeParams&)>;

struct VerifyOptions {
    std::string suite = "fast";  // fast | full
    unsigned threads = 0;
    EnvelopeFn envelope;         // defaults to g_func; replaceable for fault injection
};

std::vector<CheckOutcome> verify_checks(const VerifyOptions& options);
// Rows: check, passed, measured, threshold, detail. failure names the first failed check.
RunRecord run_verify(const VerifyOptions& options);

// g with its cases tested in reverse order; used to exercise the verify suite.
double g_func_reversed(double x, const EnvelopeParams& p);

}  // namespace zetalab
