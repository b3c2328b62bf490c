#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "zetalab/errors.hpp"
#include "zetalab/experiments.hpp"

namespace zetalab {

namespace {

std::string quote_json(const std::string& s) { return nlohmann::json(s).dump(); }

std::string quote_csv(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Cell& cell, bool json) {
    return std::visit(
        [json](const auto& v) -> std::string {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) {
                if (json && !std::isfinite(v)) return "null";
                return format_number(v);
            } else if constexpr (std::is_same_v<V, long long>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<V, bool>) {
                return v ? "true" : "false";
            } else {
                return json ? quote_json(v) : quote_csv(v);
            }
        },
        cell);
}

std::string render_csv(const RunRecord& r) {
    std::ostringstream out;
    out << "# zetalab " << r.version << '\n';
    out << "# command=" << r.command << '\n';
    for (const auto& [k, v] : r.config) out << "# config." << k << '=' << v << '\n';
    out << "# precision=" << to_string(r.precision) << '\n';
    out << "# deterministic=" << (r.deterministic ? "true" : "false") << '\n';
    if (!r.deterministic) out << "# wall_time_s=" << format_number(r.wall_seconds) << '\n';
    for (const auto& [k, v] : r.summary) out << "# summary." << k << '=' << cell_text(v, false) << '\n';
    if (r.failure) out << "# failure=" << *r.failure << '\n';
    for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << quote_csv(r.columns[i]);
    out << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i], false);
        out << '\n';
    }
    return out.str();
}

std::string render_json(const RunRecord& r) {
    std::ostringstream out;
    out << "{\n  \"command\": " << quote_json(r.command) << ",\n  \"config\": {";
    for (std::size_t i = 0; i < r.config.size(); ++i)
        out << (i ? "," : "") << "\n    " << quote_json(r.config[i].first) << ": "
            << quote_json(r.config[i].second);
    out << (r.config.empty() ? "}" : "\n  }") << ",\n  \"results\": [";
    for (std::size_t j = 0; j < r.rows.size(); ++j) {
        out << (j ? "," : "") << "\n    {";
        for (std::size_t i = 0; i < r.columns.size() && i < r.rows[j].size(); ++i)
            out << (i ? ", " : "") << quote_json(r.columns[i]) << ": " << cell_text(r.rows[j][i], true);
        out << "}";
    }
    out << (r.rows.empty() ? "]" : "\n  ]") << ",\n  \"summary\": {";
    for (std::size_t i = 0; i < r.summary.size(); ++i)
        out << (i ? "," : "") << "\n    " << quote_json(r.summary[i].first) << ": "
            << cell_text(r.summary[i].second, true);
    out << (r.summary.empty() ? "}" : "\n  }") << ",\n  \"metadata\": {\n"
        << "    \"version\": " << quote_json(r.version) << ",\n"
        << "    \"precision\": " << quote_json(to_string(r.precision)) << ",\n"
        << "    \"deterministic\": " << (r.deterministic ? "true" : "false");
    if (!r.deterministic) out << ",\n    \"wall_time_s\": " << format_number(r.wall_seconds);
    out << "\n  },\n  \"failure\": " << (r.failure ? quote_json(*r.failure) : "null") << "\n}\n";
    return out.str();
}

}  // namespace

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw ParameterError("unknown output format '" + name + "'");
}

Precision parse_precision(const std::string& name) {
    if (name == "double") return Precision::standard;
    if (name == "extended") return Precision::extended;
    throw ParameterError("unknown precision mode '" + name + "'");
}

std::string to_string(Precision p) { return p == Precision::extended ? "extended" : "double"; }

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string render(const RunRecord& record, Format format) {
    return format == Format::csv ? render_csv(record) : render_json(record);
}

void emit(const RunRecord& record, Format format, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << render(record, format);
        std::cout.flush();
        if (!std::cout) throw IoError("failed writing to stdout");
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << render(record, format);
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace zetalab
