// report.hpp — machine-readable serialization of check and defect reports
// (versioned JSON, flat CSV).  Serialization is deterministic: insertion
// order is preserved and doubles round-trip exactly.

#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bounds.hpp"
#include "defect.hpp"

namespace ozkit {

inline constexpr int kReportFormatVersion = 1;

inline nlohmann::ordered_json to_json(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["inequality_id"] = r.inequality_id;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["margin"] = r.margin;
    j["pass"] = r.pass;
    if (!r.context.empty()) j["context"] = r.context; // std::map: key-sorted, deterministic
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline nlohmann::ordered_json to_json(const DefectReport& r) {
    nlohmann::ordered_json j;
    switch (r.kind) {
        case DefectReport::Kind::order_zero: j["kind"] = "order-zero"; break;
        case DefectReport::Kind::self_adjoint: j["kind"] = "self-adjoint"; break;
        case DefectReport::Kind::jordan: j["kind"] = "jordan"; break;
    }
    j["value"] = r.value;
    j["strategy"] = r.strategy;
    j["samples"] = r.samples;
    return j;
}

inline nlohmann::ordered_json report_file_json(const std::vector<CheckReport>& reports) {
    nlohmann::ordered_json j;
    j["format_version"] = kReportFormatVersion;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const CheckReport& r : reports) rows.push_back(to_json(r));
    j["checks"] = std::move(rows);
    int failures = 0;
    for (const CheckReport& r : reports)
        if (!r.pass) ++failures;
    j["failures"] = failures;
    return j;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string report_file_csv(const std::vector<CheckReport>& reports) {
    std::ostringstream out;
    out << "inequality_id,lhs,rhs,margin,pass,note\n";
    for (const CheckReport& r : reports) {
        out << csv_escape(r.inequality_id) << ',' << format_double(r.lhs) << ',' << format_double(r.rhs)
            << ',' << format_double(r.margin) << ',' << (r.pass ? "1" : "0") << ',' << csv_escape(r.note)
            << '\n';
    }
    return out.str();
}

inline void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("write_text_file: cannot open " + path);
    out << contents;
}

} // namespace ozkit
