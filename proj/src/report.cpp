#include "ivt/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ivt::report {

Format parse_format(const std::string& name) {
    if (name == "json") return Format::kJson;
    if (name == "csv") return Format::kCsv;
    if (name == "plain") return Format::kPlain;
    throw std::invalid_argument("unknown output format: " + name);
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void append_preamble(std::ostringstream& out, const Report& report) {
    out << "# ivt " << kToolVersion << " schema=" << kSchemaVersion << "\n";
    out << "# command: " << report.command << "\n";
    out << "# config:";
    for (const auto& [key, value] : report.config.items())
        out << " " << key << "=" << value.dump();
    out << "\n";
    for (const auto& warning : report.warnings) out << "# warning: " << warning << "\n";
}

}  // namespace

std::string render(const Report& report, Format format) {
    std::ostringstream out;
    switch (format) {
        case Format::kJson: {
            nlohmann::ordered_json doc;
            doc["schema_version"] = kSchemaVersion;
            doc["tool_version"] = kToolVersion;
            doc["command"] = report.command;
            doc["config"] = report.config;
            doc["warnings"] = report.warnings;
            doc["payload"] = report.payload;
            out << doc.dump(2) << "\n";
            break;
        }
        case Format::kCsv: {
            append_preamble(out, report);
            std::string header;
            for (std::size_t i = 0; i < report.csv_header.size(); ++i) {
                if (i) header += ',';
                header += csv_escape(report.csv_header[i]);
            }
            out << header << "\n";
            for (const auto& row : report.csv_rows) {
                std::string line;
                for (std::size_t i = 0; i < row.size(); ++i) {
                    if (i) line += ',';
                    line += csv_escape(row[i]);
                }
                out << line << "\n";
            }
            break;
        }
        case Format::kPlain: {
            append_preamble(out, report);
            for (const auto& line : report.plain_lines) out << line << "\n";
            break;
        }
    }
    return out.str();
}

}  // namespace ivt::report
