#pragma once

// Report envelope shared by every CLI command: command echo, config echo,
// payload, warnings, and tool version, rendered deterministically as
// JSON, CSV, or plain text.

#include <string>
#include <vector>

#include <json.hpp>

namespace ivt::report {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

enum class Format { kJson, kCsv, kPlain };

Format parse_format(const std::string& name);  // throws std::invalid_argument

struct Report {
    std::string command;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    nlohmann::ordered_json payload = nlohmann::ordered_json::object();
    std::vector<std::string> warnings;

    // Tabular view for the CSV format (frozen headers per command).
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;

    // Human view for the plain format.
    std::vector<std::string> plain_lines;
};

/// Deterministic rendering; identical reports produce identical bytes.
std::string render(const Report& report, Format format);

/// Fixed-format decimal used anywhere a double reaches CSV or plain text.
std::string format_double(double value);

}  // namespace ivt::report
