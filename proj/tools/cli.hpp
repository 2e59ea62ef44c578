#pragma once

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sqfree::cli {

namespace exit_code {
inline constexpr int verdict = 0;
inline constexpr int internal = 1;
inline constexpr int limit = 2;
inline constexpr int usage = 64;
inline constexpr int parse = 65;
} // namespace exit_code

struct RunReport {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::string verdict;
    std::optional<std::string> evidence_path;
    /// Command-specific content; never holds timings.
    nlohmann::json results = nlohmann::json::object();
    std::map<std::string, double> timings;

    nlohmann::json to_json() const;
    static RunReport from_json(const nlohmann::json& j);
    std::string to_text() const;
};

struct DispatchResult {
    int exit_code = exit_code::internal;
    std::optional<RunReport> report;
};

/// Parses argv (without the program name), runs the subcommand and writes
/// the report to out in the requested format. Diagnostics go to err.
DispatchResult dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sqfree::cli
