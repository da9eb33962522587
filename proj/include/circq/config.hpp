#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace circq {

// Parsed run configuration. The file format is INI-like:
//   [section] headers, key = value pairs, # full-line comments,
//   double-quoted strings, [a, b, c] bracketed numeric arrays.
struct run_config {
    std::string metric_a = "0";
    std::string metric_b = "0";
    std::string metric_c = "0";
    std::uint64_t seed = 0;
    std::vector<std::string> suites;  // resolved; "all" already expanded
    std::vector<std::array<double, 4>> points;
    std::map<std::string, double> tolerances;  // per-check overrides by id
    std::string source_path;                   // for the report echo
};

run_config parse_config_text(const std::string& text, const std::string& path,
                             const std::vector<std::string>& known_suites);
run_config parse_config_file(const std::string& path,
                             const std::vector<std::string>& known_suites);

}  // namespace circq
