#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "circq/suites.hpp"

namespace circq {

// Minimal JSON value tree. Object keys live in a std::map so serialization
// is alphabetical by construction; doubles print with 17 significant digits
// so identical runs produce byte-identical reports.
struct json_value {
    enum class kind { null, boolean, number, integer, string, array, object } k = kind::null;
    bool b = false;
    double num = 0.0;
    long long inum = 0;
    std::string str;
    std::vector<json_value> arr;
    std::map<std::string, json_value> obj;

    static json_value make_null();
    static json_value make_bool(bool v);
    static json_value make_number(double v);
    static json_value make_integer(long long v);
    static json_value make_string(std::string v);
    static json_value make_array();
    static json_value make_object();
};

std::string format_double(double v);                 // %.17g
std::string serialize_json(const json_value& v);     // 2-space indent, \n ending

json_value report_to_json(const run_report& rep);
std::string render_report(const run_report& rep);

// Replaces the wall_clock_ms value with 0 so byte comparisons ignore timing.
std::string normalize_report_text(const std::string& text);

}  // namespace circq
