#include "circq/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "circq/errors.hpp"

namespace circq {
namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(int line_no, const std::string& msg) {
    throw parse_error("config line " + std::to_string(line_no) + ": " + msg,
                      static_cast<std::size_t>(line_no));
}

// A raw value is either a quoted string, a bracketed array, or a bare scalar.
struct raw_value {
    enum class kind { string, array, scalar } k = kind::scalar;
    std::string str;                  // string payload
    std::vector<std::string> items;   // array payload, each item still raw text
    std::string scalar;               // bare token
    int line_no = 0;
};

raw_value parse_value(const std::string& text, int line_no) {
    raw_value v;
    v.line_no = line_no;
    std::string t = trim(text);
    if (t.empty()) fail(line_no, "missing value after '='");
    if (t.front() == '"') {
        auto close = t.find('"', 1);
        if (close == std::string::npos) fail(line_no, "unterminated string literal");
        if (trim(t.substr(close + 1)).size() != 0)
            fail(line_no, "trailing characters after string literal");
        v.k = raw_value::kind::string;
        v.str = t.substr(1, close - 1);
        return v;
    }
    if (t.front() == '[') {
        if (t.back() != ']') fail(line_no, "unterminated array literal");
        v.k = raw_value::kind::array;
        std::string inner = t.substr(1, t.size() - 2);
        std::size_t pos = 0;
        bool in_string = false;
        std::string cur;
        for (; pos < inner.size(); ++pos) {
            char c = inner[pos];
            if (c == '"') in_string = !in_string;
            if (c == ',' && !in_string) {
                v.items.push_back(trim(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (in_string) fail(line_no, "unterminated string literal inside array");
        std::string last = trim(cur);
        if (!last.empty()) v.items.push_back(last);
        for (const auto& it : v.items)
            if (it.empty()) fail(line_no, "empty element in array literal");
        return v;
    }
    v.k = raw_value::kind::scalar;
    v.scalar = t;
    return v;
}

double require_number(const std::string& tok, int line_no) {
    errno = 0;
    char* end = nullptr;
    double d = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0' || errno == ERANGE)
        fail(line_no, "expected a number, got '" + tok + "'");
    return d;
}

std::string require_string_item(const std::string& tok, int line_no) {
    if (tok.size() < 2 || tok.front() != '"' || tok.back() != '"')
        fail(line_no, "expected a quoted string, got '" + tok + "'");
    return tok.substr(1, tok.size() - 2);
}

}  // namespace

run_config parse_config_text(const std::string& text, const std::string& path,
                             const std::vector<std::string>& known_suites) {
    run_config cfg;
    cfg.source_path = path;

    std::string section;
    bool have_a = false, have_b = false, have_c = false, have_seed = false, have_suites = false;
    struct keyed_value {
        std::string key;
        raw_value val;
    };
    std::vector<keyed_value> point_entries;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        if (t.front() == '[' && t.back() == ']' && t.find('=') == std::string::npos) {
            section = trim(t.substr(1, t.size() - 2));
            if (section != "metric" && section != "run" && section != "points" &&
                section != "tolerances")
                fail(line_no, "unknown section [" + section + "]");
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value' or a section header");
        std::string key = trim(t.substr(0, eq));
        if (key.empty()) fail(line_no, "empty key before '='");
        raw_value val = parse_value(t.substr(eq + 1), line_no);

        if (section.empty()) fail(line_no, "key '" + key + "' outside any section");
        if (section == "metric") {
            if (val.k != raw_value::kind::string)
                fail(line_no, "metric entry '" + key + "' must be a quoted expression string");
            if (key == "A") {
                cfg.metric_a = val.str;
                have_a = true;
            } else if (key == "B") {
                cfg.metric_b = val.str;
                have_b = true;
            } else if (key == "C") {
                cfg.metric_c = val.str;
                have_c = true;
            } else {
                fail(line_no, "unknown metric key '" + key + "' (expected A, B or C)");
            }
        } else if (section == "run") {
            if (key == "seed") {
                if (val.k != raw_value::kind::scalar)
                    fail(line_no, "seed must be a non-negative integer");
                const std::string& s = val.scalar;
                if (s.empty() || s[0] == '-' ||
                    !std::all_of(s.begin(), s.end(),
                                 [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                    fail(line_no, "seed must be a non-negative integer, got '" + s + "'");
                errno = 0;
                cfg.seed = std::strtoull(s.c_str(), nullptr, 10);
                if (errno == ERANGE) fail(line_no, "seed out of range");
                have_seed = true;
            } else if (key == "suites") {
                have_suites = true;
                if (val.k == raw_value::kind::string) {
                    if (val.str != "all")
                        fail(line_no, "suites must be \"all\" or an array of suite names");
                    cfg.suites = known_suites;
                } else if (val.k == raw_value::kind::array) {
                    for (const auto& it : val.items) {
                        std::string name = require_string_item(it, line_no);
                        if (std::find(known_suites.begin(), known_suites.end(), name) ==
                            known_suites.end())
                            fail(line_no, "unknown suite '" + name + "'");
                        if (std::find(cfg.suites.begin(), cfg.suites.end(), name) ==
                            cfg.suites.end())
                            cfg.suites.push_back(name);
                    }
                    if (cfg.suites.empty()) fail(line_no, "suites array is empty");
                } else {
                    fail(line_no, "suites must be \"all\" or an array of suite names");
                }
            } else {
                fail(line_no, "unknown run key '" + key + "'");
            }
        } else if (section == "points") {
            point_entries.push_back({key, val});
        } else {  // tolerances
            if (val.k != raw_value::kind::scalar)
                fail(line_no, "tolerance override '" + key + "' must be a number");
            double d = require_number(val.scalar, val.line_no);
            if (!(d > 0.0)) fail(line_no, "tolerance override '" + key + "' must be positive");
            cfg.tolerances[key] = d;
        }
    }

    if (!have_a || !have_b || !have_c)
        fail(line_no, "missing [metric] entries: A, B and C are all required");
    if (!have_seed) fail(line_no, "missing required [run] key 'seed'");
    if (!have_suites) cfg.suites = known_suites;
    if (point_entries.empty()) fail(line_no, "at least one point is required in [points]");
    for (const auto& [key, val] : point_entries) {
        if (val.k != raw_value::kind::array || val.items.size() != 4)
            fail(val.line_no, "point '" + key + "' must be an array of 4 coordinates");
        std::array<double, 4> p{};
        for (int i = 0; i < 4; ++i) p[i] = require_number(val.items[i], val.line_no);
        cfg.points.push_back(p);
    }
    return cfg;
}

run_config parse_config_file(const std::string& path,
                             const std::vector<std::string>& known_suites) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open config file '" + path + "'", 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path, known_suites);
}

}  // namespace circq
