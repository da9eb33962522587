#include "circq/report.hpp"

#include <cmath>
#include <cstdio>
#include <regex>

namespace circq {

json_value json_value::make_null() { return json_value{}; }
json_value json_value::make_bool(bool v) {
    json_value j;
    j.k = kind::boolean;
    j.b = v;
    return j;
}
json_value json_value::make_number(double v) {
    json_value j;
    j.k = kind::number;
    j.num = v;
    return j;
}
json_value json_value::make_integer(long long v) {
    json_value j;
    j.k = kind::integer;
    j.inum = v;
    return j;
}
json_value json_value::make_string(std::string v) {
    json_value j;
    j.k = kind::string;
    j.str = std::move(v);
    return j;
}
json_value json_value::make_array() {
    json_value j;
    j.k = kind::array;
    return j;
}
json_value json_value::make_object() {
    json_value j;
    j.k = kind::object;
    return j;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void escape_into(const std::string& s, std::string& out) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void serialize_into(const json_value& v, std::string& out, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
    switch (v.k) {
        case json_value::kind::null: out += "null"; break;
        case json_value::kind::boolean: out += v.b ? "true" : "false"; break;
        case json_value::kind::number: out += format_double(v.num); break;
        case json_value::kind::integer: out += std::to_string(v.inum); break;
        case json_value::kind::string: escape_into(v.str, out); break;
        case json_value::kind::array: {
            if (v.arr.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < v.arr.size(); ++i) {
                out += pad_in;
                serialize_into(v.arr[i], out, depth + 1);
                if (i + 1 < v.arr.size()) out += ',';
                out += '\n';
            }
            out += pad + "]";
            break;
        }
        case json_value::kind::object: {
            if (v.obj.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            std::size_t i = 0;
            for (const auto& [key, val] : v.obj) {
                out += pad_in;
                escape_into(key, out);
                out += ": ";
                serialize_into(val, out, depth + 1);
                if (++i < v.obj.size()) out += ',';
                out += '\n';
            }
            out += pad + "}";
            break;
        }
    }
}

}  // namespace

std::string serialize_json(const json_value& v) {
    std::string out;
    serialize_into(v, out, 0);
    out += '\n';
    return out;
}

json_value report_to_json(const run_report& rep) {
    json_value root = json_value::make_object();

    json_value cfg = json_value::make_object();
    json_value metric = json_value::make_object();
    metric.obj["A"] = json_value::make_string(rep.config.metric_a);
    metric.obj["B"] = json_value::make_string(rep.config.metric_b);
    metric.obj["C"] = json_value::make_string(rep.config.metric_c);
    cfg.obj["metric"] = std::move(metric);
    cfg.obj["seed"] = json_value::make_integer(static_cast<long long>(rep.config.seed));
    json_value suites_requested = json_value::make_array();
    for (const auto& s : rep.config.suites)
        suites_requested.arr.push_back(json_value::make_string(s));
    cfg.obj["suites"] = std::move(suites_requested);
    json_value points = json_value::make_array();
    for (const auto& p : rep.config.points) {
        json_value pt = json_value::make_array();
        for (double x : p) pt.arr.push_back(json_value::make_number(x));
        points.arr.push_back(std::move(pt));
    }
    cfg.obj["points"] = std::move(points);
    cfg.obj["tol_scale"] = json_value::make_number(rep.tol_scale);
    root.obj["config"] = std::move(cfg);

    root.obj["format_version"] = json_value::make_integer(1);
    root.obj["overall_pass"] = json_value::make_bool(rep.overall_pass);

    json_value suites = json_value::make_array();
    for (const auto& s : rep.suites) {
        json_value sj = json_value::make_object();
        sj.obj["name"] = json_value::make_string(s.name);
        sj.obj["point_index"] = json_value::make_integer(s.point_index);
        json_value pt = json_value::make_array();
        for (int i = 0; i < 4; ++i) pt.arr.push_back(json_value::make_number(s.point[i]));
        sj.obj["point"] = std::move(pt);
        sj.obj["pass"] = json_value::make_bool(s.pass);
        json_value checks = json_value::make_array();
        for (const auto& c : s.checks) {
            json_value cj = json_value::make_object();
            cj.obj["detail"] = json_value::make_string(c.detail);
            cj.obj["id"] = json_value::make_string(c.id);
            cj.obj["pass"] = json_value::make_bool(c.pass);
            cj.obj["tolerance"] = c.tolerance ? json_value::make_number(*c.tolerance)
                                              : json_value::make_null();
            cj.obj["value"] = json_value::make_number(c.value);
            checks.arr.push_back(std::move(cj));
        }
        sj.obj["checks"] = std::move(checks);
        suites.arr.push_back(std::move(sj));
    }
    root.obj["suites"] = std::move(suites);
    root.obj["tool_version"] = json_value::make_string(rep.tool_version);
    root.obj["wall_clock_ms"] = json_value::make_number(rep.wall_clock_ms);
    return root;
}

std::string render_report(const run_report& rep) { return serialize_json(report_to_json(rep)); }

std::string normalize_report_text(const std::string& text) {
    static const std::regex re("(\"wall_clock_ms\": )[-+0-9.eE]+");
    return std::regex_replace(text, re, "$010");
}

}  // namespace circq
