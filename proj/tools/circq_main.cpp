#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "circq/config.hpp"
#include "circq/errors.hpp"
#include "circq/expr.hpp"
#include "circq/report.hpp"
#include "circq/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitToleranceFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitMathError = 3;

int cmd_run(const std::string& config_path, const std::vector<std::string>& suite_filter,
            const std::string& out_path, double tol_scale) {
    circq::run_config cfg;
    try {
        cfg = circq::parse_config_file(config_path, circq::kAllSuites);
        for (const auto& s : suite_filter) {
            if (std::find(circq::kAllSuites.begin(), circq::kAllSuites.end(), s) ==
                circq::kAllSuites.end())
                throw circq::parse_error("unknown suite '" + s + "' in --suite", 0);
        }
        if (!(tol_scale > 0.0))
            throw circq::parse_error("--tol-scale must be positive", 0);
        // Surface metric expression syntax errors as config errors.
        (void)circq::parse_metric_field(cfg.metric_a, cfg.metric_b, cfg.metric_c);
    } catch (const circq::parse_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }

    circq::run_report rep;
    try {
        rep = circq::execute_run(cfg, suite_filter, tol_scale);
    } catch (const std::exception& e) {
        std::cerr << "math error: " << e.what() << "\n";
        return kExitMathError;
    }

    const std::string text = circq::render_report(rep);
    {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write report to '" << out_path << "'\n";
            return kExitMathError;
        }
        out << text;
    }

    for (const auto& s : rep.suites) {
        int failed = 0;
        for (const auto& c : s.checks)
            if (!c.pass) ++failed;
        std::printf("%-10s point %d: %s (%zu checks, %d failed)\n", s.name.c_str(),
                    s.point_index, s.pass ? "pass" : "FAIL", s.checks.size(), failed);
        for (const auto& c : s.checks)
            if (!c.pass)
                std::printf("    %-22s value %.17g tolerance %.17g\n", c.id.c_str(), c.value,
                            c.tolerance ? *c.tolerance : 0.0);
    }
    std::printf("overall: %s (report: %s)\n", rep.overall_pass ? "pass" : "FAIL",
                out_path.c_str());
    return rep.overall_pass ? kExitPass : kExitToleranceFailure;
}

int cmd_validate(const std::string& config_path) {
    try {
        circq::run_config cfg = circq::parse_config_file(config_path, circq::kAllSuites);
        (void)circq::parse_metric_field(cfg.metric_a, cfg.metric_b, cfg.metric_c);
        std::printf("config OK: %zu suites, %zu points, seed %llu\n", cfg.suites.size(),
                    cfg.points.size(), static_cast<unsigned long long>(cfg.seed));
        return kExitPass;
    } catch (const circq::parse_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

int cmd_expr_check(const std::string& text, const std::string& at) {
    circq::expr_ptr e;
    circq::vec4 p{};
    try {
        e = circq::parse_expr(text);
        std::vector<double> coords;
        std::size_t pos = 0;
        while (pos <= at.size()) {
            auto comma = at.find(',', pos);
            std::string tok = at.substr(pos, comma == std::string::npos ? at.size() - pos
                                                                        : comma - pos);
            std::size_t used = 0;
            coords.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (coords.size() != 4)
            throw circq::parse_error("--at expects 4 comma-separated coordinates", 0);
        for (int i = 0; i < 4; ++i) p[i] = coords[static_cast<std::size_t>(i)];
    } catch (const circq::parse_error& err) {
        std::cerr << "parse error: " << err.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& err) {
        std::cerr << "parse error: invalid --at coordinate: " << err.what() << "\n";
        return kExitConfigError;
    }

    try {
        circq::jet2 j = circq::eval_jet2(e, p);
        std::printf("expr: %s\n", circq::print_expr(e).c_str());
        std::printf("value: %.17g\n", j.v);
        std::printf("grad: [%.17g, %.17g, %.17g, %.17g]\n", j.g[0], j.g[1], j.g[2], j.g[3]);
        for (int i = 0; i < 4; ++i)
            std::printf("hess[%d]: [%.17g, %.17g, %.17g, %.17g]\n", i + 1, j.h[i][0], j.h[i][1],
                        j.h[i][2], j.h[i][3]);
        return kExitPass;
    } catch (const std::exception& err) {
        std::cerr << "math error: " << err.what() << "\n";
        return kExitMathError;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"circulant-metric geometry checker"};
    app.require_subcommand(1);

    std::string config_path, out_path = "report.json", expr_text, at_text;
    std::vector<std::string> suite_filter;
    double tol_scale = 1.0;

    auto* run = app.add_subcommand("run", "execute the configured suites");
    run->add_option("config", config_path, "run configuration file")->required();
    run->add_option("--suite", suite_filter, "restrict to the named suites (repeatable)");
    run->add_option("--out", out_path, "report output path");
    run->add_option("--tol-scale", tol_scale, "multiply every tolerance by this factor");

    auto* validate = app.add_subcommand("validate", "parse and validate a configuration");
    validate->add_option("config", config_path, "run configuration file")->required();

    auto* expr_check = app.add_subcommand("expr-check", "parse, print and evaluate an expression");
    expr_check->add_option("expression", expr_text, "expression text")->required();
    expr_check->add_option("--at", at_text, "evaluation point x1,x2,x3,x4")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Usage problems share the config-error exit code.
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfigError;
    }

    if (run->parsed()) return cmd_run(config_path, suite_filter, out_path, tol_scale);
    if (validate->parsed()) return cmd_validate(config_path);
    return cmd_expr_check(expr_text, at_text);
}
