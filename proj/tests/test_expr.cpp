#include <cmath>
#include <string>
#include <vector>

#include "circq/errors.hpp"
#include "circq/expr.hpp"
#include "circq/rng.hpp"
#include "doctest.h"

using namespace circq;

namespace {

// Central finite differences on the value oracle; step tuned for ~1e-7
// accuracy, which is enough to catch any structural jet bug.
double fd_grad(const expr_ptr& e, const vec4& p, int i, double h = 1e-5) {
    vec4 a = p, b = p;
    a[i] += h;
    b[i] -= h;
    return (eval_value(e, a) - eval_value(e, b)) / (2.0 * h);
}

double fd_hess(const expr_ptr& e, const vec4& p, int i, int j, double h = 1e-4) {
    vec4 pp = p, pm = p, mp = p, mm = p;
    pp[i] += h; pp[j] += h;
    pm[i] += h; pm[j] -= h;
    mp[i] -= h; mp[j] += h;
    mm[i] -= h; mm[j] -= h;
    return (eval_value(e, pp) - eval_value(e, pm) - eval_value(e, mp) + eval_value(e, mm)) /
           (4.0 * h * h);
}

void check_jets_against_fd(const std::string& text, const vec4& p) {
    CAPTURE(text);
    expr_ptr e = parse_expr(text);
    jet2 j = eval_jet2(e, p);
    CHECK(j.v == doctest::Approx(eval_value(e, p)).epsilon(1e-14));
    for (int i = 0; i < 4; ++i) {
        CHECK(j.g[i] == doctest::Approx(fd_grad(e, p, i)).epsilon(1e-6).scale(1.0));
        for (int k = 0; k < 4; ++k) {
            CHECK(j.h[i][k] == j.h[k][i]);  // symmetric by construction, exact
            CHECK(j.h[i][k] == doctest::Approx(fd_hess(e, p, i, k)).epsilon(1e-4).scale(1.0));
        }
    }
}

}  // namespace

TEST_CASE("expr: grammar accepts the documented forms") {
    const vec4 p{0.3, -0.7, 1.1, 0.4};
    for (const char* s : {
             "1", "-2.5e-3", "X1", "X1 + X2*X3 - X4/2", "-X1^2", "(X1 + X2)^3",
             "3e-2", "sin(X1)*cos(X2) + sin(X3/4)", "exp(-X1*X1)", "log(2 + X2)",
             "sqrt(1 + X3*X3)", "cos(0 - X4)", "1/(1 + X1^2)", "((X1))",
             "3 + 0.2*sin(X1 + X2 + X3 + X4)",
         }) {
        CHECK_NOTHROW(parse_expr(s));
    }
    CHECK(eval_value(parse_expr("-X1^2"), p) == doctest::Approx(-0.09));
    CHECK(eval_value(parse_expr("2*3 + 4"), p) == 10.0);
    CHECK(eval_value(parse_expr("2 + 3*4"), p) == 14.0);
    CHECK(eval_value(parse_expr("10 - 4 - 3"), p) == 3.0);  // left associative
    CHECK(eval_value(parse_expr("16/4/2"), p) == 2.0);
    CHECK(eval_value(parse_expr("2^0.5"), p) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("expr: rejection errors carry position and reason") {
    CHECK_THROWS_WITH_AS(parse_expr("X5 + 1"), doctest::Contains("unknown identifier 'X5'"),
                         parse_error);
    CHECK_THROWS_WITH_AS(parse_expr("X1 ^ X2"), doctest::Contains("non-constant exponent"),
                         parse_error);
    CHECK_THROWS_WITH_AS(parse_expr("(X1 + 2^(1+1))"), doctest::Contains("non-constant exponent"),
                         parse_error);
    // The exponent grammar slot is an unsigned number literal.
    CHECK_THROWS_WITH_AS(parse_expr("2^-2"), doctest::Contains("non-constant exponent"),
                         parse_error);
    CHECK_THROWS_AS(parse_expr("2^3^1"), parse_error);  // power does not chain
    CHECK_THROWS_AS(parse_expr(""), parse_error);
    CHECK_THROWS_AS(parse_expr("1 +"), parse_error);
    CHECK_THROWS_AS(parse_expr("(1"), parse_error);
    CHECK_THROWS_AS(parse_expr("foo(1)"), parse_error);
    CHECK_THROWS_AS(parse_expr("1 2"), parse_error);
    CHECK_THROWS_AS(parse_expr("sin 1"), parse_error);
    // The function set is exactly sin, cos, exp, log, sqrt.
    CHECK_THROWS_WITH_AS(parse_expr("tan(X1)"), doctest::Contains("unknown identifier"),
                         parse_error);
    CHECK_THROWS_WITH_AS(parse_expr("abs(X1)"), doctest::Contains("unknown identifier"),
                         parse_error);
}

TEST_CASE("expr: canonical print round-trips bitwise") {
    rng64 r(2024);
    const std::vector<std::string> pool = {
        "3 + 0.2*sin(X1 + X2 + X3 + X4)",
        "4/((1 + X1^2 + X2^2 + X3^2 + X4^2)^2)",
        "exp(0 - X1*X1) * log(2 + X2*X2) + sqrt(4 + X3) - cos(X4)/3",
        "1 - 2*cos(X1 - 0.5*X2)^2 + X3*X4^3",
        "2^3 + X1^0 + (0 - X2)^5",
    };
    for (const auto& s : pool) {
        expr_ptr e = parse_expr(s);
        std::string printed = print_expr(e);
        expr_ptr e2 = parse_expr(printed);
        CHECK(print_expr(e2) == printed);  // printing is idempotent
        for (int k = 0; k < 16; ++k) {
            vec4 p{r.uniform(-1.0, 1.0), r.uniform(-1.0, 1.0), r.uniform(-1.0, 1.0),
                   r.uniform(-1.0, 1.0)};
            // Bitwise equality: the canonical form preserves evaluation order.
            CHECK(eval_value(e, p) == eval_value(e2, p));
            jet2 ja = eval_jet2(e, p), jb = eval_jet2(e2, p);
            for (int i = 0; i < 4; ++i) {
                CHECK(ja.g[i] == jb.g[i]);
                for (int jx = 0; jx < 4; ++jx) CHECK(ja.h[i][jx] == jb.h[i][jx]);
            }
        }
    }
}

TEST_CASE("expr: exact 2-jets match finite differences") {
    check_jets_against_fd("3 + 0.2*sin(X1 + X2 + X3 + X4)", {0.1, 0.2, -0.3, 0.4});
    check_jets_against_fd("4/((1 + X1^2 + X2^2 + X3^2 + X4^2)^2)", {0.1, 0.2, -0.3, 0.4});
    check_jets_against_fd("exp(X1*X2) * cos(X3) + sin(X4/3)", {0.5, -0.4, 0.9, 0.2});
    check_jets_against_fd("log(2 + X1) * sqrt(3 + X2) / (1 + X3*X3)", {0.3, 0.1, -0.8, 0.0});
    check_jets_against_fd("(1 + X1*X2 - X3)^4", {0.2, 0.3, 0.1, 0.0});
    check_jets_against_fd("(2 + X2)^1.5", {0.0, 0.7, 0.0, 0.0});
    check_jets_against_fd("X1^3 - X2^2 + 5*X3 - 7", {1.2, -0.6, 0.4, 0.9});
    check_jets_against_fd("sqrt((X1 - 2)^2)", {0.3, 0.0, 0.0, 0.0});  // smooth away from the kink
}

TEST_CASE("expr: integer powers allow negative bases, fractional require positive") {
    CHECK(eval_value(parse_expr("(0 - 2)^3"), {}) == -8.0);
    jet2 j = eval_jet2(parse_expr("X1^3"), {-2.0, 0, 0, 0});
    CHECK(j.v == -8.0);
    CHECK(j.g[0] == 12.0);
    CHECK(j.h[0][0] == -12.0);
    CHECK_THROWS_AS(eval_value(parse_expr("(0 - 2)^0.5"), {}), expr_domain_error);
    // Negative integer exponents exist only through the AST API.
    expr_ptr inv = make_binary(expr_kind::pow, make_variable(1), make_constant(-1.0));
    CHECK(eval_value(inv, {2.0, 0, 0, 0}) == 0.5);
    jet2 ji = eval_jet2(inv, {2.0, 0, 0, 0});
    CHECK(ji.g[0] == doctest::Approx(-0.25));
    CHECK(ji.h[0][0] == doctest::Approx(0.25));
    CHECK_THROWS_AS(eval_value(inv, {0.0, 0, 0, 0}), expr_domain_error);  // zero base
}

TEST_CASE("expr: domain errors identify the subexpression") {
    CHECK_THROWS_WITH_AS(eval_value(parse_expr("log(0 - 1)"), {}), doctest::Contains("log"),
                         expr_domain_error);
    CHECK_THROWS_AS(eval_value(parse_expr("sqrt(0 - 1)"), {}), expr_domain_error);
    CHECK_THROWS_AS(eval_value(parse_expr("1/(X1 - 0)"), {}), expr_domain_error);  // div by 0
    CHECK_THROWS_AS(eval_jet2(parse_expr("sqrt(X1)"), {0.0, 0, 0, 0}), expr_domain_error);
}

TEST_CASE("expr: constant detection") {
    CHECK(is_constant_expr(parse_expr("3")));
    CHECK(is_constant_expr(parse_expr("2^2 + sin(1)")));
    CHECK_FALSE(is_constant_expr(parse_expr("3 + 0*X1")));  // structural, not algebraic
    CHECK_FALSE(is_constant_expr(parse_expr("X4")));
}

TEST_CASE("expr: jets of constants and variables are exact") {
    jet2 c = eval_jet2(parse_expr("7.25"), {1, 2, 3, 4});
    CHECK(c.v == 7.25);
    for (int i = 0; i < 4; ++i) {
        CHECK(c.g[i] == 0.0);
        for (int j = 0; j < 4; ++j) CHECK(c.h[i][j] == 0.0);
    }
    jet2 x3 = eval_jet2(parse_expr("X3"), {1, 2, 3, 4});
    CHECK(x3.v == 3.0);
    CHECK(x3.g[2] == 1.0);
    CHECK(x3.g[0] == 0.0);
}
