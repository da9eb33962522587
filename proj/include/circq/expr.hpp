#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "circq/tensor.hpp"

namespace circq {

enum class expr_kind {
    constant,
    variable,
    neg,
    sin_fn,
    cos_fn,
    exp_fn,
    log_fn,
    sqrt_fn,
    add,
    sub,
    mul,
    div,
    pow
};

struct expr_node;
using expr_ptr = std::shared_ptr<const expr_node>;

// Immutable AST node. pow stores its constant exponent in children[1]
// (a constant node); the parser enforces that restriction.
struct expr_node {
    expr_kind kind;
    double value = 0.0;  // constant payload
    int var_index = 0;   // 1..4 for variable
    std::vector<expr_ptr> children;
};

expr_ptr make_constant(double v);
expr_ptr make_variable(int index_1_to_4);  // throws circq_error outside 1..4
expr_ptr make_unary(expr_kind k, expr_ptr child);
expr_ptr make_binary(expr_kind k, expr_ptr lhs, expr_ptr rhs);

// Grammar:
//   expr   := term (("+"|"-") term)* ;
//   term   := factor (("*"|"/") factor)* ;
//   factor := "-" factor | power ;
//   power  := atom ("^" number)? ;
//   atom   := number | var | func "(" expr ")" | "(" expr ")" ;
//   var    := "X1".."X4" ;  func := sin|cos|exp|log|sqrt ;
// Throws parse_error with a byte offset.
expr_ptr parse_expr(std::string_view text);

// Canonical serialization; parse(print(e)) evaluates bit-identically to e.
std::string print_expr(const expr_ptr& e);

// Value, gradient and Hessian at p. Hessian symmetric by construction.
struct jet2 {
    double v = 0.0;
    std::array<double, 4> g{};
    std::array<std::array<double, 4>, 4> h{};
};

jet2 eval_jet2(const expr_ptr& e, const vec4& p);
double eval_value(const expr_ptr& e, const vec4& p);

// True when no variable occurs anywhere in the tree.
bool is_constant_expr(const expr_ptr& e);

}  // namespace circq
