#include "circq/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "circq/errors.hpp"

namespace circq {

expr_ptr make_constant(double v) {
    auto n = std::make_shared<expr_node>();
    n->kind = expr_kind::constant;
    n->value = v;
    return n;
}

expr_ptr make_variable(int index_1_to_4) {
    if (index_1_to_4 < 1 || index_1_to_4 > 4)
        throw circq_error("variable outside X1..X4: index " + std::to_string(index_1_to_4));
    auto n = std::make_shared<expr_node>();
    n->kind = expr_kind::variable;
    n->var_index = index_1_to_4;
    return n;
}

expr_ptr make_unary(expr_kind k, expr_ptr child) {
    auto n = std::make_shared<expr_node>();
    n->kind = k;
    n->children.push_back(std::move(child));
    return n;
}

expr_ptr make_binary(expr_kind k, expr_ptr lhs, expr_ptr rhs) {
    if (k == expr_kind::pow && rhs->kind != expr_kind::constant)
        throw circq_error("non-constant exponent");
    auto n = std::make_shared<expr_node>();
    n->kind = k;
    n->children.push_back(std::move(lhs));
    n->children.push_back(std::move(rhs));
    return n;
}

// ==== parser ================================================================

namespace {

class parser {
  public:
    explicit parser(std::string_view text) : text_(text) {}

    expr_ptr run() {
        expr_ptr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size())
            throw parse_error("syntax error: unexpected trailing input", pos_);
        return e;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool consume(char c) {
        if (peek_is(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!consume(c))
            throw parse_error(std::string("syntax error: expected ") + what, pos_);
    }

    expr_ptr parse_sum() {
        expr_ptr e = parse_term();
        for (;;) {
            if (consume('+'))
                e = make_binary(expr_kind::add, e, parse_term());
            else if (consume('-'))
                e = make_binary(expr_kind::sub, e, parse_term());
            else
                return e;
        }
    }

    expr_ptr parse_term() {
        expr_ptr e = parse_factor();
        for (;;) {
            if (consume('*'))
                e = make_binary(expr_kind::mul, e, parse_factor());
            else if (consume('/'))
                e = make_binary(expr_kind::div, e, parse_factor());
            else
                return e;
        }
    }

    expr_ptr parse_factor() {
        if (consume('-')) return make_unary(expr_kind::neg, parse_factor());
        return parse_power();
    }

    expr_ptr parse_power() {
        expr_ptr base = parse_atom();
        if (consume('^')) {
            skip_ws();
            if (pos_ >= text_.size() ||
                !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw parse_error("non-constant exponent: expected a number literal after '^'",
                                  pos_);
            return make_binary(expr_kind::pow, base, make_constant(parse_number()));
        }
        return base;
    }

    expr_ptr parse_atom() {
        skip_ws();
        if (pos_ >= text_.size())
            throw parse_error("syntax error: unexpected end of input", pos_);
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)))
            return make_constant(parse_number());
        if (c == '(') {
            ++pos_;
            expr_ptr e = parse_sum();
            expect(')', "')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        throw parse_error(std::string("syntax error: unexpected character '") + c + "'", pos_);
    }

    expr_ptr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isalnum(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        const std::string_view id = text_.substr(start, pos_ - start);
        if (id == "X1" || id == "X2" || id == "X3" || id == "X4")
            return make_variable(id[1] - '0');
        expr_kind k;
        if (id == "sin")
            k = expr_kind::sin_fn;
        else if (id == "cos")
            k = expr_kind::cos_fn;
        else if (id == "exp")
            k = expr_kind::exp_fn;
        else if (id == "log")
            k = expr_kind::log_fn;
        else if (id == "sqrt")
            k = expr_kind::sqrt_fn;
        else
            throw parse_error("unknown identifier '" + std::string(id) + "'", start);
        expect('(', "'(' after function name");
        expr_ptr arg = parse_sum();
        expect(')', "')'");
        return make_unary(k, arg);
    }

    // number := digits ("." digits)? ([eE] [+-]? digits)?
    double parse_number() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start)
            throw parse_error("syntax error: expected a number", pos_);
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            const std::size_t frac = pos_;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ == frac)
                throw parse_error("syntax error: expected digits after '.'", pos_);
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            const std::size_t ex = pos_;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ == ex)
                throw parse_error("syntax error: expected digits in exponent", pos_);
        }
        const std::string tok(text_.substr(start, pos_ - start));
        return std::strtod(tok.c_str(), nullptr);
    }
};

}  // namespace

expr_ptr parse_expr(std::string_view text) { return parser(text).run(); }

// ==== printer ===============================================================

namespace {

void print_rec(const expr_ptr& e, std::string& out) {
    switch (e->kind) {
        case expr_kind::constant: {
            char buf[40];
            if (e->value < 0.0) {
                std::snprintf(buf, sizeof buf, "(0-%.17g)", -e->value);
            } else {
                std::snprintf(buf, sizeof buf, "%.17g", e->value);
            }
            out += buf;
            return;
        }
        case expr_kind::variable:
            out += 'X';
            out += static_cast<char>('0' + e->var_index);
            return;
        case expr_kind::neg:
            out += "(-";
            print_rec(e->children[0], out);
            out += ')';
            return;
        case expr_kind::sin_fn:
        case expr_kind::cos_fn:
        case expr_kind::exp_fn:
        case expr_kind::log_fn:
        case expr_kind::sqrt_fn: {
            const char* name = e->kind == expr_kind::sin_fn   ? "sin"
                               : e->kind == expr_kind::cos_fn ? "cos"
                               : e->kind == expr_kind::exp_fn ? "exp"
                               : e->kind == expr_kind::log_fn ? "log"
                                                              : "sqrt";
            out += name;
            out += '(';
            print_rec(e->children[0], out);
            out += ')';
            return;
        }
        case expr_kind::add:
        case expr_kind::sub:
        case expr_kind::mul:
        case expr_kind::div: {
            // Always parenthesized: preserves the evaluation order bitwise.
            const char op = e->kind == expr_kind::add   ? '+'
                            : e->kind == expr_kind::sub ? '-'
                            : e->kind == expr_kind::mul ? '*'
                                                        : '/';
            out += '(';
            print_rec(e->children[0], out);
            out += op;
            print_rec(e->children[1], out);
            out += ')';
            return;
        }
        case expr_kind::pow: {
            out += '(';
            print_rec(e->children[0], out);
            out += '^';
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", e->children[1]->value);
            out += buf;
            out += ')';
            return;
        }
    }
}

}  // namespace

std::string print_expr(const expr_ptr& e) {
    std::string out;
    print_rec(e, out);
    return out;
}

// ==== 2-jet evaluation ======================================================

namespace {

jet2 jet_const(double v) {
    jet2 j;
    j.v = v;
    return j;
}

// h(f(u)) with f'(u.v)=d1, f''(u.v)=d2: grad = d1*u.g,
// hess = d1*u.h + d2*u.g (x) u.g. Symmetry is inherited from u.h.
jet2 chain(const jet2& u, double v, double d1, double d2) {
    jet2 r;
    r.v = v;
    for (int i = 0; i < 4; ++i) r.g[i] = d1 * u.g[i];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.h[i][j] = d1 * u.h[i][j] + d2 * u.g[i] * u.g[j];
    return r;
}

jet2 jet_add(const jet2& a, const jet2& b, double sign) {
    jet2 r;
    r.v = a.v + sign * b.v;
    for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] + sign * b.g[i];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.h[i][j] = a.h[i][j] + sign * b.h[i][j];
    return r;
}

jet2 jet_mul(const jet2& a, const jet2& b) {
    jet2 r;
    r.v = a.v * b.v;
    for (int i = 0; i < 4; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            r.h[i][j] = a.h[i][j] * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i] + a.v * b.h[i][j];
    return r;
}

bool is_integer(double c) { return std::rint(c) == c && std::fabs(c) < 9.0e15; }

double ipow(double base, long long n) {
    if (n < 0) return 1.0 / ipow(base, -n);
    double r = 1.0, b = base;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

jet2 eval_rec(const expr_ptr& e, const vec4& p) {
    switch (e->kind) {
        case expr_kind::constant:
            return jet_const(e->value);
        case expr_kind::variable: {
            jet2 j;
            j.v = p[e->var_index - 1];
            j.g[e->var_index - 1] = 1.0;
            return j;
        }
        case expr_kind::neg: {
            const jet2 u = eval_rec(e->children[0], p);
            return chain(u, -u.v, -1.0, 0.0);
        }
        case expr_kind::sin_fn: {
            const jet2 u = eval_rec(e->children[0], p);
            return chain(u, std::sin(u.v), std::cos(u.v), -std::sin(u.v));
        }
        case expr_kind::cos_fn: {
            const jet2 u = eval_rec(e->children[0], p);
            return chain(u, std::cos(u.v), -std::sin(u.v), -std::cos(u.v));
        }
        case expr_kind::exp_fn: {
            const jet2 u = eval_rec(e->children[0], p);
            const double v = std::exp(u.v);
            return chain(u, v, v, v);
        }
        case expr_kind::log_fn: {
            const jet2 u = eval_rec(e->children[0], p);
            if (u.v <= 0.0)
                throw expr_domain_error("log of non-positive value", print_expr(e));
            return chain(u, std::log(u.v), 1.0 / u.v, -1.0 / (u.v * u.v));
        }
        case expr_kind::sqrt_fn: {
            const jet2 u = eval_rec(e->children[0], p);
            if (u.v <= 0.0)
                throw expr_domain_error("sqrt of non-positive value (the 2-jet requires a strictly positive argument)",
                                        print_expr(e));
            const double s = std::sqrt(u.v);
            return chain(u, s, 0.5 / s, -0.25 / (s * u.v));
        }
        case expr_kind::add:
            return jet_add(eval_rec(e->children[0], p), eval_rec(e->children[1], p), 1.0);
        case expr_kind::sub:
            return jet_add(eval_rec(e->children[0], p), eval_rec(e->children[1], p), -1.0);
        case expr_kind::mul:
            return jet_mul(eval_rec(e->children[0], p), eval_rec(e->children[1], p));
        case expr_kind::div: {
            const jet2 a = eval_rec(e->children[0], p);
            const jet2 b = eval_rec(e->children[1], p);
            if (b.v == 0.0)
                throw expr_domain_error("division by zero", print_expr(e));
            const double inv = 1.0 / b.v;
            return jet_mul(a, chain(b, inv, -inv * inv, 2.0 * inv * inv * inv));
        }
        case expr_kind::pow: {
            const jet2 u = eval_rec(e->children[0], p);
            const double c = e->children[1]->value;
            if (c == 0.0) return jet_const(1.0);
            if (c == 1.0) return u;
            if (is_integer(c)) {
                const long long n = static_cast<long long>(c);
                if (u.v == 0.0 && n < 0)
                    throw expr_domain_error("zero base with negative exponent", print_expr(e));
                const double v = ipow(u.v, n);
                const double d1 = c * ipow(u.v, n - 1);
                const double d2 = c * (c - 1.0) * ipow(u.v, n - 2);
                return chain(u, v, d1, d2);
            }
            if (u.v <= 0.0)
                throw expr_domain_error("fractional power of non-positive base", print_expr(e));
            const double v = std::pow(u.v, c);
            return chain(u, v, c * v / u.v, c * (c - 1.0) * v / (u.v * u.v));
        }
    }
    throw circq_error("unreachable expression kind");
}

}  // namespace

jet2 eval_jet2(const expr_ptr& e, const vec4& p) { return eval_rec(e, p); }

double eval_value(const expr_ptr& e, const vec4& p) { return eval_rec(e, p).v; }

bool is_constant_expr(const expr_ptr& e) {
    if (e->kind == expr_kind::variable) return false;
    for (const auto& c : e->children)
        if (!is_constant_expr(c)) return false;
    return true;
}

}  // namespace circq
