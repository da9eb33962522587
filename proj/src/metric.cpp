#include "circq/metric.hpp"

#include <algorithm>
#include <cmath>

#include "circq/errors.hpp"
#include "circq/linalg.hpp"

namespace circq {

metric_field parse_metric_field(const std::string& A, const std::string& B,
                                const std::string& C) {
    return {parse_expr(A), parse_expr(B), parse_expr(C)};
}

std::array<double, 4> circulant_eigenvalues(double A, double B, double C) {
    return {A + 2.0 * B + C, A - C, A - C, A - 2.0 * B + C};
}

namespace {

mat4 circulant_from_row(double A, double B, double C) {
    const double row[4] = {A, B, C, B};
    mat4 g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g[i][j] = row[(j - i + 4) & 3];
    return g;
}

void validate_positivity(double A, double B, double C) {
    if (!(A > C && C > B && B > 0.0)) throw positivity_violation(A, C, B);
    // (ab) implies positivity; the explicit eigenvalues guard the edges.
    for (double lambda : circulant_eigenvalues(A, B, C))
        if (!(lambda > 0.0)) throw positivity_violation(A, C, B);
}

}  // namespace

metric_at_point metric_at(const metric_field& f, const vec4& p) {
    metric_at_point m;
    m.point = p;
    m.A = eval_value(f.A, p);
    m.B = eval_value(f.B, p);
    m.C = eval_value(f.C, p);
    validate_positivity(m.A, m.B, m.C);
    m.g = circulant_from_row(m.A, m.B, m.C);
    m.g_inv = inverse4(m.g);
    return m;
}

metric_at_point metric_at_constants(double A, double B, double C) {
    metric_at_point m;
    m.A = A;
    m.B = B;
    m.C = C;
    validate_positivity(A, B, C);
    m.g = circulant_from_row(A, B, C);
    m.g_inv = inverse4(m.g);
    return m;
}

double inner(const metric_at_point& m, const vec4& x, const vec4& y) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
        double row = 0.0;
        for (int j = 0; j < 4; ++j) row += m.g[i][j] * y[j];
        acc += x[i] * row;
    }
    return acc;
}

double isometry_residual(const metric_at_point& m, const vec4& x, const vec4& y) {
    return std::fabs(inner(m, q_apply(x), q_apply(y)) - inner(m, x, y));
}

double angle(const metric_at_point& m, const vec4& x, const vec4& y) {
    const double xx = inner(m, x, x);
    const double yy = inner(m, y, y);
    if (xx <= 0.0 || yy <= 0.0) throw zero_vector();
    const double c = inner(m, x, y) / std::sqrt(xx * yy);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

metric_jets circulant_jets(const metric_field& f, const vec4& p) {
    const jet2 jA = eval_jet2(f.A, p);
    const jet2 jB = eval_jet2(f.B, p);
    const jet2 jC = eval_jet2(f.C, p);
    validate_positivity(jA.v, jB.v, jC.v);

    metric_jets out;
    out.point = p;
    const jet2* row[4] = {&jA, &jB, &jC, &jB};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const jet2& e = *row[(j - i + 4) & 3];
            out.g[i][j] = e.v;
            for (int mth = 0; mth < 4; ++mth) {
                out.dg[mth][i][j] = e.g[mth];
                for (int nth = 0; nth < 4; ++nth) out.d2g[mth][nth][i][j] = e.h[mth][nth];
            }
        }
    return out;
}

metric_jet_field circulant_jet_field(const metric_field& f) {
    return [f](const vec4& p) { return circulant_jets(f, p); };
}

metric_jet_field euclidean_jet_field() {
    return [](const vec4& p) {
        metric_jets out;
        out.point = p;
        for (int i = 0; i < 4; ++i) out.g[i][i] = 1.0;
        return out;
    };
}

metric_jet_field round_sphere_jet_field() {
    // g_ij = f(X) delta_ij with f = 4 / (1+|X|^2)^2, expressed through the
    // expression engine so the metric jets reuse the same 2-jet propagation.
    static const expr_ptr f =
        parse_expr("4/((1+X1^2+X2^2+X3^2+X4^2)^2)");
    return [](const vec4& p) {
        const jet2 jf = eval_jet2(f, p);
        metric_jets out;
        out.point = p;
        for (int i = 0; i < 4; ++i) {
            out.g[i][i] = jf.v;
            for (int m = 0; m < 4; ++m) {
                out.dg[m][i][i] = jf.g[m];
                for (int n = 0; n < 4; ++n) out.d2g[m][n][i][i] = jf.h[m][n];
            }
        }
        return out;
    };
}

}  // namespace circq
