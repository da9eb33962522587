#pragma once

#include <array>
#include <functional>

#include "circq/expr.hpp"
#include "circq/tensor.hpp"

namespace circq {

// The circulant metric: first row (A, B, C, B), each row the previous one
// shifted right. The positivity condition is A > C > B > 0.
struct metric_field {
    expr_ptr A, B, C;
};

metric_field parse_metric_field(const std::string& A, const std::string& B,
                                const std::string& C);

struct metric_at_point {
    mat4 g{};
    mat4 g_inv{};
    vec4 point{};
    double A = 0.0, B = 0.0, C = 0.0;
};

// Closed-form eigenvalues of the circulant matrix with first row (A,B,C,B):
// {A+2B+C, A-C, A-C, A-2B+C}.
std::array<double, 4> circulant_eigenvalues(double A, double B, double C);

// Assembles g at p, validates A > C > B > 0 (throws positivity_violation)
// and the eigenvalue guard, computes g_inv.
metric_at_point metric_at(const metric_field& f, const vec4& p);

// Constant-coefficient convenience.
metric_at_point metric_at_constants(double A, double B, double C);

double inner(const metric_at_point& m, const vec4& x, const vec4& y);

// |g(qx, qy) - g(x, y)|; zero up to rounding for every circulant metric.
double isometry_residual(const metric_at_point& m, const vec4& x, const vec4& y);

// Angle between x and y; the cosine is clamped into [-1, 1].
// Throws zero_vector.
double angle(const metric_at_point& m, const vec4& x, const vec4& y);

// Value, first and second derivatives of g at a point; the input format of
// the curvature engine. dg[m] is the matrix of d_m g_ij.
struct metric_jets {
    mat4 g{};
    std::array<mat4, 4> dg{};
    std::array<std::array<mat4, 4>, 4> d2g{};
    vec4 point{};
};

using metric_jet_field = std::function<metric_jets(const vec4&)>;

// Jets of the circulant metric, assembled from the 2-jets of A, B, C.
metric_jets circulant_jets(const metric_field& f, const vec4& p);
metric_jet_field circulant_jet_field(const metric_field& f);

// Test hooks for the sign convention: these are not circulant.
metric_jet_field euclidean_jet_field();
// g_ij = 4 delta_ij / (1+|X|^2)^2, the unit round sphere in stereographic
// coordinates; sectional curvature is +1 everywhere.
metric_jet_field round_sphere_jet_field();

}  // namespace circq
