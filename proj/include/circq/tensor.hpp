#pragma once

#include <array>
#include <cstdint>

namespace circq {

using vec4 = std::array<double, 4>;
using mat4 = std::array<std::array<double, 4>, 4>;

// Rank-4 covariant tensor on a 4-dim space, dense 256 components.
struct tensor4 {
    std::array<double, 256> c{};

    static constexpr int idx(int i, int j, int k, int l) {
        return ((i * 4 + j) * 4 + k) * 4 + l;
    }
    double& operator()(int i, int j, int k, int l) { return c[idx(i, j, k, l)]; }
    double operator()(int i, int j, int k, int l) const { return c[idx(i, j, k, l)]; }
};

// q maps e_i to e_{i-1 mod 4}; on components qx = (x^2, x^3, x^4, x^1).
inline vec4 q_apply(const vec4& v) {
    return {v[1], v[2], v[3], v[0]};
}

inline vec4 q_pow(const vec4& v, int k) {
    vec4 r = v;
    for (int i = 0; i < ((k % 4) + 4) % 4; ++i) r = q_apply(r);
    return r;
}

double tensor_eval(const tensor4& T, const vec4& x, const vec4& y, const vec4& z, const vec4& u);

// T'(x,y,z,u) = T(... with q applied on the slots in `mask` ...).
// mask is a bitset over slots 1..4: bit (s-1) set means slot s receives q.
tensor4 tensor_q_pullback(const tensor4& T, unsigned mask);

constexpr unsigned kMaskAllSlots = 0b1111u;
constexpr unsigned kMaskLastPair = 0b1100u;

double max_abs(const tensor4& T);

// Residuals of the algebraic curvature symmetries, absolute (caller decides
// how to normalize).
double antisym_first_pair_residual(const tensor4& T);
double antisym_second_pair_residual(const tensor4& T);
double pair_exchange_residual(const tensor4& T);
double first_bianchi_residual(const tensor4& T);

// max |T - pullback(T, mask)|.
double invariance_residual(const tensor4& T, unsigned mask);

// Small vector helpers used throughout.
inline double dot(const vec4& a, const vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}
inline vec4 add(const vec4& a, const vec4& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline vec4 sub(const vec4& a, const vec4& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline vec4 scale(const vec4& a, double s) {
    return {a[0] * s, a[1] * s, a[2] * s, a[3] * s};
}

}  // namespace circq
