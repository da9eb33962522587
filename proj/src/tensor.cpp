#include "circq/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace circq {

double tensor_eval(const tensor4& T, const vec4& x, const vec4& y, const vec4& z, const vec4& u) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (x[i] == 0.0) continue;
        for (int j = 0; j < 4; ++j) {
            if (y[j] == 0.0) continue;
            double inner = 0.0;
            for (int k = 0; k < 4; ++k) {
                if (z[k] == 0.0) continue;
                double last = 0.0;
                for (int l = 0; l < 4; ++l) last += T(i, j, k, l) * u[l];
                inner += last * z[k];
            }
            acc += inner * x[i] * y[j];
        }
    }
    return acc;
}

tensor4 tensor_q_pullback(const tensor4& T, unsigned mask) {
    // q e_a = e_{(a+3) mod 4}, so a masked slot reads the shifted index.
    const auto shift = [](int a) { return (a + 3) & 3; };
    tensor4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    const int pi = (mask & 0b0001u) ? shift(i) : i;
                    const int pj = (mask & 0b0010u) ? shift(j) : j;
                    const int pk = (mask & 0b0100u) ? shift(k) : k;
                    const int pl = (mask & 0b1000u) ? shift(l) : l;
                    out(i, j, k, l) = T(pi, pj, pk, pl);
                }
    return out;
}

double max_abs(const tensor4& T) {
    double m = 0.0;
    for (double v : T.c) m = std::max(m, std::fabs(v));
    return m;
}

double antisym_first_pair_residual(const tensor4& T) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    m = std::max(m, std::fabs(T(i, j, k, l) + T(j, i, k, l)));
    return m;
}

double antisym_second_pair_residual(const tensor4& T) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    m = std::max(m, std::fabs(T(i, j, k, l) + T(i, j, l, k)));
    return m;
}

double pair_exchange_residual(const tensor4& T) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    m = std::max(m, std::fabs(T(i, j, k, l) - T(k, l, i, j)));
    return m;
}

double first_bianchi_residual(const tensor4& T) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    m = std::max(m, std::fabs(T(i, j, k, l) + T(j, k, i, l) + T(k, i, j, l)));
    return m;
}

double invariance_residual(const tensor4& T, unsigned mask) {
    const tensor4 P = tensor_q_pullback(T, mask);
    double m = 0.0;
    for (int n = 0; n < 256; ++n) m = std::max(m, std::fabs(T.c[n] - P.c[n]));
    return m;
}

}  // namespace circq
