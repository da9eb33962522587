#include "circq/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "circq/errors.hpp"
#include "circq/linalg.hpp"
#include "circq/rng.hpp"

namespace circq {

double lema2_product(const vec4& x) {
    const double f1 = (x[0] - x[2]) * (x[0] - x[2]) + (x[1] - x[3]) * (x[1] - x[3]);
    const double f2 = (x[0] + x[2]) * (x[0] + x[2]) - (x[1] + x[3]) * (x[1] + x[3]);
    return f1 * f2;
}

bool induces_q_basis(const vec4& x) {
    const double s = std::fabs(x[0]) + std::fabs(x[1]) + std::fabs(x[2]) + std::fabs(x[3]);
    if (s == 0.0) return false;
    return std::fabs(lema2_product(x)) > 1e-12 * s * s * s * s;
}

frame_q build_frame(const metric_at_point& m, const vec4& generator) {
    frame_q f;
    f.generator = generator;
    f.vectors[0] = generator;
    for (int k = 1; k < 4; ++k) f.vectors[k] = q_apply(f.vectors[k - 1]);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) f.gram[i][j] = inner(m, f.vectors[i], f.vectors[j]);
    double off = 0.0, diag_dev = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j)
                diag_dev = std::max(diag_dev, std::fabs(f.gram[i][j] - 1.0));
            else
                off = std::max(off, std::fabs(f.gram[i][j]));
        }
    f.orthogonal = off <= 1e-10;
    f.orthonormal = f.orthogonal && diag_dev <= 1e-10;
    return f;
}

vec4 orthogonal_generator_warm_start(double A, double B, double C) {
    // Ansatz x = (a, b, a, d) with a = 1 and s = b + d:
    //   g(x, qx)   = B s^2 + 2 a (A+C) s + 4 B a^2 = 0,
    //   g(x, q^2x) = 2 (A+C) a^2 + 4 a B s + C s^2 + 2 (A-C) b d = 0,
    // so s is a root of the first quadratic and bd follows linearly. Both
    // discriminants are positive whenever A > C > B > 0.
    const double a = 1.0;
    const double AC = A + C;
    const double disc_s = AC * AC - 4.0 * B * B;
    if (disc_s < 0.0) throw solve_failure(disc_s);
    const double s = (-AC + std::sqrt(disc_s)) / B;
    const double bd = -(2.0 * AC * a * a + 4.0 * a * B * s + C * s * s) / (2.0 * (A - C));
    const double disc_t = s * s - 4.0 * bd;
    if (disc_t < 0.0) throw solve_failure(disc_t);
    const double b = 0.5 * (s + std::sqrt(disc_t));
    const double d = 0.5 * (s - std::sqrt(disc_t));
    return {a, b, a, d};
}

namespace {

// Gauss-Newton on F(x) = (g(x,qx), g(x,q^2x), g(x,x)-1), min-norm step.
bool polish_generator(const metric_at_point& m, vec4& x) {
    for (int it = 0; it < 80; ++it) {
        const vec4 qx = q_apply(x);
        const vec4 q2x = q_apply(qx);
        const double f0 = inner(m, x, qx);
        const double f1 = inner(m, x, q2x);
        const double f2 = inner(m, x, x) - 1.0;
        const double fn = std::max({std::fabs(f0), std::fabs(f1), std::fabs(f2)});
        if (fn < 1e-13) return true;

        // d/dx g(x, q^k x) = (g + g^T composed with q^k) x; with symmetric g
        // the i-th partial is sum_j g_ij (q^k x)_j + sum_j g_{sigma^k(i) j} x_j
        // where sigma is the index shift of q.
        double J[3][4];
        for (int i = 0; i < 4; ++i) {
            vec4 ei{};
            ei[i] = 1.0;
            const vec4 qei = q_apply(ei);
            const vec4 q2ei = q_apply(qei);
            J[0][i] = inner(m, ei, qx) + inner(m, x, qei);
            J[1][i] = inner(m, ei, q2x) + inner(m, x, q2ei);
            J[2][i] = 2.0 * inner(m, ei, x);
        }

        double jjt[9];
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                double s = 0.0;
                for (int k = 0; k < 4; ++k) s += J[r][k] * J[c][k];
                jjt[r * 3 + c] = s;
            }
        double rhs[3] = {-f0, -f1, -f2};
        try {
            solve_small(3, jjt, rhs);
        } catch (const singular_matrix&) {
            return false;
        }
        for (int i = 0; i < 4; ++i) {
            double step = 0.0;
            for (int r = 0; r < 3; ++r) step += J[r][i] * rhs[r];
            x[i] += step;
        }
    }
    return false;
}

double generator_residual(const metric_at_point& m, const vec4& x) {
    const vec4 qx = q_apply(x);
    const vec4 q2x = q_apply(qx);
    return std::max({std::fabs(inner(m, x, qx)), std::fabs(inner(m, x, q2x)),
                     std::fabs(inner(m, x, x) - 1.0)});
}

}  // namespace

frame_q orthogonal_q_basis(const metric_at_point& m) {
    double best = std::numeric_limits<double>::infinity();
    rng64 rng(derive_seed(0x0f2a6e1d5c3b4a99ull, 0));
    for (int attempt = 0; attempt < 64; ++attempt) {
        vec4 x;
        if (attempt == 0) {
            x = orthogonal_generator_warm_start(m.A, m.B, m.C);
            const double n = std::sqrt(inner(m, x, x));
            for (double& v : x) v /= n;
        } else {
            for (double& v : x) v = rng.gauss();
            const double n = std::sqrt(inner(m, x, x));
            for (double& v : x) v /= n;
        }
        if (polish_generator(m, x)) {
            const double n = std::sqrt(inner(m, x, x));
            for (double& v : x) v /= n;
            frame_q f = build_frame(m, x);
            if (f.orthonormal && induces_q_basis(x)) return f;
            best = std::min(best, generator_residual(m, x));
        } else {
            best = std::min(best, generator_residual(m, x));
        }
    }
    throw solve_failure(best);
}

q_coords coords_in_frame(const frame_q& f, const vec4& u, const metric_at_point& m) {
    if (!f.orthonormal) throw frame_not_orthonormal();
    q_coords c;
    c.alpha = inner(m, u, f.vectors[0]);
    c.beta = inner(m, u, f.vectors[1]);
    c.gamma = inner(m, u, f.vectors[2]);
    c.delta = inner(m, u, f.vectors[3]);
    const vec4 r = sub(u, from_coords(f, c));
    const double res2 = inner(m, r, r);
    if (!(res2 <= 1e-20 * std::max(1.0, inner(m, u, u))))
        throw circq_error("frame reconstruction residual too large: " +
                          std::to_string(std::sqrt(std::max(res2, 0.0))));
    return c;
}

vec4 from_coords(const frame_q& f, const q_coords& c) {
    vec4 u{};
    const std::array<double, 4> w = c.as_array();
    for (int k = 0; k < 4; ++k) u = add(u, scale(f.vectors[k], w[k]));
    return u;
}

q_coords sample_with_angles(double target_cos_phi, double target_cos_theta,
                            std::uint64_t rng_seed) {
    double best = std::numeric_limits<double>::infinity();
    rng64 rng(derive_seed(rng_seed, 0x5eedull));
    for (int attempt = 0; attempt < 64; ++attempt) {
        double c[4];
        double nrm2 = 0.0;
        for (double& v : c) {
            v = rng.gauss();
            nrm2 += v * v;
        }
        const double inv = 1.0 / std::sqrt(nrm2);
        for (double& v : c) v *= inv;

        bool converged = false;
        for (int it = 0; it < 60; ++it) {
            const double a = c[0], b = c[1], g = c[2], d = c[3];
            const double F0 = a * a + b * b + g * g + d * d - 1.0;
            const double F1 = a * b + b * g + g * d + d * a - target_cos_phi;
            const double F2 = 2.0 * (a * g + b * d) - target_cos_theta;
            const double fn = std::max({std::fabs(F0), std::fabs(F1), std::fabs(F2)});
            if (fn < 1e-13) {
                converged = true;
                break;
            }
            const double J[3][4] = {
                {2 * a, 2 * b, 2 * g, 2 * d},
                {b + d, a + g, b + d, a + g},
                {2 * g, 2 * d, 2 * a, 2 * b},
            };
            double jjt[9];
            for (int r = 0; r < 3; ++r)
                for (int cc = 0; cc < 3; ++cc) {
                    double s = 0.0;
                    for (int k = 0; k < 4; ++k) s += J[r][k] * J[cc][k];
                    jjt[r * 3 + cc] = s;
                }
            double rhs[3] = {-F0, -F1, -F2};
            try {
                solve_small(3, jjt, rhs);
            } catch (const singular_matrix&) {
                break;
            }
            for (int i = 0; i < 4; ++i) {
                double step = 0.0;
                for (int r = 0; r < 3; ++r) step += J[r][i] * rhs[r];
                c[i] += step;
            }
        }
        const double a = c[0], b = c[1], g = c[2], d = c[3];
        const double r0 = std::fabs(a * a + b * b + g * g + d * d - 1.0);
        const double r1 = std::fabs(a * b + b * g + g * d + d * a - target_cos_phi);
        const double r2 = std::fabs(2.0 * (a * g + b * d) - target_cos_theta);
        const double res = std::max({r0, r1, r2});
        best = std::min(best, res);
        if (converged && res <= 1e-10) return {a, b, g, d};
    }
    throw infeasible(target_cos_phi, target_cos_theta, best);
}

}  // namespace circq
