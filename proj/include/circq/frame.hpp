#pragma once

#include <array>
#include <cstdint>

#include "circq/metric.hpp"
#include "circq/tensor.hpp"

namespace circq {

// Ordered q-basis {x, qx, q^2x, q^3x} with its Gram data.
struct frame_q {
    vec4 generator{};
    std::array<vec4, 4> vectors{};
    mat4 gram{};
    bool orthogonal = false;
    bool orthonormal = false;
};

// Coordinates of a vector in an orthonormal q-basis.
struct q_coords {
    double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0;
    double norm2() const {
        return alpha * alpha + beta * beta + gamma * gamma + delta * delta;
    }
    std::array<double, 4> as_array() const { return {alpha, beta, gamma, delta}; }
};

// cos of the angle between u and qu / q^2u, in orthonormal q-coordinates.
inline double cos_phi(const q_coords& c) {
    return c.alpha * c.beta + c.beta * c.gamma + c.gamma * c.delta + c.delta * c.alpha;
}
inline double cos_theta(const q_coords& c) {
    return 2.0 * (c.alpha * c.gamma + c.beta * c.delta);
}

// q acts on q-coordinates as the cyclic shift (a,b,c,d) -> (d,a,b,c).
inline q_coords q_shift(const q_coords& c) {
    return {c.delta, c.alpha, c.beta, c.gamma};
}

// ((x1-x3)^2 + (x2-x4)^2) * ((x1+x3)^2 - (x2+x4)^2); x induces a q-basis
// iff this is nonzero. Equals the determinant of the matrix with rows
// x, qx, q^2x, q^3x up to sign.
double lema2_product(const vec4& x);

// Tolerance: |product| > 1e-12 * (sum |x^i|)^4; the zero vector gives false.
bool induces_q_basis(const vec4& x);

frame_q build_frame(const metric_at_point& m, const vec4& generator);

// Generator x with g(x,qx) = g(x,q^2x) = 0 and unit norm; all six pairwise
// Gram products then vanish. Analytic warm start on the ansatz (a,b,a,d),
// multi-start Gauss-Newton fallback. Throws solve_failure.
frame_q orthogonal_q_basis(const metric_at_point& m);

// The warm-start generator before normalization, with components (1, b, 1, d)
// and b+d the root (-(A+C)+sqrt((A+C)^2-4B^2))/B. Exposed for verification.
vec4 orthogonal_generator_warm_start(double A, double B, double C);

// Coefficients of u in the orthonormal frame f; verifies reconstruction.
// Throws frame_not_orthonormal.
q_coords coords_in_frame(const frame_q& f, const vec4& u, const metric_at_point& m);

vec4 from_coords(const frame_q& f, const q_coords& c);

// Unit (alpha,beta,gamma,delta) with cos_phi = target_cos_phi and
// cos_theta = target_cos_theta, residuals <= 1e-10; randomized over the
// solution set by seed. 64 restarts of a min-norm Newton iteration.
// Throws infeasible with the best residual reached.
q_coords sample_with_angles(double target_cos_phi, double target_cos_theta,
                            std::uint64_t rng_seed);

}  // namespace circq
