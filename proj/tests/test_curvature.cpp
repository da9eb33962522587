#include <cmath>

#include "circq/curvature.hpp"
#include "circq/errors.hpp"
#include "circq/linalg.hpp"
#include "circq/rng.hpp"
#include "doctest.h"

using namespace circq;

TEST_CASE("curvature: constant coefficients give an exactly flat metric") {
    metric_field f = parse_metric_field("3", "1", "2");
    curvature_at_point R = riemann(circulant_jet_field(f), vec4{0.4, -1.0, 2.0, 0.3});
    CHECK(max_abs(R.R) <= 1e-15);
    CHECK(R.source == curvature_source::from_metric);
}

TEST_CASE("curvature: christoffels of a conformal metric match the closed form") {
    // g = f delta with f = 4/(1+|x|^2)^2 gives
    // Gamma^k_ij = (d_jk h_i + d_ik h_j - d_ij h_k)/2, h_i = -4 x_i/(1+|x|^2).
    const vec4 p{0.1, 0.2, -0.3, 0.4};
    christoffel_symbols cs = christoffels(round_sphere_jet_field(), p);
    const double n2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
    vec4 h;
    for (int i = 0; i < 4; ++i) h[i] = -4.0 * p[i] / (1.0 + n2);
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                double want = 0.5 * ((j == k ? h[i] : 0.0) + (i == k ? h[j] : 0.0) -
                                     (i == j ? h[k] : 0.0));
                CHECK(cs.gamma[k][i][j] == doctest::Approx(want).epsilon(1e-12).scale(1.0));
                CHECK(cs.gamma[k][i][j] == cs.gamma[k][j][i]);  // exact lower symmetry
            }
}

TEST_CASE("curvature: round sphere has sectional curvature +1 (sign pin)") {
    metric_jet_field field = round_sphere_jet_field();
    rng64 r(51);
    for (int t = 0; t < 20; ++t) {
        vec4 p{r.uniform(-0.8, 0.8), r.uniform(-0.8, 0.8), r.uniform(-0.8, 0.8),
               r.uniform(-0.8, 0.8)};
        metric_jets jets = field(p);
        metric_at_point m;
        m.g = jets.g;
        m.g_inv = inverse4(jets.g);
        m.point = p;
        curvature_at_point R = riemann(field, p);
        vec4 x{r.gauss(), r.gauss(), r.gauss(), r.gauss()};
        vec4 y{r.gauss(), r.gauss(), r.gauss(), r.gauss()};
        CHECK(sectional(m, R, x, y) == doctest::Approx(1.0).epsilon(1e-9));
        // Component form R = g(x,z)g(y,u) - g(x,u)g(y,z) for kappa = +1.
        double worst = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) {
                        double want = jets.g[i][k] * jets.g[j][l] - jets.g[i][l] * jets.g[j][k];
                        worst = std::max(worst, std::abs(R.R(i, j, k, l) - want));
                    }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("curvature: symmetry residuals of a variable circulant metric") {
    metric_field f = parse_metric_field("3 + 0.2*sin(X1 + X2 + X3 + X4)",
                                        "1 + 0.1*cos(X2 - X4)", "2 + 0.1*sin(X3)");
    rng64 r(52);
    for (int t = 0; t < 10; ++t) {
        vec4 p{r.uniform(-0.5, 0.5), r.uniform(-0.5, 0.5), r.uniform(-0.5, 0.5),
               r.uniform(-0.5, 0.5)};
        curvature_at_point R = riemann(circulant_jet_field(f), p);
        double scale = std::max(max_abs(R.R), 1e-30);
        CHECK(max_abs(R.R) > 1e-4);  // genuinely curved
        CHECK(R.antisym1 / scale < 1e-7);
        CHECK(R.antisym2 / scale < 1e-7);
        CHECK(R.pair_exchange / scale < 1e-7);
        CHECK(R.bianchi / scale < 1e-7);
    }
}

TEST_CASE("curvature: constant-curvature tensor and sectional invariance") {
    metric_at_point m = metric_at_constants(3.0, 1.0, 2.0);
    curvature_at_point R = constant_curvature(m, 0.7);
    CHECK(R.inv_class == invariance_class::full_q);
    CHECK(invariance_residual(R.R, kMaskAllSlots) < 1e-12 * max_abs(R.R));
    rng64 r(53);
    for (int t = 0; t < 20; ++t) {
        vec4 x{r.gauss(), r.gauss(), r.gauss(), r.gauss()};
        vec4 y{r.gauss(), r.gauss(), r.gauss(), r.gauss()};
        CHECK(sectional(m, R, x, y) == doctest::Approx(0.7).epsilon(1e-10));
        // The plane, not the spanning pair, determines mu.
        vec4 x2 = add(scale(x, 1.7), scale(y, -0.4));
        vec4 y2 = add(scale(x, 0.3), scale(y, 2.2));
        CHECK(sectional(m, R, x2, y2) == doctest::Approx(sectional(m, R, x, y)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(sectional(m, R, vec4{1, 2, 3, 4}, scale(vec4{1, 2, 3, 4}, 2.0)),
                    degenerate_plane);
}

TEST_CASE("curvature: invariant space dimensions 20 / 6 / 1") {
    CHECK(invariant_space_dimension(invariance_class::none) == 20);
    CHECK(invariant_space_dimension(invariance_class::full_q) == 6);
    CHECK(invariant_space_dimension(invariance_class::last_pair_q) == 1);
}

TEST_CASE("curvature: sampled synthetic tensors satisfy their constraints") {
    metric_at_point m = metric_at_constants(3.0, 1.0, 2.0);
    for (std::uint64_t seed = 1; seed <= 16; ++seed) {
        curvature_at_point T = sample_invariant_tensor(m, invariance_class::full_q, seed);
        CHECK(T.nullspace_dimension == 6);
        double s = max_abs(T.R);
        CHECK(s > 1e-3);  // unit Frobenius norm spreads over entries
        CHECK(antisym_first_pair_residual(T.R) < 1e-12);
        CHECK(antisym_second_pair_residual(T.R) < 1e-12);
        CHECK(pair_exchange_residual(T.R) < 1e-12);
        CHECK(first_bianchi_residual(T.R) < 1e-12);
        CHECK(invariance_residual(T.R, kMaskAllSlots) < 1e-12);

        curvature_at_point L = sample_invariant_tensor(m, invariance_class::last_pair_q, seed);
        CHECK(L.nullspace_dimension == 1);
        CHECK(antisym_first_pair_residual(L.R) < 1e-12);
        CHECK(first_bianchi_residual(L.R) < 1e-12);
        CHECK(invariance_residual(L.R, kMaskLastPair) < 1e-12);

        curvature_at_point N = sample_invariant_tensor(m, invariance_class::none, seed);
        CHECK(N.nullspace_dimension == 20);
        CHECK(antisym_first_pair_residual(N.R) < 1e-12);
        CHECK(first_bianchi_residual(N.R) < 1e-12);
    }
    // Different seeds give different tensors (the sampler actually samples).
    curvature_at_point a = sample_invariant_tensor(m, invariance_class::full_q, 1);
    curvature_at_point b = sample_invariant_tensor(m, invariance_class::full_q, 2);
    double diff = 0.0;
    for (int i = 0; i < 256; ++i) diff = std::max(diff, std::abs(a.R.c[i] - b.R.c[i]));
    CHECK(diff > 1e-3);
}

TEST_CASE("curvature: full-q samples satisfy the two-step consequence") {
    // Full invariance implies R(q2x, q2y, q2z, q2u) = R(x,y,z,u).
    metric_at_point m = metric_at_constants(3.0, 1.0, 2.0);
    curvature_at_point T = sample_invariant_tensor(m, invariance_class::full_q, 9);
    tensor4 twice = tensor_q_pullback(tensor_q_pullback(T.R, kMaskAllSlots), kMaskAllSlots);
    double worst = 0.0;
    for (int i = 0; i < 256; ++i) worst = std::max(worst, std::abs(twice.c[i] - T.R.c[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("curvature: from-metric tensors land in the none-class constraint set") {
    metric_field f = parse_metric_field("3 + 0.2*sin(X1 + X2)", "1", "2");
    curvature_at_point R = riemann(circulant_jet_field(f), vec4{0.2, 0.1, -0.4, 0.5});
    // The four algebraic identities hold; q-invariance generally does not.
    double s = std::max(max_abs(R.R), 1e-30);
    CHECK(antisym_first_pair_residual(R.R) / s < 1e-9);
    CHECK(first_bianchi_residual(R.R) / s < 1e-9);
    CHECK(invariance_residual(R.R, kMaskAllSlots) / s > 1e-3);
}
