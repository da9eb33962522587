#include <cmath>

#include "circq/rng.hpp"
#include "circq/tensor.hpp"
#include "doctest.h"

using namespace circq;

namespace {

tensor4 random_tensor(std::uint64_t seed) {
    rng64 r(seed);
    tensor4 T;
    for (double& v : T.c) v = r.gauss();
    return T;
}

}  // namespace

TEST_CASE("tensor: q action and its order") {
    vec4 v{1, 2, 3, 4};
    CHECK(q_apply(v) == vec4{2, 3, 4, 1});
    CHECK(q_pow(v, 2) == vec4{3, 4, 1, 2});
    CHECK(q_pow(v, 4) == v);  // exact, pure permutation
    vec4 e1{1, 0, 0, 0};
    CHECK(q_pow(e1, 2) == vec4{0, 0, 1, 0});  // q^2 != +-id
    // e_a maps to e_{a-1 mod 4}: q e_1 = e_4 in 1-based labels.
    CHECK(q_apply(e1) == vec4{0, 0, 0, 1});
}

TEST_CASE("tensor: multilinear contraction") {
    tensor4 T = random_tensor(11);
    rng64 r(12);
    vec4 x, y, z, u, w;
    for (int i = 0; i < 4; ++i) {
        x[i] = r.gauss();
        y[i] = r.gauss();
        z[i] = r.gauss();
        u[i] = r.gauss();
        w[i] = r.gauss();
    }
    // Basis probes return single components.
    vec4 e[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(tensor_eval(T, e[i], e[j], e[2], e[3]) == T(i, j, 2, 3));
    // Linearity in the first slot.
    double lhs = tensor_eval(T, add(x, scale(w, 2.5)), y, z, u);
    double rhs = tensor_eval(T, x, y, z, u) + 2.5 * tensor_eval(T, w, y, z, u);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("tensor: q pullback shifts masked slots") {
    tensor4 T = random_tensor(13);
    // Full mask: T'(x,y,z,u) = T(qx,qy,qz,qu) as a component identity.
    tensor4 P = tensor_q_pullback(T, kMaskAllSlots);
    rng64 r(14);
    for (int t = 0; t < 8; ++t) {
        vec4 x{r.gauss(), r.gauss(), r.gauss(), r.gauss()};
        vec4 y{r.gauss(), r.gauss(), r.gauss(), r.gauss()};
        vec4 z{r.gauss(), r.gauss(), r.gauss(), r.gauss()};
        vec4 u{r.gauss(), r.gauss(), r.gauss(), r.gauss()};
        CHECK(tensor_eval(P, x, y, z, u) ==
              doctest::Approx(tensor_eval(T, q_apply(x), q_apply(y), q_apply(z), q_apply(u)))
                  .epsilon(1e-12));
    }
    // Last-pair mask only moves slots 3 and 4.
    tensor4 L = tensor_q_pullback(T, kMaskLastPair);
    vec4 x{0.3, -1, 2, 0.5}, y{1, 1, -2, 0.25}, z{-0.5, 0.75, 0.1, 1}, u{2, -0.3, 0.6, -1};
    CHECK(tensor_eval(L, x, y, z, u) ==
          doctest::Approx(tensor_eval(T, x, y, q_apply(z), q_apply(u))).epsilon(1e-12));
    // Four pullbacks along every slot return T exactly.
    tensor4 Q = T;
    for (int k = 0; k < 4; ++k) Q = tensor_q_pullback(Q, kMaskAllSlots);
    for (int i = 0; i < 256; ++i) CHECK(Q.c[i] == T.c[i]);
}

TEST_CASE("tensor: symmetry residual definitions") {
    tensor4 S{};
    // A tensor violating each symmetry by a known amount.
    S(0, 1, 2, 3) = 1.0;
    CHECK(antisym_first_pair_residual(S) == 1.0);   // S(1,0,2,3) = 0, sum = 1
    CHECK(antisym_second_pair_residual(S) == 1.0);  // S(0,1,3,2) = 0
    CHECK(pair_exchange_residual(S) == 1.0);        // S(2,3,0,1) = 0
    CHECK(first_bianchi_residual(S) == 1.0);        // lone cyclic term

    // An exactly antisymmetric construction has zero residuals.
    tensor4 A{};
    A(0, 1, 2, 3) = 2.0;
    A(1, 0, 2, 3) = -2.0;
    A(0, 1, 3, 2) = -2.0;
    A(1, 0, 3, 2) = 2.0;
    A(2, 3, 0, 1) = 2.0;
    A(3, 2, 0, 1) = -2.0;
    A(2, 3, 1, 0) = -2.0;
    A(3, 2, 1, 0) = 2.0;
    CHECK(antisym_first_pair_residual(A) == 0.0);
    CHECK(antisym_second_pair_residual(A) == 0.0);
    CHECK(pair_exchange_residual(A) == 0.0);
}

TEST_CASE("tensor: invariance residual vanishes exactly on pulled-back averages") {
    // Averaging T over the q-orbit produces a fully invariant tensor.
    tensor4 T = random_tensor(15);
    tensor4 avg{};
    tensor4 P = T;
    for (int k = 0; k < 4; ++k) {
        for (int i = 0; i < 256; ++i) avg.c[i] += 0.25 * P.c[i];
        P = tensor_q_pullback(P, kMaskAllSlots);
    }
    CHECK(invariance_residual(avg, kMaskAllSlots) < 1e-15 * max_abs(avg));
    CHECK(invariance_residual(T, kMaskAllSlots) > 0.1);  // generic tensor is not invariant
}
