#include <cmath>
#include <utility>
#include <vector>

#include "circq/errors.hpp"
#include "circq/rng.hpp"
#include "circq/theorems.hpp"
#include "doctest.h"

using namespace circq;

namespace {

metric_at_point base_metric() { return metric_at_constants(3.0, 1.0, 2.0); }

metric_at_point random_metric(rng64& r) {
    double B = r.uniform(0.2, 1.5);
    double C = B + r.uniform(0.1, 2.0);
    double A = C + r.uniform(0.1, 2.0);
    return metric_at_constants(A, B, C);
}

struct mu_pair {
    double qu = 0.0, q2u = 0.0;
};

// Independent mu route: reconstruct the vectors and contract the tensor,
// dividing by the coordinate-cosine plane denominators.
mu_pair mus(const tensor4& T, const frame_q& f, const q_coords& c) {
    vec4 u = from_coords(f, c);
    vec4 qu = from_coords(f, q_shift(c));
    vec4 q2u = from_coords(f, q_shift(q_shift(c)));
    double cf = cos_phi(c), ct = cos_theta(c);
    mu_pair m;
    m.qu = tensor_eval(T, u, qu, u, qu) / (1.0 - cf * cf);
    m.q2u = tensor_eval(T, u, q2u, u, q2u) / (1.0 - ct * ct);
    return m;
}

q_coords unit_coords(rng64& r) {
    for (;;) {
        q_coords c{r.gauss(), r.gauss(), r.gauss(), r.gauss()};
        double n = std::sqrt(c.norm2());
        if (n < 1e-6) continue;
        return {c.alpha / n, c.beta / n, c.gamma / n, c.delta / n};
    }
}

}  // namespace

TEST_CASE("theorems: K coefficient worked examples") {
    k_quintet k = kcoeffs(q_coords{1, 0, 0, 0});
    CHECK(k.K1 == 1.0);
    CHECK(k.K2 == 0.0);
    CHECK(k.K3 == 0.5);
    CHECK(k.K4 == 0.0);
    CHECK(k.K5 == 0.0);
    k_quintet z = kcoeffs(q_coords{0.5, 0.5, 0.5, 0.5});  // cos(phi)=cos(theta)=1
    CHECK(std::abs(z.K1) < 1e-15);
    CHECK(std::abs(z.K2) < 1e-15);
    CHECK(std::abs(z.K3) < 1e-15);
    CHECK(std::abs(z.K4) < 1e-15);
    CHECK(std::abs(z.K5) < 1e-15);
    CHECK_THROWS_AS(kcoeffs(q_coords{1, 1, 0, 0}), not_unit_norm);
}

TEST_CASE("theorems: K polynomial and cosine forms agree on the unit sphere") {
    rng64 r(91);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t)
        worst = std::max(worst, kcoeffs_forms_residual(unit_coords(r)));
    CHECK(worst < 1e-12);
}

TEST_CASE("theorems: sextet reads the frame contractions") {
    rng64 r(92);
    curvature_at_point T = sample_invariant_tensor(base_metric(), invariance_class::full_q, 5);
    frame_q f = orthogonal_q_basis(random_metric(r));
    r_sextet s = sextet_of(T.R, f);
    const vec4 &x = f.vectors[0], &qx = f.vectors[1], &q2 = f.vectors[2], &q3 = f.vectors[3];
    CHECK(s.R1 == tensor_eval(T.R, x, qx, x, qx));
    CHECK(s.R2 == tensor_eval(T.R, x, qx, q2, x));
    CHECK(s.R3 == tensor_eval(T.R, x, q2, x, q2));
    CHECK(s.R4 == tensor_eval(T.R, x, qx, qx, q2));
    CHECK(s.R5 == tensor_eval(T.R, qx, q2, q3, x));
    CHECK(s.R6 == tensor_eval(T.R, qx, q2, q2, x));
}

TEST_CASE("theorems: dop identities hold on full-q tensors, reject other classes") {
    rng64 r(93);
    for (int t = 0; t < 12; ++t) {
        curvature_at_point T = sample_invariant_tensor(
            base_metric(), invariance_class::full_q, derive_seed(93, static_cast<std::uint64_t>(t)));
        frame_q f = orthogonal_q_basis(random_metric(r));
        for (const auto& [id, res] : dop_identities(T, f)) {
            CAPTURE(id);
            CHECK(res <= 1e-12 * (1.0 + max_abs(T.R)));
        }
    }
    curvature_at_point N = sample_invariant_tensor(base_metric(), invariance_class::none, 7);
    frame_q f = orthogonal_q_basis(base_metric());
    CHECK_THROWS_AS(dop_identities(N, f), wrong_invariance_class);
}

TEST_CASE("theorems: master identity against an in-test dual route") {
    rng64 r(94);
    for (int t = 0; t < 32; ++t) {
        curvature_at_point T = sample_invariant_tensor(
            base_metric(), invariance_class::full_q, derive_seed(94, static_cast<std::uint64_t>(t)));
        frame_q f = orthogonal_q_basis(random_metric(r));
        q_coords c;
        do {
            c = unit_coords(r);
        } while (1.0 - cos_phi(c) * cos_phi(c) < 1e-3 ||
                 1.0 - cos_theta(c) * cos_theta(c) < 1e-3);
        theorem_report rep = master_identity(T, f, c);
        CHECK(rep.pass);
        CHECK(rep.residual <= 1e-10);
        // Same equality assembled here from public pieces only.
        mu_pair m = mus(T.R, f, c);
        double cf = cos_phi(c), ct = cos_theta(c);
        double lhs = (1.0 - cf * cf) * m.qu + 0.5 * (1.0 - ct * ct) * m.q2u;
        k_quintet k = kcoeffs(c);
        r_sextet s = sextet_of(T.R, f);
        double rhs = k.K1 * s.R1 + k.K2 * s.R2 + k.K3 * s.R3 + k.K4 * s.R4 + k.K5 * s.R5 +
                     k.K2 * s.R6;
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(lhs)));
        CHECK(rep.lhs == doctest::Approx(lhs).epsilon(1e-12));
    }
}

TEST_CASE("theorems: thm4 gating behavior") {
    curvature_at_point T = sample_invariant_tensor(base_metric(), invariance_class::full_q, 11);
    frame_q f = orthogonal_q_basis(base_metric());
    // cos(phi) = 0 only: one report, id mu-r.
    q_coords u1 = sample_with_angles(0.0, 0.4, 101);
    auto reps1 = thm4(T, f, u1);
    REQUIRE(reps1.size() == 1);
    CHECK(reps1[0].id == "mu-r");
    // cos(theta) = 0 only: one report, id mu-r2.
    q_coords u2 = sample_with_angles(0.3, 0.0, 102);
    auto reps2 = thm4(T, f, u2);
    REQUIRE(reps2.size() == 1);
    CHECK(reps2[0].id == "mu-r2");
    // Both angles zero: both reports.
    q_coords u3 = sample_with_angles(0.0, 0.0, 103);
    CHECK(thm4(T, f, u3).size() == 2);
    // Neither: the gate throws.
    q_coords u4 = sample_with_angles(0.2, 0.5, 104);
    CHECK_THROWS_AS(thm4(T, f, u4), angle_constraint_violated);
}

TEST_CASE("theorems: thm4 deviation equals its derived error term") {
    // Signed residual of the printed (mu-r):  -2/(1-ct^2) * (mu(u,qu) - R1).
    // Signed residual of the printed (mu-r2): -1/(2(1-cf^2)) * (mu(u,q2u) - R3).
    // These pin the implementation to the printed formulas exactly.
    rng64 r(95);
    for (int t = 0; t < 24; ++t) {
        curvature_at_point T = sample_invariant_tensor(
            base_metric(), invariance_class::full_q, derive_seed(95, static_cast<std::uint64_t>(t)));
        frame_q f = orthogonal_q_basis(random_metric(r));
        r_sextet s = sextet_of(T.R, f);

        double ct = r.uniform(0.1, 0.8) * (r.next_u64() & 1u ? 1.0 : -1.0);
        q_coords u = sample_with_angles(0.0, ct, derive_seed(951, static_cast<std::uint64_t>(t)));
        auto reps = thm4(T, f, u);
        REQUIRE(reps.size() == 1);
        mu_pair m = mus(T.R, f, u);
        double ctu = cos_theta(u);
        double predicted = -2.0 / (1.0 - ctu * ctu) * (m.qu - s.R1);
        double signed_resid = reps[0].lhs - reps[0].rhs;
        CHECK(std::abs(signed_resid - predicted) <= 1e-11 * (1.0 + std::abs(signed_resid)));

        double cf = r.uniform(0.05, 0.45) * (r.next_u64() & 1u ? 1.0 : -1.0);
        q_coords u2 = sample_with_angles(cf, 0.0, derive_seed(952, static_cast<std::uint64_t>(t)));
        auto reps2 = thm4(T, f, u2);
        REQUIRE(reps2.size() == 1);
        mu_pair m2 = mus(T.R, f, u2);
        double cfu = cos_phi(u2);
        double predicted2 = -0.5 / (1.0 - cfu * cfu) * (m2.q2u - s.R3);
        double signed2 = reps2[0].lhs - reps2[0].rhs;
        CHECK(std::abs(signed2 - predicted2) <= 1e-11 * (1.0 + std::abs(signed2)));
    }
}

TEST_CASE("theorems: generic synthetic tensors measurably violate thm4/5/6") {
    // The violations are structural, far above every tolerance in use.
    curvature_at_point T = sample_invariant_tensor(base_metric(), invariance_class::full_q, 21);
    frame_q f = orthogonal_q_basis(base_metric());
    q_coords u = sample_with_angles(0.0, 0.45, 211);
    auto reps = thm4(T, f, u);
    REQUIRE(reps.size() == 1);
    CHECK(reps[0].residual > 1e-6);
    CHECK_FALSE(reps[0].pass);

    q_coords y = sample_with_angles(0.0, 0.5, 212);
    q_coords z = sample_with_angles(0.0, -0.5, 213);
    theorem_report r5 = thm5(T, f, u, y, z);
    CHECK(r5.residual > 1e-7);

    q_coords u6 = sample_with_angles(0.25, 0.0, 214);
    q_coords y6 = sample_with_angles(0.5, 0.0, 215);
    q_coords z6 = sample_with_angles(-0.5, 0.0, 216);
    theorem_report r6 = thm6(T, f, u6, y6, z6);
    CHECK(r6.residual > 1e-7);
    CHECK(r6.has_aux);
    CHECK(r6.aux_id == "mu-r4-qx-variant");
    CHECK(r6.aux_residual > 1e-9);  // the variant reading also fails generically
}

TEST_CASE("theorems: master-identity slices hold where thm4 does not") {
    rng64 r(96);
    for (int t = 0; t < 16; ++t) {
        curvature_at_point T = sample_invariant_tensor(
            base_metric(), invariance_class::full_q, derive_seed(96, static_cast<std::uint64_t>(t)));
        frame_q f = orthogonal_q_basis(random_metric(r));
        q_coords cphi = sample_with_angles(0.0, r.uniform(-0.8, 0.8),
                                           derive_seed(961, static_cast<std::uint64_t>(t)));
        theorem_report a = master_slice_phi(T, f, cphi);
        CHECK(a.pass);
        CHECK(a.residual <= 1e-10);
        q_coords cth = sample_with_angles(r.uniform(-0.45, 0.45), 0.0,
                                          derive_seed(962, static_cast<std::uint64_t>(t)));
        theorem_report b = master_slice_theta(T, f, cth);
        CHECK(b.pass);
        CHECK(b.residual <= 1e-10);
    }
}

TEST_CASE("theorems: constant curvature collapses thm4/5/6 to exact equalities") {
    metric_at_point m = base_metric();
    frame_q f = orthogonal_q_basis(m);
    curvature_at_point R = constant_curvature(m, 1.3);
    r_sextet s = sextet_of(R.R, f);
    CHECK(s.R1 == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(s.R3 == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(std::abs(s.R2) < 1e-12);
    CHECK(std::abs(s.R4) < 1e-12);
    CHECK(std::abs(s.R5) < 1e-12);
    CHECK(std::abs(s.R6) < 1e-12);

    q_coords u = sample_with_angles(0.0, 0.37, 301);
    for (const auto& rep : thm4(R, f, u)) {
        CHECK(rep.pass);
        CHECK(rep.residual <= 1e-10);
    }
    q_coords y = sample_with_angles(0.0, 0.5, 302);
    q_coords z = sample_with_angles(0.0, -0.5, 303);
    CHECK(thm5(R, f, u, y, z).residual <= 1e-10);
    q_coords u6 = sample_with_angles(0.4, 0.0, 304);
    q_coords y6 = sample_with_angles(0.5, 0.0, 305);
    q_coords z6 = sample_with_angles(-0.5, 0.0, 306);
    CHECK(thm6(R, f, u6, y6, z6).residual <= 1e-10);
}

TEST_CASE("theorems: thm7 consequences hold on last-pair tensors") {
    rng64 r(97);
    for (int t = 0; t < 12; ++t) {
        curvature_at_point T =
            sample_invariant_tensor(base_metric(), invariance_class::last_pair_q,
                                    derive_seed(97, static_cast<std::uint64_t>(t)));
        frame_q f = orthogonal_q_basis(random_metric(r));
        // The last-pair line has the sextet pattern R1=R4=R5, R2=R3=R6=0.
        r_sextet s = sextet_of(T.R, f);
        double sc = 1.0 + max_abs(T.R);
        CHECK(std::abs(s.R1 - s.R4) < 1e-11 * sc);
        CHECK(std::abs(s.R1 - s.R5) < 1e-11 * sc);
        CHECK(std::abs(s.R2) < 1e-11 * sc);
        CHECK(std::abs(s.R3) < 1e-11 * sc);
        CHECK(std::abs(s.R6) < 1e-11 * sc);

        q_coords c;
        do {
            c = unit_coords(r);
        } while (1.0 - cos_phi(c) * cos_phi(c) < 1e-3 ||
                 1.0 - cos_theta(c) * cos_theta(c) < 1e-3);
        auto [q2_rep, scal_rep] = thm7(T, f, c);
        CHECK(q2_rep.pass);
        CHECK(q2_rep.residual <= 1e-10);
        CHECK(scal_rep.pass);
        CHECK(scal_rep.residual <= 1e-10);
        CHECK(q2_rep.has_aux);
        CHECK(q2_rep.aux_residual <= 1e-11);

        // Independent check of the scaling identity.
        mu_pair m = mus(T.R, f, c);
        double cf = cos_phi(c), ct = cos_theta(c);
        double want = (1.0 - ct) * (1.0 - ct) / (1.0 - cf * cf) * s.R1;
        CHECK(std::abs(m.qu - want) <= 1e-10 * (1.0 + std::abs(want)));
    }
    curvature_at_point F = sample_invariant_tensor(base_metric(), invariance_class::full_q, 4);
    frame_q f = orthogonal_q_basis(base_metric());
    rng64 r2(98);
    CHECK_THROWS_AS(thm7(F, f, unit_coords(r2)), wrong_invariance_class);
}

TEST_CASE("theorems: residuals scale linearly with the tensor") {
    curvature_at_point T = sample_invariant_tensor(base_metric(), invariance_class::full_q, 31);
    frame_q f = orthogonal_q_basis(base_metric());
    q_coords u = sample_with_angles(0.0, 0.52, 311);
    auto base_rep = thm4(T, f, u);
    REQUIRE(base_rep.size() == 1);
    for (double lambda : {1e-3, 1e3}) {
        curvature_at_point S = T;
        for (double& v : S.R.c) v *= lambda;
        auto rep = thm4(S, f, u);
        REQUIRE(rep.size() == 1);
        CHECK(rep[0].residual ==
              doctest::Approx(lambda * base_rep[0].residual).epsilon(1e-9));
    }
}
