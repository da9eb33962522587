#include "circq/theorems.hpp"

#include <cmath>

#include "circq/errors.hpp"
#include "circq/rng.hpp"

namespace circq {

namespace {

constexpr double kGateTol = 1e-10;

void require_orthonormal(const frame_q& f) {
    if (!f.orthonormal) throw frame_not_orthonormal();
}

void require_full_q(const tensor4& T) {
    const double scale = 1.0 + max_abs(T);
    if (invariance_residual(T, kMaskAllSlots) > 1e-9 * scale)
        throw wrong_invariance_class("full q-invariance required");
}

void require_last_pair_q(const tensor4& T) {
    const double scale = 1.0 + max_abs(T);
    if (invariance_residual(T, kMaskLastPair) > 1e-9 * scale)
        throw wrong_invariance_class("last-pair q-invariance required");
}

// mu on the planes {u,qu} and {u,q^2u} for a unit u given in orthonormal
// q-coordinates; denominators come from the coordinate cosines.
struct mu_pair {
    double mu_qu;
    double mu_q2u;
};

mu_pair mus_of(const tensor4& T, const frame_q& f, const q_coords& c) {
    if (std::fabs(c.norm2() - 1.0) > 1e-10) throw not_unit_norm(c.norm2());
    const double cf = cos_phi(c);
    const double ct = cos_theta(c);
    const double d1 = 1.0 - cf * cf;
    const double d2 = 1.0 - ct * ct;
    if (std::fabs(d1) <= 1e-12) throw degenerate_plane(d1);
    if (std::fabs(d2) <= 1e-12) throw degenerate_plane(d2);
    const vec4 u = from_coords(f, c);
    const vec4 qu = q_apply(u);
    const vec4 q2u = q_apply(qu);
    return {tensor_eval(T, u, qu, u, qu) / d1, tensor_eval(T, u, q2u, u, q2u) / d2};
}

theorem_report make_report(std::string id, double lhs, double rhs, double tol,
                           const q_coords& c) {
    theorem_report r;
    r.id = std::move(id);
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = std::fabs(lhs - rhs);
    r.tolerance = tol;
    r.pass = r.residual <= tol;
    r.cphi = cos_phi(c);
    r.ctheta = cos_theta(c);
    r.coords = c;
    return r;
}

}  // namespace

r_sextet sextet_of(const tensor4& T, const frame_q& f) {
    const vec4& x = f.vectors[0];
    const vec4& qx = f.vectors[1];
    const vec4& q2x = f.vectors[2];
    const vec4& q3x = f.vectors[3];
    r_sextet s;
    s.R1 = tensor_eval(T, x, qx, x, qx);
    s.R2 = tensor_eval(T, x, qx, q2x, x);
    s.R3 = tensor_eval(T, x, q2x, x, q2x);
    s.R4 = tensor_eval(T, x, qx, qx, q2x);
    s.R5 = tensor_eval(T, qx, q2x, q3x, x);
    s.R6 = tensor_eval(T, qx, q2x, q2x, x);
    return s;
}

namespace {

k_quintet kcoeffs_poly(const q_coords& c) {
    const double a = c.alpha, b = c.beta, g = c.gamma, d = c.delta;
    k_quintet k;
    k.K1 = (a * a - b * d) * (a * a - b * d) + (d * d - a * g) * (d * d - a * g) +
           (b * b - a * g) * (b * b - a * g) + (g * g - b * d) * (g * g - b * d) +
           (a * d - b * g) * (a * d - b * g) + (a * b - g * d) * (a * b - g * d);
    k.K2 = 2.0 * ((a * b - g * d) * (g * g - a * a) + (b * g - d * a) * (d * d - b * b) +
                  (a * d - b * g) * (g * g - a * a) + (a * b - d * g) * (d * d - b * b));
    k.K3 = (a * b - g * d) * (a * b - g * d) + (b * g - d * a) * (b * g - d * a) +
           0.5 * ((a * a - g * g) * (a * a - g * g) + (b * b - d * d) * (b * b - d * d));
    k.K4 = 2.0 * (a * a + g * g - 2.0 * b * d) * (d * d + b * b - 2.0 * a * g);
    k.K5 = 2.0 * ((a * a - b * d) * (g * g - b * d) + (b * b - a * g) * (d * d - a * g)) -
           (a * b - g * d) * (a * b - g * d) - (b * g - a * d) * (b * g - a * d);
    return k;
}

k_quintet kcoeffs_cosine(const q_coords& c) {
    const double cf = cos_phi(c);
    const double ct = cos_theta(c);
    k_quintet k;
    k.K1 = 1.0 - cf * cf;
    k.K2 = -2.0 * cf * (1.0 - ct);
    k.K3 = 0.5 * (1.0 - ct * ct);
    k.K4 = 2.0 * (-ct + cf * cf);
    k.K5 = ct * ct - cf * cf;
    return k;
}

}  // namespace

double kcoeffs_forms_residual(const q_coords& c) {
    const k_quintet p = kcoeffs_poly(c);
    const k_quintet q = kcoeffs_cosine(c);
    double m = 0.0;
    m = std::max(m, std::fabs(p.K1 - q.K1));
    m = std::max(m, std::fabs(p.K2 - q.K2));
    m = std::max(m, std::fabs(p.K3 - q.K3));
    m = std::max(m, std::fabs(p.K4 - q.K4));
    m = std::max(m, std::fabs(p.K5 - q.K5));
    return m;
}

k_quintet kcoeffs(const q_coords& c) {
    if (std::fabs(c.norm2() - 1.0) > 1e-12) throw not_unit_norm(c.norm2());
    if (kcoeffs_forms_residual(c) > 1e-12)
        throw circq_error("K coefficient polynomial and cosine forms disagree");
    return kcoeffs_poly(c);
}

std::vector<std::pair<std::string, double>> dop_identities(const curvature_at_point& R,
                                                           const frame_q& f) {
    require_full_q(R.R);
    const vec4& x = f.vectors[0];
    const vec4& qx = f.vectors[1];
    const vec4& q2 = f.vectors[2];
    const vec4& q3 = f.vectors[3];
    const tensor4& T = R.R;
    const auto E = [&](const vec4& a, const vec4& b, const vec4& c, const vec4& d) {
        return tensor_eval(T, a, b, c, d);
    };
    std::vector<std::pair<std::string, double>> out;
    out.emplace_back("dop2", std::fabs(E(x, q3, x, q3) - E(x, qx, x, qx)));
    out.emplace_back("dop3a", std::fabs(E(x, qx, q2, x) - E(q2, q3, x, q2)));
    out.emplace_back("dop3b", std::fabs(E(q2, q3, x, q2) - E(q3, x, qx, q3)));
    out.emplace_back("dop4", std::fabs(E(qx, q3, qx, q3) - E(x, q2, x, q2)));
    out.emplace_back("dop5a", std::fabs(E(x, qx, qx, q2) - E(q2, q3, q3, x)));
    out.emplace_back("dop5b", std::fabs(E(q2, q3, q3, x) - E(q3, x, x, qx)));
    out.emplace_back("dop6", std::fabs(E(qx, q2, q3, x) - E(x, qx, q2, q3)));
    out.emplace_back("dop7a", std::fabs(E(qx, q2, q2, x) - E(x, qx, qx, q3)));
    out.emplace_back("dop7b", std::fabs(E(x, qx, qx, q3) - E(q3, x, x, q2)));
    out.emplace_back("dop8", std::fabs(E(x, q2, qx, q3)));
    return out;
}

theorem_report master_identity(const curvature_at_point& R, const frame_q& f,
                               const q_coords& c) {
    require_orthonormal(f);
    require_full_q(R.R);
    const mu_pair mu = mus_of(R.R, f, c);
    const r_sextet s = sextet_of(R.R, f);
    const k_quintet k = kcoeffs_cosine(c);
    const double cf = cos_phi(c);
    const double ct = cos_theta(c);
    const double lhs = (1.0 - cf * cf) * mu.mu_qu + 0.5 * (1.0 - ct * ct) * mu.mu_q2u;
    const double rhs = k.K1 * s.R1 + k.K2 * s.R2 + k.K3 * s.R3 + k.K4 * s.R4 +
                       k.K5 * s.R5 + k.K2 * s.R6;
    return make_report("mu+mu", lhs, rhs, 1e-10, c);
}

std::vector<theorem_report> thm4(const curvature_at_point& R, const frame_q& f,
                                 const q_coords& c) {
    require_orthonormal(f);
    require_full_q(R.R);
    const double cf = cos_phi(c);
    const double ct = cos_theta(c);
    const bool gate_phi = std::fabs(cf) <= kGateTol;
    const bool gate_theta = std::fabs(ct) <= kGateTol;
    if (!gate_phi && !gate_theta)
        throw angle_constraint_violated("cos(phi) or cos(theta)",
                                        std::fabs(cf) < std::fabs(ct) ? cf : ct);

    const mu_pair mu = mus_of(R.R, f, c);
    const r_sextet s = sextet_of(R.R, f);
    std::vector<theorem_report> out;
    if (gate_phi) {
        const double lhs = mu.mu_q2u - s.R3;
        const double rhs = 2.0 * ct / (1.0 - ct * ct) * (-2.0 * s.R4 + ct * s.R5);
        out.push_back(make_report("mu-r", lhs, rhs, 1e-10, c));
    }
    if (gate_theta) {
        const double lhs = mu.mu_qu - s.R1;
        const double rhs = cf / (1.0 - cf * cf) *
                           (-2.0 * s.R2 + 2.0 * cf * s.R4 - cf * s.R5 - 2.0 * s.R6);
        out.push_back(make_report("mu-r2", lhs, rhs, 1e-10, c));
    }
    return out;
}

theorem_report master_slice_phi(const curvature_at_point& R, const frame_q& f,
                                const q_coords& c) {
    require_orthonormal(f);
    require_full_q(R.R);
    const double cf = cos_phi(c);
    if (std::fabs(cf) > kGateTol) throw angle_constraint_violated("cos(phi)", cf);
    const double ct = cos_theta(c);
    const mu_pair mu = mus_of(R.R, f, c);
    const r_sextet s = sextet_of(R.R, f);
    const double lhs =
        (mu.mu_qu - s.R1) + 0.5 * (1.0 - ct * ct) * (mu.mu_q2u - s.R3);
    const double rhs = ct * (-2.0 * s.R4 + ct * s.R5);
    return make_report("mu+mu@cosphi0", lhs, rhs, 1e-10, c);
}

theorem_report master_slice_theta(const curvature_at_point& R, const frame_q& f,
                                  const q_coords& c) {
    require_orthonormal(f);
    require_full_q(R.R);
    const double ct = cos_theta(c);
    if (std::fabs(ct) > kGateTol) throw angle_constraint_violated("cos(theta)", ct);
    const double cf = cos_phi(c);
    const mu_pair mu = mus_of(R.R, f, c);
    const r_sextet s = sextet_of(R.R, f);
    const double lhs =
        (1.0 - cf * cf) * (mu.mu_qu - s.R1) + 0.5 * (mu.mu_q2u - s.R3);
    const double rhs =
        cf * (-2.0 * s.R2 + 2.0 * cf * s.R4 - cf * s.R5 - 2.0 * s.R6);
    return make_report("mu+mu@costheta0", lhs, rhs, 1e-10, c);
}

theorem_report thm5(const curvature_at_point& R, const frame_q& f, const q_coords& u_c,
                    const q_coords& y_c, const q_coords& z_c) {
    require_orthonormal(f);
    require_full_q(R.R);
    for (const q_coords* c : {&u_c, &y_c, &z_c})
        if (std::fabs(cos_phi(*c)) > kGateTol)
            throw angle_constraint_violated("cos(phi)", cos_phi(*c));
    if (std::fabs(cos_theta(y_c) - 0.5) > kGateTol)
        throw angle_constraint_violated("cos(theta)(y) - 1/2", cos_theta(y_c) - 0.5);
    if (std::fabs(cos_theta(z_c) + 0.5) > kGateTol)
        throw angle_constraint_violated("cos(theta)(z) + 1/2", cos_theta(z_c) + 0.5);

    const double ct = cos_theta(u_c);
    const mu_pair mu_u = mus_of(R.R, f, u_c);
    const mu_pair mu_y = mus_of(R.R, f, y_c);
    const mu_pair mu_z = mus_of(R.R, f, z_c);
    const r_sextet s = sextet_of(R.R, f);
    const double mu_x_q2x = s.R3;  // orthonormal frame plane {x, q^2x}

    const double lhs = mu_u.mu_q2u;
    const double rhs = 1.0 / (1.0 - ct * ct) *
                       ((1.0 - 4.0 * ct * ct) * mu_x_q2x +
                        0.75 * (ct + 2.0 * ct * ct) * mu_y.mu_q2u +
                        0.75 * (2.0 * ct * ct - ct) * mu_z.mu_q2u);
    theorem_report r = make_report("mu-r3", lhs, rhs, 1e-9, u_c);
    return r;
}

theorem_report thm6(const curvature_at_point& R, const frame_q& f, const q_coords& u_c,
                    const q_coords& y_c, const q_coords& z_c) {
    require_orthonormal(f);
    require_full_q(R.R);
    for (const q_coords* c : {&u_c, &y_c, &z_c})
        if (std::fabs(cos_theta(*c)) > kGateTol)
            throw angle_constraint_violated("cos(theta)", cos_theta(*c));
    if (std::fabs(cos_phi(y_c) - 0.5) > kGateTol)
        throw angle_constraint_violated("cos(phi)(y) - 1/2", cos_phi(y_c) - 0.5);
    if (std::fabs(cos_phi(z_c) + 0.5) > kGateTol)
        throw angle_constraint_violated("cos(phi)(z) + 1/2", cos_phi(z_c) + 0.5);

    const double cf = cos_phi(u_c);
    const mu_pair mu_u = mus_of(R.R, f, u_c);
    const mu_pair mu_y = mus_of(R.R, f, y_c);
    const mu_pair mu_z = mus_of(R.R, f, z_c);
    const r_sextet s = sextet_of(R.R, f);

    const double weight_y = 0.75 * (cf + 2.0 * cf * cf);
    const double weight_z = 0.75 * (2.0 * cf * cf - cf);
    const double lhs = mu_u.mu_qu;
    // Printed form: the first term reads mu(x, q^2x).
    const double rhs_printed = 1.0 / (1.0 - cf * cf) *
                               ((1.0 - 4.0 * cf * cf) * s.R3 + weight_y * mu_y.mu_qu +
                                weight_z * mu_z.mu_qu);
    // Variant with mu(x,qx), symmetric to the theta-based interpolation.
    const double rhs_variant = 1.0 / (1.0 - cf * cf) *
                               ((1.0 - 4.0 * cf * cf) * s.R1 + weight_y * mu_y.mu_qu +
                                weight_z * mu_z.mu_qu);
    theorem_report r = make_report("mu-r4", lhs, rhs_printed, 1e-9, u_c);
    r.aux_id = "mu-r4-qx-variant";
    r.aux_residual = std::fabs(lhs - rhs_variant);
    r.has_aux = true;
    return r;
}

std::pair<theorem_report, theorem_report> thm7(const curvature_at_point& R,
                                               const frame_q& f, const q_coords& c) {
    require_orthonormal(f);
    require_last_pair_q(R.R);
    const mu_pair mu = mus_of(R.R, f, c);
    const r_sextet s = sextet_of(R.R, f);
    const double cf = cos_phi(c);
    const double ct = cos_theta(c);

    theorem_report a = make_report("mu-r5-q2", mu.mu_q2u, 0.0, 1e-10, c);
    const double rhs =
        (1.0 - ct) * (1.0 - ct) / (1.0 - cf * cf) * s.R1;  // mu(x,qx) = R1
    theorem_report b = make_report("mu-r5-scaling", mu.mu_qu, rhs, 1e-10, c);

    // Component consequences on random vectors: the vanishing set
    // R(v,qv,q2v,v) = R(v,q2v,v,q2v) = R(qv,q2v,q2v,v) = 0 and the chains
    // R(v,qv,v,qv) = R(v,qv,qv,q2v) = R(qv,q2v,q3v,v).
    rng64 rng(derive_seed(0xc0de7ull, 0));
    double worst = 0.0;
    for (int k = 0; k < 16; ++k) {
        vec4 v;
        for (double& w : v) w = rng.gauss();
        const vec4 qv = q_apply(v);
        const vec4 q2v = q_apply(qv);
        const vec4 q3v = q_apply(q2v);
        const tensor4& T = R.R;
        worst = std::max({worst, std::fabs(tensor_eval(T, v, qv, q2v, v)),
                          std::fabs(tensor_eval(T, v, q2v, v, q2v)),
                          std::fabs(tensor_eval(T, qv, q2v, q2v, v))});
        const double c1 = tensor_eval(T, v, qv, v, qv);
        const double c2 = tensor_eval(T, v, qv, qv, q2v);
        const double c3 = tensor_eval(T, qv, q2v, q3v, v);
        worst = std::max({worst, std::fabs(c1 - c2), std::fabs(c2 - c3)});
    }
    a.aux_id = "r1-component-consequences";
    a.aux_residual = worst;
    a.has_aux = true;
    return {a, b};
}

}  // namespace circq
