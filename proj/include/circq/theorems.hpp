#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "circq/curvature.hpp"
#include "circq/frame.hpp"

namespace circq {

// The six basis curvature values on an orthonormal q-basis:
// R1=R(x,qx,x,qx), R2=R(x,qx,q2x,x), R3=R(x,q2x,x,q2x),
// R4=R(x,qx,qx,q2x), R5=R(qx,q2x,q3x,x), R6=R(qx,q2x,q2x,x).
struct r_sextet {
    double R1 = 0, R2 = 0, R3 = 0, R4 = 0, R5 = 0, R6 = 0;
};

r_sextet sextet_of(const tensor4& T, const frame_q& f);

struct k_quintet {
    double K1 = 0, K2 = 0, K3 = 0, K4 = 0, K5 = 0;
};

// Polynomial forms of K1..K5 in (alpha,beta,gamma,delta); verifies the
// cosine reductions K1=1-cos^2(phi), K2=-2cos(phi)(1-cos(theta)),
// K3=(1-cos^2(theta))/2, K4=2(-cos(theta)+cos^2(phi)),
// K5=cos^2(theta)-cos^2(phi) within 1e-12. Throws not_unit_norm.
k_quintet kcoeffs(const q_coords& c);

// max |polynomial - cosine| over the five coefficients. The two forms agree
// only on unit-norm coordinates; callers draw unit vectors.
double kcoeffs_forms_residual(const q_coords& c);

struct theorem_report {
    std::string id;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;  // |lhs - rhs|
    double tolerance = 0.0;
    bool pass = false;
    double cphi = 0.0;   // cos(phi) of the sampled coords
    double ctheta = 0.0; // cos(theta) of the sampled coords
    q_coords coords{};
    std::uint64_t seed = 0;
    // Companion residual (th6 variant form, th7 component consequences).
    std::string aux_id;
    double aux_residual = 0.0;
    bool has_aux = false;
};

// Residuals of the equalities dop2..dop8, normalized by nothing (absolute);
// the pass threshold used by callers is 1e-12 * (1 + max|R|). The frame only
// needs to be a q-basis. Throws wrong_invariance_class unless the tensor is
// full-q invariant.
std::vector<std::pair<std::string, double>> dop_identities(const curvature_at_point& R,
                                                           const frame_q& f);

// (1-cos^2 phi) mu(u,qu) + (1-cos^2 theta)/2 mu(u,q^2u) =
//   K1 R1 + K2 R2 + K3 R3 + K4 R4 + K5 R5 + K2 R6, the ungated identity.
// mu is evaluated through the reconstructed vectors and the plane
// denominators; the right side through the sextet and the cosine K forms.
theorem_report master_identity(const curvature_at_point& R, const frame_q& f,
                               const q_coords& c);

// The two gated equalities (mu-r) and (mu-r2). The report for (mu-r) is
// produced when cos(phi)=0 within 1e-10, the one for (mu-r2) when
// cos(theta)=0; a coordinate vector satisfying neither gate throws
// angle_constraint_violated.
std::vector<theorem_report> thm4(const curvature_at_point& R, const frame_q& f,
                                 const q_coords& c);

// Exact slices of the master identity at cos(phi)=0 / cos(theta)=0. These
// are the derivable forms of the thm4 split; they hold for every invariant
// tensor and serve as implementation cross-checks.
theorem_report master_slice_phi(const curvature_at_point& R, const frame_q& f,
                                const q_coords& c);
theorem_report master_slice_theta(const curvature_at_point& R, const frame_q& f,
                                  const q_coords& c);

// mu(u,q2u) interpolation through mu(y,q2y), mu(z,q2z) at cos(theta)=+-1/2.
theorem_report thm5(const curvature_at_point& R, const frame_q& f, const q_coords& u_c,
                    const q_coords& y_c, const q_coords& z_c);

// mu(u,qu) interpolation; the printed first term mu(x,q2x) is asserted, the
// mu(x,qx) variant is carried as aux_residual.
theorem_report thm6(const curvature_at_point& R, const frame_q& f, const q_coords& u_c,
                    const q_coords& y_c, const q_coords& z_c);

// Last-pair invariance: mu(u,q2u)=0 and the mu(u,qu) scaling identity; the
// first report's aux_residual carries the worst component consequence
// (vanishing set and equal-value chains on random vectors).
std::pair<theorem_report, theorem_report> thm7(const curvature_at_point& R,
                                               const frame_q& f, const q_coords& c);

}  // namespace circq
