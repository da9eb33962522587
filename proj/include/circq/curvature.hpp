#pragma once

#include <cstdint>
#include <string>

#include "circq/metric.hpp"
#include "circq/tensor.hpp"

namespace circq {

struct christoffel_symbols {
    // gamma[k][i][j] = Gamma^k_{ij}; symmetric in i, j by construction.
    std::array<std::array<std::array<double, 4>, 4>, 4> gamma{};
    vec4 point{};
};

christoffel_symbols christoffels(const metric_jet_field& field, const vec4& p);

enum class curvature_source { from_metric, synthetic };

enum class invariance_class { none, full_q, last_pair_q };

struct curvature_at_point {
    tensor4 R;
    vec4 point{};
    curvature_source source = curvature_source::synthetic;
    invariance_class inv_class = invariance_class::none;
    int nullspace_dimension = 0;  // meaningful for synthetic samples
    // Symmetry residuals, absolute; from-metric values carry rounding noise.
    double antisym1 = 0.0, antisym2 = 0.0, pair_exchange = 0.0, bianchi = 0.0;
};

// (0,4) curvature from exact metric 2-jets. The sign is pinned so the round
// sphere has sectional curvature +1; no finite differences anywhere.
curvature_at_point riemann(const metric_jet_field& field, const vec4& p);

// mu(x,y) = R(x,y,x,y) / (g(x,x)g(y,y) - g(x,y)^2). Vectors are normalized
// first; the plane is degenerate when the normalized denominator <= 1e-12.
// Throws degenerate_plane.
double sectional(const metric_at_point& m, const curvature_at_point& R, const vec4& x,
                 const vec4& y);

// R(x,y,z,u) = kappa (g(x,z)g(y,u) - g(x,u)g(y,z)); constant sectional
// curvature kappa, full q-invariance inherited from the isometry.
curvature_at_point constant_curvature(const metric_at_point& m, double kappa);

// Random unit-Frobenius-norm element of the linear space of algebraic
// curvature tensors with the requested q-invariance, via elimination
// nullspace of the constraint system (pivot threshold 1e-10). The basis is
// computed once per class and cached. Throws empty_nullspace.
curvature_at_point sample_invariant_tensor(const metric_at_point& m, invariance_class cls,
                                           std::uint64_t rng_seed);

// Dimension of the constraint nullspace (20 / 6 / 1 for none / full-q /
// last-pair-q).
int invariant_space_dimension(invariance_class cls);

std::string to_string(invariance_class cls);

}  // namespace circq
