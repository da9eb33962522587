#include "circq/curvature.hpp"

#include <cmath>
#include <mutex>
#include <vector>

#include "circq/errors.hpp"
#include "circq/linalg.hpp"
#include "circq/rng.hpp"

namespace circq {

christoffel_symbols christoffels(const metric_jet_field& field, const vec4& p) {
    const metric_jets j = field(p);
    const mat4 ginv = inverse4(j.g);
    christoffel_symbols out;
    out.point = p;
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int jj = i; jj < 4; ++jj) {
                double s = 0.0;
                for (int l = 0; l < 4; ++l)
                    s += ginv[k][l] * (j.dg[i][jj][l] + j.dg[jj][i][l] - j.dg[l][i][jj]);
                out.gamma[k][i][jj] = 0.5 * s;
                out.gamma[k][jj][i] = out.gamma[k][i][jj];
            }
    return out;
}

curvature_at_point riemann(const metric_jet_field& field, const vec4& p) {
    const metric_jets j = field(p);
    const mat4 ginv = inverse4(j.g);

    // Gamma^k_{ij}
    double G[4][4][4];
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int jj = 0; jj < 4; ++jj) {
                double s = 0.0;
                for (int l = 0; l < 4; ++l)
                    s += ginv[k][l] * (j.dg[i][jj][l] + j.dg[jj][i][l] - j.dg[l][i][jj]);
                G[k][i][jj] = 0.5 * s;
            }

    // d_m g^{kl} = -g^{ka} (d_m g_{ab}) g^{bl}
    double dginv[4][4][4];
    for (int m = 0; m < 4; ++m)
        for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) {
                double s = 0.0;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) s += ginv[k][a] * j.dg[m][a][b] * ginv[b][l];
                dginv[m][k][l] = -s;
            }

    // d_m Gamma^k_{ij}, assembled from exact second derivatives of g.
    double dG[4][4][4][4];
    for (int m = 0; m < 4; ++m)
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i)
                for (int jj = 0; jj < 4; ++jj) {
                    double s = 0.0;
                    for (int l = 0; l < 4; ++l) {
                        s += dginv[m][k][l] * (j.dg[i][jj][l] + j.dg[jj][i][l] - j.dg[l][i][jj]);
                        s += ginv[k][l] *
                             (j.d2g[m][i][jj][l] + j.d2g[m][jj][i][l] - j.d2g[m][l][i][jj]);
                    }
                    dG[m][k][i][jj] = 0.5 * s;
                }

    // R^l_{ijk} with the first pair oriented so the round sphere comes out
    // with sectional curvature +1 after lowering.
    curvature_at_point out;
    out.point = p;
    out.source = curvature_source::from_metric;
    for (int i = 0; i < 4; ++i)
        for (int jj = 0; jj < 4; ++jj)
            for (int k = 0; k < 4; ++k) {
                double up[4];
                for (int l = 0; l < 4; ++l) {
                    double s = dG[jj][l][i][k] - dG[i][l][jj][k];
                    for (int m = 0; m < 4; ++m)
                        s += G[l][jj][m] * G[m][i][k] - G[l][i][m] * G[m][jj][k];
                    up[l] = s;
                }
                for (int l = 0; l < 4; ++l) {
                    double s = 0.0;
                    for (int m = 0; m < 4; ++m) s += j.g[l][m] * up[m];
                    out.R(i, jj, k, l) = s;
                }
            }

    out.antisym1 = antisym_first_pair_residual(out.R);
    out.antisym2 = antisym_second_pair_residual(out.R);
    out.pair_exchange = pair_exchange_residual(out.R);
    out.bianchi = first_bianchi_residual(out.R);
    return out;
}

double sectional(const metric_at_point& m, const curvature_at_point& R, const vec4& x,
                 const vec4& y) {
    const double xx = inner(m, x, x);
    const double yy = inner(m, y, y);
    if (xx <= 0.0 || yy <= 0.0) throw zero_vector();
    const vec4 xn = scale(x, 1.0 / std::sqrt(xx));
    const vec4 yn = scale(y, 1.0 / std::sqrt(yy));
    const double c = inner(m, xn, yn);
    const double denom = 1.0 - c * c;
    if (std::fabs(denom) <= 1e-12) throw degenerate_plane(denom);
    return tensor_eval(R.R, xn, yn, xn, yn) / denom;
}

curvature_at_point constant_curvature(const metric_at_point& m, double kappa) {
    curvature_at_point out;
    out.point = m.point;
    out.source = curvature_source::synthetic;
    out.inv_class = invariance_class::full_q;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    out.R(i, j, k, l) =
                        kappa * (m.g[i][k] * m.g[j][l] - m.g[i][l] * m.g[j][k]);
    return out;
}

namespace {

// Rows of the linear constraint system on the 256 components.
dmatrix constraint_matrix(invariance_class cls) {
    std::vector<std::array<double, 256>> rows;
    auto new_row = [&]() -> std::array<double, 256>& {
        rows.emplace_back();
        rows.back().fill(0.0);
        return rows.back();
    };
    const auto shift = [](int a) { return (a + 3) & 3; };

    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    auto& r = new_row();
                    r[tensor4::idx(i, j, k, l)] += 1.0;
                    r[tensor4::idx(j, i, k, l)] += 1.0;
                }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = k; l < 4; ++l) {
                    auto& r = new_row();
                    r[tensor4::idx(i, j, k, l)] += 1.0;
                    r[tensor4::idx(i, j, l, k)] += 1.0;
                }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    auto& r = new_row();
                    r[tensor4::idx(i, j, k, l)] += 1.0;
                    r[tensor4::idx(k, l, i, j)] -= 1.0;
                }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    auto& r = new_row();
                    r[tensor4::idx(i, j, k, l)] += 1.0;
                    r[tensor4::idx(j, k, i, l)] += 1.0;
                    r[tensor4::idx(k, i, j, l)] += 1.0;
                }
    if (cls != invariance_class::none) {
        const bool full = cls == invariance_class::full_q;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    for (int l = 0; l < 4; ++l) {
                        auto& r = new_row();
                        r[tensor4::idx(i, j, k, l)] += 1.0;
                        const int pi = full ? shift(i) : i;
                        const int pj = full ? shift(j) : j;
                        r[tensor4::idx(pi, pj, shift(k), shift(l))] -= 1.0;
                    }
    }

    dmatrix m(static_cast<int>(rows.size()), 256);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < 256; ++c) m.at(r, c) = rows[static_cast<std::size_t>(r)][c];
    return m;
}

struct nullspace_cache {
    std::vector<std::vector<double>> basis;
};

const nullspace_cache& cached_nullspace(invariance_class cls) {
    static nullspace_cache caches[3];
    static std::once_flag flags[3];
    const int idx = static_cast<int>(cls);
    std::call_once(flags[idx], [&] {
        caches[idx].basis = nullspace(constraint_matrix(cls), 1e-10);
    });
    return caches[idx];
}

}  // namespace

int invariant_space_dimension(invariance_class cls) {
    return static_cast<int>(cached_nullspace(cls).basis.size());
}

curvature_at_point sample_invariant_tensor(const metric_at_point& m, invariance_class cls,
                                           std::uint64_t rng_seed) {
    (void)m;  // the constraint system is coordinate-based
    const auto& basis = cached_nullspace(cls).basis;
    if (basis.empty()) throw empty_nullspace();

    rng64 rng(derive_seed(rng_seed, 0x7e45ull));
    std::vector<double> w(basis.size());
    for (double& v : w) v = rng.gauss();

    curvature_at_point out;
    out.point = m.point;
    out.source = curvature_source::synthetic;
    out.inv_class = cls;
    out.nullspace_dimension = static_cast<int>(basis.size());
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (int n = 0; n < 256; ++n) out.R.c[n] += w[b] * basis[b][n];

    double norm2 = 0.0;
    for (double v : out.R.c) norm2 += v * v;
    if (norm2 == 0.0) throw empty_nullspace();
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : out.R.c) v *= inv;

    out.antisym1 = antisym_first_pair_residual(out.R);
    out.antisym2 = antisym_second_pair_residual(out.R);
    out.pair_exchange = pair_exchange_residual(out.R);
    out.bianchi = first_bianchi_residual(out.R);
    return out;
}

std::string to_string(invariance_class cls) {
    switch (cls) {
        case invariance_class::none: return "none";
        case invariance_class::full_q: return "full-q";
        case invariance_class::last_pair_q: return "last-pair-q";
    }
    return "?";
}

}  // namespace circq
