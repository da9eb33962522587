#include "circq/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "circq/errors.hpp"
#include "circq/frame.hpp"
#include "circq/linalg.hpp"
#include "circq/metric.hpp"
#include "circq/rng.hpp"
#include "circq/theorems.hpp"

namespace circq {

const char* const kToolVersion = "circq 1.0.0";
const std::vector<std::string> kAllSuites = {"validate", "curvature", "frames", "identities",
                                             "theorems"};

namespace {

constexpr exec_mode kRunMode = exec_mode::openmp;

vec4 random_vec(rng64& r, double scale = 1.0) {
    return {scale * r.gauss(), scale * r.gauss(), scale * r.gauss(), scale * r.gauss()};
}

vec4 random_unit_vec(rng64& r) {
    for (;;) {
        vec4 v = random_vec(r);
        double n = std::sqrt(dot(v, v));
        if (n > 1e-6) return scale(v, 1.0 / n);
    }
}

// A > C > B > 0 by construction.
void random_abc(rng64& r, double& A, double& B, double& C) {
    B = r.uniform(0.2, 1.5);
    C = B + r.uniform(0.1, 2.0);
    A = C + r.uniform(0.1, 2.0);
}

metric_at_point random_constant_metric(std::uint64_t seed) {
    rng64 r(seed);
    double A, B, C;
    random_abc(r, A, B, C);
    return metric_at_constants(A, B, C);
}

q_coords random_unit_coords(rng64& r) {
    vec4 v = random_unit_vec(r);
    return {v[0], v[1], v[2], v[3]};
}

// Unit coordinates whose both plane denominators stay away from zero.
q_coords random_plane_safe_coords(rng64& r) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        q_coords c = random_unit_coords(r);
        double cf = cos_phi(c), ct = cos_theta(c);
        if (1.0 - cf * cf > 1e-3 && 1.0 - ct * ct > 1e-3) return c;
    }
    throw circq_error("plane-safe coordinate sampling exhausted 256 attempts");
}

// Per-slot error capture so exceptions never escape an OpenMP region; the
// first slot's error (by index, not by thread timing) is rethrown.
struct slot_errors {
    std::vector<std::string> msg;
    explicit slot_errors(int n) : msg(static_cast<std::size_t>(n)) {}
    void rethrow_first(const char* kernel) const {
        for (std::size_t i = 0; i < msg.size(); ++i)
            if (!msg[i].empty())
                throw circq_error(std::string(kernel) + " item " + std::to_string(i) + ": " +
                                  msg[i]);
    }
};

template <typename F>
void guarded_parallel_for(int n, exec_mode mode, slot_errors& errs, F&& f) {
    parallel_for(n, mode, [&](int i) {
        try {
            f(i);
        } catch (const std::exception& e) {
            errs.msg[static_cast<std::size_t>(i)] = e.what();
        }
    });
}

const metric_at_point& sampling_metric() {
    static const metric_at_point m = metric_at_constants(3.0, 1.0, 2.0);
    return m;
}

double frame_gram_residual(const frame_q& f) {
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double want = a == b ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(f.gram[a][b] - want));
        }
    return worst;
}

}  // namespace

sweep_stats positivity_sweep(int n, std::uint64_t seed, exec_mode mode) {
    std::vector<double> slot(static_cast<std::size_t>(n));
    parallel_for(n, mode, [&](int i) {
        rng64 r(derive_seed(seed, static_cast<std::uint64_t>(i), 0x501));
        double A, B, C;
        random_abc(r, A, B, C);
        auto ev = circulant_eigenvalues(A, B, C);
        slot[static_cast<std::size_t>(i)] = *std::min_element(ev.begin(), ev.end());
    });
    sweep_stats s;
    s.n = n;
    s.worst = n > 0 ? slot[0] : 0.0;
    for (double v : slot) {
        s.worst = std::min(s.worst, v);
        if (!(v > 0.0)) ++s.failures;
    }
    return s;
}

sweep_stats isometry_sweep(int n, std::uint64_t seed, exec_mode mode) {
    std::vector<double> slot(static_cast<std::size_t>(n));
    slot_errors errs(n);
    guarded_parallel_for(n, mode, errs, [&](int i) {
        rng64 r(derive_seed(seed, static_cast<std::uint64_t>(i), 0x150));
        double A, B, C;
        random_abc(r, A, B, C);
        metric_at_point m = metric_at_constants(A, B, C);
        double scale_x = std::exp(r.uniform(-2.0, 2.0));
        vec4 x = random_vec(r, scale_x);
        vec4 y = random_vec(r, scale_x);
        double res = isometry_residual(m, x, y) / (1.0 + std::abs(inner(m, x, y)));
        slot[static_cast<std::size_t>(i)] = res;
    });
    errs.rethrow_first("isometry_sweep");
    sweep_stats s;
    s.n = n;
    for (double v : slot) {
        s.worst = std::max(s.worst, v);
        if (v > 1e-13) ++s.failures;
    }
    return s;
}

qbasis_sweep_stats qbasis_oracle_sweep(int n, std::uint64_t seed, exec_mode mode) {
    // 0 = agree, 1 = disagree, 2 = inside the tolerance band (skipped).
    std::vector<int> slot(static_cast<std::size_t>(n), 0);
    parallel_for(n, mode, [&](int i) {
        rng64 r(derive_seed(seed, static_cast<std::uint64_t>(i), 0x0B5));
        vec4 x;
        if (i % 8 == 7) {
            // Crafted degenerate families.
            if ((i / 8) % 2 == 0) {
                double a = r.gauss(), b = r.gauss();
                x = {a, b, a, b};  // q-eigenplane: rows x and q^2 x coincide
            } else {
                double a = r.gauss(), b = r.gauss(), c = r.gauss();
                x = {a, b, c, a + c - b};  // (x1+x3)^2 = (x2+x4)^2
            }
        } else {
            x = random_vec(r, std::exp(r.uniform(-1.5, 1.5)));
        }
        double p = lema2_product(x);
        double sum = std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]) + std::abs(x[3]);
        double scale4 = sum * sum * sum * sum;
        if (p != 0.0 && std::abs(p) < 1e-9 * scale4) {
            slot[static_cast<std::size_t>(i)] = 2;
            return;
        }
        mat4 rows{};
        vec4 v = x;
        for (int k = 0; k < 4; ++k) {
            rows[k] = v;
            v = q_apply(v);
        }
        dmatrix m(4, 4);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) m.at(a, b) = rows[a][b];
        bool oracle_full_rank = nullspace(m, 1e-10).empty();
        if (induces_q_basis(x) != oracle_full_rank) slot[static_cast<std::size_t>(i)] = 1;
    });
    qbasis_sweep_stats s;
    s.n = n;
    for (int v : slot) {
        if (v == 1) ++s.disagreements;
        if (v == 2) ++s.band_skipped;
    }
    return s;
}

sweep_stats kalgebra_sweep(int n, std::uint64_t seed, exec_mode mode) {
    std::vector<double> slot(static_cast<std::size_t>(n));
    parallel_for(n, mode, [&](int i) {
        rng64 r(derive_seed(seed, static_cast<std::uint64_t>(i), 0xA16));
        slot[static_cast<std::size_t>(i)] = kcoeffs_forms_residual(random_unit_coords(r));
    });
    sweep_stats s;
    s.n = n;
    for (double v : slot) {
        s.worst = std::max(s.worst, v);
        if (v > 1e-12) ++s.failures;
    }
    return s;
}

sweep_stats frame_construction_sweep(int n, std::uint64_t seed, exec_mode mode) {
    std::vector<double> slot(static_cast<std::size_t>(n), 0.0);
    std::vector<int> failed(static_cast<std::size_t>(n), 0);
    parallel_for(n, mode, [&](int i) {
        try {
            metric_at_point m =
                random_constant_metric(derive_seed(seed, static_cast<std::uint64_t>(i), 0xF4A));
            frame_q f = orthogonal_q_basis(m);
            slot[static_cast<std::size_t>(i)] = frame_gram_residual(f);
        } catch (const std::exception&) {
            failed[static_cast<std::size_t>(i)] = 1;
        }
    });
    sweep_stats s;
    s.n = n;
    for (int i = 0; i < n; ++i) {
        if (failed[static_cast<std::size_t>(i)]) {
            ++s.failures;
        } else {
            s.worst = std::max(s.worst, slot[static_cast<std::size_t>(i)]);
        }
    }
    return s;
}

sweep_stats dop_sweep(int n_tensors, int n_frames, std::uint64_t seed, exec_mode mode) {
    const int total = n_tensors * n_frames;
    std::vector<double> slot(static_cast<std::size_t>(total));
    slot_errors errs(total);
    guarded_parallel_for(total, mode, errs, [&](int e) {
        const int t = e / n_frames, fi = e % n_frames;
        curvature_at_point T =
            sample_invariant_tensor(sampling_metric(), invariance_class::full_q,
                                    derive_seed(seed, static_cast<std::uint64_t>(t), 0xD0B));
        metric_at_point mf =
            random_constant_metric(derive_seed(seed, static_cast<std::uint64_t>(fi), 0xF0A));
        frame_q f = orthogonal_q_basis(mf);
        double worst = 0.0;
        for (const auto& [id, res] : dop_identities(T, f)) {
            (void)id;
            worst = std::max(worst, res);
        }
        slot[static_cast<std::size_t>(e)] = worst / (1.0 + max_abs(T.R));
    });
    errs.rethrow_first("dop_sweep");
    sweep_stats s;
    s.n = total;
    for (double v : slot) {
        s.worst = std::max(s.worst, v);
        if (v > 1e-12) ++s.failures;
    }
    return s;
}

sweep_stats master_sweep(int n, std::uint64_t seed, exec_mode mode) {
    std::vector<double> slot(static_cast<std::size_t>(n));
    slot_errors errs(n);
    guarded_parallel_for(n, mode, errs, [&](int i) {
        const auto ui = static_cast<std::uint64_t>(i);
        curvature_at_point T = sample_invariant_tensor(
            sampling_metric(), invariance_class::full_q, derive_seed(seed, ui, 0x3A5));
        metric_at_point mf = random_constant_metric(derive_seed(seed, ui, 0x3A6));
        frame_q f = orthogonal_q_basis(mf);
        rng64 r(derive_seed(seed, ui, 0x3A7));
        q_coords c = random_plane_safe_coords(r);
        slot[static_cast<std::size_t>(i)] = master_identity(T, f, c).residual;
    });
    errs.rethrow_first("master_sweep");
    sweep_stats s;
    s.n = n;
    for (double v : slot) {
        s.worst = std::max(s.worst, v);
        if (v > 1e-10) ++s.failures;
    }
    return s;
}

sweep_stats curvature_symmetry_sweep(int n_metrics, int n_points, std::uint64_t seed,
                                     exec_mode mode) {
    const int total = n_metrics * n_points;
    std::vector<double> slot(static_cast<std::size_t>(total));
    slot_errors errs(total);
    guarded_parallel_for(total, mode, errs, [&](int e) {
        const int mi = e / n_points, pi = e % n_points;
        rng64 rm(derive_seed(seed, static_cast<std::uint64_t>(mi), 0xC06));
        char a_s[160], b_s[160], c_s[160];
        switch (mi % 3) {
            case 0:
                std::snprintf(a_s, sizeof(a_s), "3 + %.17g*sin(X1 + %.17g*X2)",
                              rm.uniform(-0.2, 0.2), rm.uniform(-2.0, 2.0));
                std::snprintf(b_s, sizeof(b_s), "1 + %.17g*cos(X3 - %.17g*X4)",
                              rm.uniform(-0.15, 0.15), rm.uniform(-2.0, 2.0));
                std::snprintf(c_s, sizeof(c_s), "2 + %.17g*sin(X2*X3)", rm.uniform(-0.2, 0.2));
                break;
            case 1:
                std::snprintf(a_s, sizeof(a_s), "3 + %.17g*X1*X2", rm.uniform(-0.3, 0.3));
                std::snprintf(b_s, sizeof(b_s), "1 + %.17g*X3", rm.uniform(-0.2, 0.2));
                std::snprintf(c_s, sizeof(c_s), "2 + %.17g*X4*X4", rm.uniform(-0.4, 0.4));
                break;
            default:
                std::snprintf(a_s, sizeof(a_s), "3 + %.17g*exp(0 - X1*X1)",
                              rm.uniform(-0.15, 0.15));
                std::snprintf(b_s, sizeof(b_s), "1 + %.17g*sin(X1 + X2 + X3 + X4)",
                              rm.uniform(-0.15, 0.15));
                std::snprintf(c_s, sizeof(c_s), "2 + %.17g/(2 + X2*X2)", rm.uniform(-0.3, 0.3));
                break;
        }
        metric_field f = parse_metric_field(a_s, b_s, c_s);
        rng64 rp(derive_seed(seed, static_cast<std::uint64_t>(e), 0xC07));
        vec4 p{rp.uniform(-0.5, 0.5), rp.uniform(-0.5, 0.5), rp.uniform(-0.5, 0.5),
               rp.uniform(-0.5, 0.5)};
        (void)pi;
        curvature_at_point R = riemann(circulant_jet_field(f), p);
        double abs_res =
            std::max(std::max(R.antisym1, R.antisym2), std::max(R.pair_exchange, R.bianchi));
        slot[static_cast<std::size_t>(e)] = abs_res / std::max(max_abs(R.R), 1e-30);
    });
    errs.rethrow_first("curvature_symmetry_sweep");
    sweep_stats s;
    s.n = total;
    for (double v : slot) {
        s.worst = std::max(s.worst, v);
        if (v > 1e-7) ++s.failures;
    }
    return s;
}

sweep_stats sphere_mu_sweep(int n, std::uint64_t seed, exec_mode mode) {
    const metric_jet_field field = round_sphere_jet_field();
    std::vector<double> slot(static_cast<std::size_t>(n));
    slot_errors errs(n);
    guarded_parallel_for(n, mode, errs, [&](int i) {
        rng64 r(derive_seed(seed, static_cast<std::uint64_t>(i), 0x5FE));
        vec4 p{r.uniform(-0.8, 0.8), r.uniform(-0.8, 0.8), r.uniform(-0.8, 0.8),
               r.uniform(-0.8, 0.8)};
        metric_jets jets = field(p);
        metric_at_point m;
        m.g = jets.g;
        m.g_inv = inverse4(jets.g);
        m.point = p;
        curvature_at_point R = riemann(field, p);
        double worst = 0.0;
        for (int k = 0; k < 2; ++k) {
            vec4 x = random_unit_vec(r), y = random_unit_vec(r);
            double mu = sectional(m, R, x, y);
            worst = std::max(worst, std::abs(mu - 1.0));
        }
        slot[static_cast<std::size_t>(i)] = worst;
    });
    errs.rethrow_first("sphere_mu_sweep");
    sweep_stats s;
    s.n = n;
    for (double v : slot) {
        s.worst = std::max(s.worst, v);
        if (v > 1e-6) ++s.failures;
    }
    return s;
}

theorem_sweep_stats theorem_sweep_456(int cases, std::uint64_t seed, exec_mode mode) {
    std::vector<std::array<double, 7>> slot(static_cast<std::size_t>(cases));
    slot_errors errs(cases);
    guarded_parallel_for(cases, mode, errs, [&](int i) {
        const auto ui = static_cast<std::uint64_t>(i);
        curvature_at_point T = sample_invariant_tensor(
            sampling_metric(), invariance_class::full_q, derive_seed(seed, ui, 0x71));
        frame_q f = orthogonal_q_basis(random_constant_metric(derive_seed(seed, ui, 0x72)));
        rng64 r(derive_seed(seed, ui, 0x70));
        auto pick = [&](double lo, double hi) {
            double v = r.uniform(lo, hi);
            return r.next_u64() & 1u ? v : -v;
        };
        std::array<double, 7> out{};

        // th4, cos(phi)=0 gate
        q_coords u1 = sample_with_angles(0.0, pick(0.1, 0.8), derive_seed(seed, ui, 0x73));
        for (const auto& rep : thm4(T, f, u1))
            if (rep.id == "mu-r") out[0] = rep.residual;
        // th4, cos(theta)=0 gate
        q_coords u2 = sample_with_angles(pick(0.05, 0.45), 0.0, derive_seed(seed, ui, 0x74));
        for (const auto& rep : thm4(T, f, u2))
            if (rep.id == "mu-r2") out[1] = rep.residual;
        // th5
        q_coords u3 = sample_with_angles(0.0, pick(0.1, 0.8), derive_seed(seed, ui, 0x75));
        q_coords y5 = sample_with_angles(0.0, 0.5, derive_seed(seed, ui, 0x76));
        q_coords z5 = sample_with_angles(0.0, -0.5, derive_seed(seed, ui, 0x77));
        out[2] = thm5(T, f, u3, y5, z5).residual;
        // th6
        q_coords u4 = sample_with_angles(pick(0.05, 0.45), 0.0, derive_seed(seed, ui, 0x78));
        q_coords y6 = sample_with_angles(0.5, 0.0, derive_seed(seed, ui, 0x79));
        q_coords z6 = sample_with_angles(-0.5, 0.0, derive_seed(seed, ui, 0x7A));
        theorem_report r6 = thm6(T, f, u4, y6, z6);
        out[3] = r6.residual;
        out[4] = r6.aux_residual;
        // exact slices
        q_coords s1 = sample_with_angles(0.0, pick(0.1, 0.8), derive_seed(seed, ui, 0x7B));
        out[5] = master_slice_phi(T, f, s1).residual;
        q_coords s2 = sample_with_angles(pick(0.05, 0.45), 0.0, derive_seed(seed, ui, 0x7C));
        out[6] = master_slice_theta(T, f, s2).residual;
        slot[static_cast<std::size_t>(i)] = out;
    });
    errs.rethrow_first("theorem_sweep_456");
    theorem_sweep_stats s;
    s.n = cases;
    for (const auto& o : slot) {
        s.worst_mu_r = std::max(s.worst_mu_r, o[0]);
        s.worst_mu_r2 = std::max(s.worst_mu_r2, o[1]);
        s.worst_mu_r3 = std::max(s.worst_mu_r3, o[2]);
        s.worst_mu_r4 = std::max(s.worst_mu_r4, o[3]);
        s.worst_mu_r4_variant = std::max(s.worst_mu_r4_variant, o[4]);
        s.worst_slice_phi = std::max(s.worst_slice_phi, o[5]);
        s.worst_slice_theta = std::max(s.worst_slice_theta, o[6]);
    }
    return s;
}

thm7_sweep_stats thm7_sweep(int cases, std::uint64_t seed, exec_mode mode) {
    std::vector<std::array<double, 3>> slot(static_cast<std::size_t>(cases));
    slot_errors errs(cases);
    guarded_parallel_for(cases, mode, errs, [&](int i) {
        const auto ui = static_cast<std::uint64_t>(i);
        curvature_at_point T = sample_invariant_tensor(
            sampling_metric(), invariance_class::last_pair_q, derive_seed(seed, ui, 0x81));
        frame_q f = orthogonal_q_basis(random_constant_metric(derive_seed(seed, ui, 0x82)));
        rng64 r(derive_seed(seed, ui, 0x83));
        q_coords c = random_plane_safe_coords(r);
        auto [rep_q2, rep_scaling] = thm7(T, f, c);
        slot[static_cast<std::size_t>(i)] = {rep_q2.residual, rep_scaling.residual,
                                             rep_q2.aux_residual};
    });
    errs.rethrow_first("thm7_sweep");
    thm7_sweep_stats s;
    s.n = cases;
    for (const auto& o : slot) {
        s.worst_mu_q2 = std::max(s.worst_mu_q2, o[0]);
        s.worst_scaling = std::max(s.worst_scaling, o[1]);
        s.worst_components = std::max(s.worst_components, o[2]);
    }
    return s;
}

collapse_stats constant_curvature_collapse(std::uint64_t seed) {
    metric_at_point m = metric_at_constants(3.0, 1.0, 2.0);
    frame_q f = orthogonal_q_basis(m);
    curvature_at_point R = constant_curvature(m, 0.7);
    collapse_stats out;

    q_coords u1 = sample_with_angles(0.0, 0.37, derive_seed(seed, 1, 0x90));
    for (const auto& rep : thm4(R, f, u1)) out.thm4 = std::max(out.thm4, rep.residual);
    q_coords u2 = sample_with_angles(0.21, 0.0, derive_seed(seed, 2, 0x90));
    for (const auto& rep : thm4(R, f, u2)) out.thm4 = std::max(out.thm4, rep.residual);

    q_coords u5 = sample_with_angles(0.0, -0.63, derive_seed(seed, 3, 0x90));
    q_coords y5 = sample_with_angles(0.0, 0.5, derive_seed(seed, 4, 0x90));
    q_coords z5 = sample_with_angles(0.0, -0.5, derive_seed(seed, 5, 0x90));
    out.thm5 = thm5(R, f, u5, y5, z5).residual;

    q_coords u6 = sample_with_angles(-0.33, 0.0, derive_seed(seed, 6, 0x90));
    q_coords y6 = sample_with_angles(0.5, 0.0, derive_seed(seed, 7, 0x90));
    q_coords z6 = sample_with_angles(-0.5, 0.0, derive_seed(seed, 8, 0x90));
    out.thm6 = thm6(R, f, u6, y6, z6).residual;
    return out;
}

// ==== CLI suite execution ===================================================

namespace {

struct suite_ctx {
    const run_config& cfg;
    const metric_field& field;
    vec4 point{};
    int point_index = 0;
    std::uint64_t base_seed = 0;
    double tol_scale = 1.0;

    double tol(const std::string& id, double def) const {
        auto it = cfg.tolerances.find(id);
        return (it != cfg.tolerances.end() ? it->second : def) * tol_scale;
    }
    std::uint64_t item_seed(std::uint64_t check_tag, std::uint64_t item) const {
        return derive_seed(base_seed, check_tag, item);
    }
};

check_entry make_check(const suite_ctx& ctx, std::string id, double value, double def_tol,
                       std::string detail = {}) {
    check_entry c;
    c.id = std::move(id);
    c.value = value;
    c.tolerance = ctx.tol(c.id, def_tol);
    c.pass = value <= *c.tolerance;
    c.detail = std::move(detail);
    return c;
}

check_entry make_info(std::string id, double value, std::string detail) {
    check_entry c;
    c.id = std::move(id);
    c.value = value;
    c.tolerance = std::nullopt;
    c.pass = true;
    c.detail = std::move(detail);
    return c;
}

template <typename F>
double worst_over(int n, std::uint64_t seed_tag, const suite_ctx& ctx, F&& item) {
    std::vector<double> slot(static_cast<std::size_t>(n));
    slot_errors errs(n);
    guarded_parallel_for(n, kRunMode, errs, [&](int i) {
        slot[static_cast<std::size_t>(i)] =
            item(i, ctx.item_seed(seed_tag, static_cast<std::uint64_t>(i)));
    });
    errs.rethrow_first("suite check");
    double worst = 0.0;
    for (double v : slot) worst = std::max(worst, v);
    return worst;
}

void run_validate(const suite_ctx& ctx, suite_result& out) {
    double a = eval_value(ctx.field.A, ctx.point);
    double b = eval_value(ctx.field.B, ctx.point);
    double c = eval_value(ctx.field.C, ctx.point);
    double margin = std::min(std::min(a - c, c - b), b);
    {
        check_entry e;
        e.id = "positivity-ab";
        e.value = margin;
        e.tolerance = std::nullopt;
        e.pass = margin > 0.0;
        e.detail = e.pass ? "min(A-C, C-B, B) margin at the point"
                          : positivity_violation(a, c, b).what();
        out.checks.push_back(std::move(e));
    }
    auto ev = circulant_eigenvalues(a, b, c);
    double min_ev = *std::min_element(ev.begin(), ev.end());
    {
        check_entry e;
        e.id = "positivity-eigenvalues";
        e.value = min_ev;
        e.tolerance = std::nullopt;
        e.pass = min_ev > 0.0;
        e.detail = "smallest closed-form eigenvalue of g";
        out.checks.push_back(std::move(e));
    }
    if (margin <= 0.0 || min_ev <= 0.0) return;

    metric_at_point m = metric_at(ctx.field, ctx.point);
    double worst = worst_over(256, 0x15A, ctx, [&](int, std::uint64_t s) {
        rng64 r(s);
        double sc = std::exp(r.uniform(-2.0, 2.0));
        vec4 x = random_vec(r, sc), y = random_vec(r, sc);
        return isometry_residual(m, x, y) / (1.0 + std::abs(inner(m, x, y)));
    });
    out.checks.push_back(make_check(ctx, "isometry-2.1", worst, 1e-13,
                                    "max normalized |g(qx,qy)-g(x,y)| over 256 pairs"));
}

void run_curvature(const suite_ctx& ctx, suite_result& out) {
    metric_at_point m = metric_at(ctx.field, ctx.point);
    (void)m;
    curvature_at_point R = riemann(circulant_jet_field(ctx.field), ctx.point);
    double denom = std::max(max_abs(R.R), 1e-30);
    out.checks.push_back(make_check(ctx, "curvature-antisym1", R.antisym1 / denom, 1e-7,
                                    "relative |R(x,y,z,u)+R(y,x,z,u)|"));
    out.checks.push_back(make_check(ctx, "curvature-antisym2", R.antisym2 / denom, 1e-7,
                                    "relative |R(x,y,z,u)+R(x,y,u,z)|"));
    out.checks.push_back(make_check(ctx, "curvature-pair-exchange", R.pair_exchange / denom, 1e-7,
                                    "relative |R(x,y,z,u)-R(z,u,x,y)|"));
    out.checks.push_back(make_check(ctx, "curvature-bianchi", R.bianchi / denom, 1e-7,
                                    "relative first Bianchi cyclic sum"));
    bool const_metric = is_constant_expr(ctx.field.A) && is_constant_expr(ctx.field.B) &&
                        is_constant_expr(ctx.field.C);
    if (const_metric) {
        out.checks.push_back(make_check(ctx, "curvature-flatness", max_abs(R.R), 1e-12,
                                        "max |R| for a constant-coefficient metric"));
    }
    out.checks.push_back(make_info(
        "curvature-q-invariance", invariance_residual(R.R, kMaskAllSlots) / denom,
        "informational: relative q-pullback deviation of R at the point"));
}

void run_frames(const suite_ctx& ctx, suite_result& out) {
    metric_at_point m = metric_at(ctx.field, ctx.point);

    qbasis_sweep_stats qs = qbasis_oracle_sweep(256, ctx.item_seed(0x0B5, 0), kRunMode);
    out.checks.push_back(make_check(ctx, "qbasis-oracle", static_cast<double>(qs.disagreements),
                                    0.0,
                                    "predicate vs rank-oracle disagreements over 256 vectors (" +
                                        std::to_string(qs.band_skipped) + " band-skipped)"));

    try {
        frame_q f = orthogonal_q_basis(m);
        out.checks.push_back(make_check(ctx, "orthogonal-qbasis", frame_gram_residual(f), 1e-10,
                                        "max |Gram - I| of the constructed basis"));
    } catch (const solve_failure& e) {
        check_entry c;
        c.id = "orthogonal-qbasis";
        c.value = e.best_residual;
        c.tolerance = ctx.tol(c.id, 1e-10);
        c.pass = false;
        c.detail = e.what();
        out.checks.push_back(std::move(c));
    }

    double worst = worst_over(64, 0x731, ctx, [&](int, std::uint64_t s) {
        rng64 r(s);
        vec4 x;
        do {
            x = random_vec(r);
        } while (!induces_q_basis(x));
        vec4 qx = q_apply(x), q2x = q_apply(qx), q3x = q_apply(q2x);
        double g01 = inner(m, x, qx), g12 = inner(m, qx, q2x), g23 = inner(m, q2x, q3x),
               g30 = inner(m, q3x, x);
        double g02 = inner(m, x, q2x), g13 = inner(m, qx, q3x);
        double norm = 1.0 + std::abs(g01) + std::abs(g02);
        double w = std::abs(g01 - g12);
        w = std::max(w, std::abs(g12 - g23));
        w = std::max(w, std::abs(g23 - g30));
        w = std::max(w, std::abs(g02 - g13));
        return w / norm;
    });
    out.checks.push_back(make_check(ctx, "t31-chains", worst, 1e-12,
                                    "normalized deviation of the g(x,qx) and g(x,q2x) chains"));
}

void run_identities(const suite_ctx& ctx, suite_result& out) {
    metric_at_point m = metric_at(ctx.field, ctx.point);
    frame_q f = orthogonal_q_basis(m);

    double dop_worst = worst_over(8, 0xD00, ctx, [&](int, std::uint64_t s) {
        curvature_at_point T =
            sample_invariant_tensor(sampling_metric(), invariance_class::full_q, s);
        double w = 0.0;
        for (const auto& [id, res] : dop_identities(T, f)) {
            (void)id;
            w = std::max(w, res);
        }
        return w / (1.0 + max_abs(T.R));
    });
    out.checks.push_back(make_check(ctx, "dop-residuals", dop_worst, 1e-12,
                                    "max normalized dop2..dop8 residual, 8 synthetic tensors"));

    double k_worst = worst_over(512, 0xA16, ctx, [&](int, std::uint64_t s) {
        rng64 r(s);
        return kcoeffs_forms_residual(random_unit_coords(r));
    });
    out.checks.push_back(make_check(ctx, "kcoeffs-forms", k_worst, 1e-12,
                                    "max |K polynomial - K cosine| over 512 coordinates"));

    double master_worst = worst_over(64, 0x3A5, ctx, [&](int, std::uint64_t s) {
        curvature_at_point T =
            sample_invariant_tensor(sampling_metric(), invariance_class::full_q, s);
        rng64 r(derive_seed(s, 1, 2));
        q_coords c = random_plane_safe_coords(r);
        return master_identity(T, f, c).residual;
    });
    out.checks.push_back(make_check(ctx, "master-identity", master_worst, 1e-10,
                                    "max (mu+mu) residual over 64 tensor/coordinate draws"));

    double slice_phi = worst_over(32, 0x5F1, ctx, [&](int, std::uint64_t s) {
        curvature_at_point T =
            sample_invariant_tensor(sampling_metric(), invariance_class::full_q, s);
        rng64 r(derive_seed(s, 3, 4));
        double ct = r.uniform(-0.8, 0.8);
        q_coords c = sample_with_angles(0.0, ct, derive_seed(s, 5, 6));
        return master_slice_phi(T, f, c).residual;
    });
    out.checks.push_back(make_check(ctx, "master-slice-phi", slice_phi, 1e-10,
                                    "exact cos(phi)=0 slice of (mu+mu), 32 draws"));

    double slice_theta = worst_over(32, 0x5F2, ctx, [&](int, std::uint64_t s) {
        curvature_at_point T =
            sample_invariant_tensor(sampling_metric(), invariance_class::full_q, s);
        rng64 r(derive_seed(s, 3, 4));
        double cf = r.uniform(-0.45, 0.45);
        q_coords c = sample_with_angles(cf, 0.0, derive_seed(s, 5, 6));
        return master_slice_theta(T, f, c).residual;
    });
    out.checks.push_back(make_check(ctx, "master-slice-theta", slice_theta, 1e-10,
                                    "exact cos(theta)=0 slice of (mu+mu), 32 draws"));
}

void run_theorems(const suite_ctx& ctx, suite_result& out) {
    metric_at_point m = metric_at(ctx.field, ctx.point);
    frame_q f = orthogonal_q_basis(m);

    const int cases = 16;
    std::vector<std::array<double, 5>> slot(cases);
    slot_errors errs(cases);
    guarded_parallel_for(cases, kRunMode, errs, [&](int i) {
        const auto ui = static_cast<std::uint64_t>(i);
        curvature_at_point T = sample_invariant_tensor(
            sampling_metric(), invariance_class::full_q, ctx.item_seed(0x711, ui));
        rng64 r(ctx.item_seed(0x712, ui));
        auto pick = [&](double lo, double hi) {
            double v = r.uniform(lo, hi);
            return r.next_u64() & 1u ? v : -v;
        };
        std::array<double, 5> o{};
        q_coords u1 = sample_with_angles(0.0, pick(0.1, 0.8), ctx.item_seed(0x713, ui));
        for (const auto& rep : thm4(T, f, u1))
            if (rep.id == "mu-r") o[0] = rep.residual;
        q_coords u2 = sample_with_angles(pick(0.05, 0.45), 0.0, ctx.item_seed(0x714, ui));
        for (const auto& rep : thm4(T, f, u2))
            if (rep.id == "mu-r2") o[1] = rep.residual;
        q_coords u3 = sample_with_angles(0.0, pick(0.1, 0.8), ctx.item_seed(0x715, ui));
        q_coords y5 = sample_with_angles(0.0, 0.5, ctx.item_seed(0x716, ui));
        q_coords z5 = sample_with_angles(0.0, -0.5, ctx.item_seed(0x717, ui));
        o[2] = thm5(T, f, u3, y5, z5).residual;
        q_coords u4 = sample_with_angles(pick(0.05, 0.45), 0.0, ctx.item_seed(0x718, ui));
        q_coords y6 = sample_with_angles(0.5, 0.0, ctx.item_seed(0x719, ui));
        q_coords z6 = sample_with_angles(-0.5, 0.0, ctx.item_seed(0x71A, ui));
        theorem_report r6 = thm6(T, f, u4, y6, z6);
        o[3] = r6.residual;
        o[4] = r6.aux_residual;
        slot[static_cast<std::size_t>(i)] = o;
    });
    errs.rethrow_first("theorems suite");
    std::array<double, 5> worst{};
    for (const auto& o : slot)
        for (int k = 0; k < 5; ++k) worst[static_cast<std::size_t>(k)] =
            std::max(worst[static_cast<std::size_t>(k)], o[static_cast<std::size_t>(k)]);

    out.checks.push_back(make_check(ctx, "thm4-mu-r", worst[0], 1e-10,
                                    "worst gated (mu-r) residual, 16 synthetic tensors"));
    out.checks.push_back(make_check(ctx, "thm4-mu-r2", worst[1], 1e-10,
                                    "worst gated (mu-r2) residual, 16 synthetic tensors"));
    out.checks.push_back(make_check(ctx, "thm5-mu-r3", worst[2], 1e-9,
                                    "worst (mu-r3) interpolation residual, 16 synthetic tensors"));
    out.checks.push_back(make_check(ctx, "thm6-mu-r4", worst[3], 1e-9,
                                    "worst printed (mu-r4) residual, 16 synthetic tensors"));
    out.checks.push_back(make_info("thm6-mu-r4-qx-variant", worst[4],
                                   "informational: worst residual of the mu(x,qx) variant"));

    collapse_stats col = constant_curvature_collapse(ctx.item_seed(0xC01, 0));
    out.checks.push_back(make_check(ctx, "thm4-collapse", col.thm4, 1e-10,
                                    "constant-curvature collapse of thm4"));
    out.checks.push_back(make_check(ctx, "thm5-collapse", col.thm5, 1e-10,
                                    "constant-curvature collapse of thm5"));
    out.checks.push_back(make_check(ctx, "thm6-collapse", col.thm6, 1e-10,
                                    "constant-curvature collapse of thm6"));

    thm7_sweep_stats t7 = thm7_sweep(16, ctx.item_seed(0x7E7, 0), kRunMode);
    out.checks.push_back(make_check(ctx, "thm7-mu-r5-q2", t7.worst_mu_q2, 1e-10,
                                    "worst |mu(u,q2u)| on last-pair tensors"));
    out.checks.push_back(make_check(ctx, "thm7-mu-r5-scaling", t7.worst_scaling, 1e-10,
                                    "worst mu(u,qu) scaling residual on last-pair tensors"));
    out.checks.push_back(make_check(ctx, "thm7-components", t7.worst_components, 1e-11,
                                    "worst vanishing-component and chain consequence"));
}

}  // namespace

run_report execute_run(const run_config& cfg, const std::vector<std::string>& suite_filter,
                       double tol_scale) {
    const auto t0 = std::chrono::steady_clock::now();
    run_report rep;
    rep.config = cfg;
    rep.tol_scale = tol_scale;
    rep.tool_version = kToolVersion;

    std::vector<std::string> active;
    for (const auto& name : kAllSuites) {
        const auto& pool = suite_filter.empty() ? cfg.suites : suite_filter;
        if (std::find(pool.begin(), pool.end(), name) != pool.end()) active.push_back(name);
    }

    metric_field field = parse_metric_field(cfg.metric_a, cfg.metric_b, cfg.metric_c);
    constexpr std::uint64_t suite_tags[] = {0x5641, 0x4356, 0x4652, 0x4944, 0x5448};

    for (const auto& name : active) {
        const std::size_t suite_idx = static_cast<std::size_t>(
            std::find(kAllSuites.begin(), kAllSuites.end(), name) - kAllSuites.begin());
        for (std::size_t pi = 0; pi < cfg.points.size(); ++pi) {
            suite_ctx ctx{cfg, field};
            ctx.point = {cfg.points[pi][0], cfg.points[pi][1], cfg.points[pi][2],
                         cfg.points[pi][3]};
            ctx.point_index = static_cast<int>(pi);
            ctx.base_seed = derive_seed(cfg.seed, suite_tags[suite_idx], pi);
            ctx.tol_scale = tol_scale;

            suite_result sr;
            sr.name = name;
            sr.point_index = ctx.point_index;
            sr.point = ctx.point;
            try {
                if (name == "validate") run_validate(ctx, sr);
                else if (name == "curvature") run_curvature(ctx, sr);
                else if (name == "frames") run_frames(ctx, sr);
                else if (name == "identities") run_identities(ctx, sr);
                else run_theorems(ctx, sr);
            } catch (const positivity_violation& e) {
                check_entry c;
                c.id = "metric-validity";
                c.value = 0.0;
                c.tolerance = std::nullopt;
                c.pass = false;
                c.detail = e.what();
                sr.checks.push_back(std::move(c));
            }
            sr.pass = std::all_of(sr.checks.begin(), sr.checks.end(),
                                  [](const check_entry& c) { return c.pass; });
            rep.overall_pass = rep.overall_pass && sr.pass;
            rep.suites.push_back(std::move(sr));
        }
    }
    const auto t1 = std::chrono::steady_clock::now();
    rep.wall_clock_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rep;
}

}  // namespace circq
