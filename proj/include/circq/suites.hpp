#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circq/config.hpp"
#include "circq/curvature.hpp"
#include "circq/tensor.hpp"

namespace circq {

// Every sweep kernel has a serial reference path and an OpenMP path over the
// same per-item code; items write into their own slot and the reduction is
// serial, so both modes produce bitwise-identical results.
enum class exec_mode { serial, openmp };

template <typename F>
void parallel_for(int n, exec_mode mode, F&& f) {
    if (mode == exec_mode::openmp) {
#if defined(CIRCQ_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
        for (int i = 0; i < n; ++i) f(i);
    } else {
        for (int i = 0; i < n; ++i) f(i);
    }
}

struct sweep_stats {
    double worst = 0.0;          // kernel-specific extremum, see each kernel
    std::uint64_t failures = 0;  // items that violated their own predicate
    int n = 0;
};

// Random (A,C,B) with A > C > B > 0; worst = smallest closed-form circulant
// eigenvalue seen (must stay > 0), failures counts non-positive sets.
sweep_stats positivity_sweep(int n, std::uint64_t seed, exec_mode mode);

// worst = max |g(qx,qy) - g(x,y)| / (1 + |g(x,y)|) over random metrics and
// vector pairs.
sweep_stats isometry_sweep(int n, std::uint64_t seed, exec_mode mode);

struct qbasis_sweep_stats {
    std::uint64_t disagreements = 0;  // predicate vs determinant oracle
    std::uint64_t band_skipped = 0;   // samples inside the tolerance band
    int n = 0;
};
qbasis_sweep_stats qbasis_oracle_sweep(int n, std::uint64_t seed, exec_mode mode);

// worst = max |K polynomial - K cosine| over random unit coordinates.
sweep_stats kalgebra_sweep(int n, std::uint64_t seed, exec_mode mode);

// Random valid constant metrics; worst = max Gram off-diagonal of the
// constructed orthogonal q-basis, failures counts solver failures.
sweep_stats frame_construction_sweep(int n, std::uint64_t seed, exec_mode mode);

// worst = max dop residual / (1 + max|R|) over tensors x frames.
sweep_stats dop_sweep(int n_tensors, int n_frames, std::uint64_t seed, exec_mode mode);

// worst = max master-identity residual over (tensor, frame, coords) triples.
sweep_stats master_sweep(int n, std::uint64_t seed, exec_mode mode);

// worst = max relative curvature symmetry residual over random
// expression-defined circulant metrics at random points.
sweep_stats curvature_symmetry_sweep(int n_metrics, int n_points, std::uint64_t seed,
                                     exec_mode mode);

// worst = max |mu - 1| over random planes of the round-sphere hook.
sweep_stats sphere_mu_sweep(int n, std::uint64_t seed, exec_mode mode);

struct theorem_sweep_stats {
    double worst_mu_r = 0.0;
    double worst_mu_r2 = 0.0;
    double worst_mu_r3 = 0.0;
    double worst_mu_r4 = 0.0;
    double worst_mu_r4_variant = 0.0;
    double worst_slice_phi = 0.0;
    double worst_slice_theta = 0.0;
    int n = 0;
};
// Gated th4/th5/th6 residual sweep on synthetic full-q tensors, plus the
// exact master-identity slices as cross-checks.
theorem_sweep_stats theorem_sweep_456(int cases, std::uint64_t seed, exec_mode mode);

struct thm7_sweep_stats {
    double worst_mu_q2 = 0.0;
    double worst_scaling = 0.0;
    double worst_components = 0.0;
    int n = 0;
};
thm7_sweep_stats thm7_sweep(int cases, std::uint64_t seed, exec_mode mode);

// Constant-curvature collapse residuals for th4/th5/th6 (the coefficient sum
// (1-4c^2) + 3/4(c+2c^2) + 3/4(2c^2-c) = 1-c^2 makes all three exact).
struct collapse_stats {
    double thm4 = 0.0;
    double thm5 = 0.0;
    double thm6 = 0.0;
};
collapse_stats constant_curvature_collapse(std::uint64_t seed);

// ==== CLI suite execution ===================================================

struct check_entry {
    std::string id;
    double value = 0.0;
    std::optional<double> tolerance;  // nullopt = informational entry
    bool pass = true;
    std::string detail;
};

struct suite_result {
    std::string name;
    int point_index = 0;
    vec4 point{};
    std::vector<check_entry> checks;
    bool pass = true;
};

struct run_report {
    run_config config;
    double tol_scale = 1.0;
    std::vector<suite_result> suites;
    bool overall_pass = true;
    double wall_clock_ms = 0.0;
    std::string tool_version;
};

// Executes the configured suites at every point, deterministically ordered
// by suite then point index. Throws on config-independent math errors; the
// caller maps those to exit code 3.
run_report execute_run(const run_config& cfg, const std::vector<std::string>& suite_filter,
                       double tol_scale);

extern const char* const kToolVersion;
extern const std::vector<std::string> kAllSuites;

}  // namespace circq
