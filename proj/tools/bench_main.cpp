#include <chrono>
#include <cstdio>
#include <string>

#include "circq/suites.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& f) {
    const auto t0 = clock_type::now();
    f();
    const auto t1 = clock_type::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

template <typename F>
void bench(const char* name, F&& kernel) {
    using circq::exec_mode;
    // Warm-up touches lazy caches (nullspace bases, parsed hooks) so the
    // timed runs compare kernel work only.
    kernel(exec_mode::serial);
    const double serial_ms = time_ms([&] { kernel(exec_mode::serial); });
    const double openmp_ms = time_ms([&] { kernel(exec_mode::openmp); });
    std::printf("%-24s serial %10.2f ms   openmp %10.2f ms   speedup %5.2fx\n", name, serial_ms,
                openmp_ms, openmp_ms > 0.0 ? serial_ms / openmp_ms : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
    const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 42;
#if defined(CIRCQ_HAVE_OPENMP)
    std::printf("openmp enabled; seed %llu\n", static_cast<unsigned long long>(seed));
#else
    std::printf("openmp NOT enabled: both columns run the serial path; seed %llu\n",
                static_cast<unsigned long long>(seed));
#endif
    using circq::exec_mode;
    bench("positivity", [&](exec_mode m) { circq::positivity_sweep(2'000'000, seed, m); });
    bench("isometry", [&](exec_mode m) { circq::isometry_sweep(500'000, seed, m); });
    bench("qbasis-oracle", [&](exec_mode m) { circq::qbasis_oracle_sweep(500'000, seed, m); });
    bench("k-algebra", [&](exec_mode m) { circq::kalgebra_sweep(1'000'000, seed, m); });
    bench("frame-construction", [&](exec_mode m) { circq::frame_construction_sweep(20'000, seed, m); });
    bench("dop-identities", [&](exec_mode m) { circq::dop_sweep(100, 20, seed, m); });
    bench("master-identity", [&](exec_mode m) { circq::master_sweep(5'000, seed, m); });
    bench("curvature-symmetry", [&](exec_mode m) { circq::curvature_symmetry_sweep(60, 10, seed, m); });
    bench("sphere-mu", [&](exec_mode m) { circq::sphere_mu_sweep(2'000, seed, m); });
    bench("theorem-456", [&](exec_mode m) { circq::theorem_sweep_456(300, seed, m); });
    bench("theorem-7", [&](exec_mode m) { circq::thm7_sweep(300, seed, m); });
    return 0;
}
