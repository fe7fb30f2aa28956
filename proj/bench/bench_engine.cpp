// Compares the serial reference engine against the OpenMP lane on
// full-scale drops and checks that both produce identical counts.

#include <chrono>
#include <cstdio>

#include "ntnho/engine.hpp"

using namespace ntnho;

namespace {

double time_drop(const SimConfig& cfg, const RunOptions& options, DropResult& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = run_drop(cfg, 0, options);
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void bench(const char* name, const SimConfig& cfg) {
    RunOptions serial;
    serial.use_openmp = false;
    RunOptions parallel;
    parallel.use_openmp = true;

    DropResult ref;
    DropResult par;
    // Warm-up, then three timed repetitions each.
    time_drop(cfg, serial, ref);
    double best_serial = 1e18;
    double best_parallel = 1e18;
    for (int rep = 0; rep < 3; ++rep) {
        DropResult r;
        best_serial = std::min(best_serial, time_drop(cfg, serial, r));
        best_parallel = std::min(best_parallel, time_drop(cfg, parallel, par));
    }

    const bool equal = ref.metrics.handovers == par.metrics.handovers &&
                       ref.metrics.pingpong_handovers == par.metrics.pingpong_handovers &&
                       ref.metrics.rlfs == par.metrics.rlfs;
    std::printf("%-28s serial %8.1f ms   openmp %8.1f ms   speedup %.2fx   results %s\n", name,
                best_serial, best_parallel, best_serial / best_parallel,
                equal ? "identical" : "MISMATCH");
    std::printf("%-28s hos %lld  pp %lld  rlf %lld\n", "", ref.metrics.handovers,
                ref.metrics.pingpong_handovers, ref.metrics.rlfs);
}

} // namespace

int main() {
    SimConfig timer_cfg;
    timer_cfg.mechanism = TimerTrigger{6.5};
    timer_cfg.users_per_drop = 1963;
    timer_cfg.drops = 1;
    timer_cfg.base_seed = 3;
    bench("timer 6.5 s, 1963 users", timer_cfg);

    SimConfig meas_cfg = timer_cfg;
    meas_cfg.mechanism = MeasurementTrigger{1.0, 20.0};
    meas_cfg.channel.shadow_fading = ShadowFadingMode::per_step;
    meas_cfg.rss_filter_k = 12.0;
    bench("measurement 1 dB / 20 ms", meas_cfg);

    SimConfig mobile_cfg = timer_cfg;
    mobile_cfg.mechanism = DistanceTrigger{2'000.0};
    mobile_cfg.mobility.mode = MobilityMode::smooth_random;
    bench("distance 2 km, mobile", mobile_cfg);
    return 0;
}
