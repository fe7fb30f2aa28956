#include "ntnho/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ntnho {

void SimConfig::validate() const {
    constellation.validate();
    channel.validate();
    mobility.validate();
    rlf.validate();
    validate_mechanism(mechanism, step_ms);
    if (cell_radius_m <= 0.0) {
        throw std::invalid_argument("sim: cell_radius_m must be positive");
    }
    if (pingpong_window_s <= 0.0) {
        throw std::invalid_argument("sim: pingpong_window_s must be positive");
    }
    if (step_ms <= 0.0) {
        throw std::invalid_argument("sim: step_ms must be positive");
    }
    if (drops < 1) {
        throw std::invalid_argument("sim: drops must be >= 1");
    }
    if (users_per_drop < 1) {
        throw std::invalid_argument("sim: users_per_drop must be >= 1");
    }
    const double t310_ratio = rlf.t310_ms / step_ms;
    if (std::abs(t310_ratio - std::round(t310_ratio)) > 1e-9) {
        throw std::invalid_argument("sim: t310_ms must be a multiple of step_ms");
    }
    if (rss_filter_k && *rss_filter_k < 0.0) {
        throw std::invalid_argument("sim: rss_filter_k must be >= 0");
    }
}

namespace {

struct StepGrid {
    int num_steps = 0;           // steps after t = 0
    std::vector<double> t_ms;    // num_steps + 1 entries, t_ms[0] = 0
    std::vector<double> sat_x_m; // (num_steps + 1) x num_satellites, row-major
};

// The pass duration is generally not a whole number of steps (13227.51 ms at
// the defaults); the last step is clamped so the run still ends exactly when
// the final satellite reaches the cell center.
StepGrid build_grid(const SimConfig& cfg) {
    const double duration_ms = cfg.constellation.sim_duration_s() * 1000.0;
    StepGrid grid;
    grid.num_steps = static_cast<int>(std::ceil(duration_ms / cfg.step_ms - 1e-9));
    grid.num_steps = std::max(grid.num_steps, 1);
    const int n = cfg.constellation.num_satellites;
    grid.t_ms.resize(static_cast<std::size_t>(grid.num_steps) + 1);
    grid.sat_x_m.resize((static_cast<std::size_t>(grid.num_steps) + 1) *
                        static_cast<std::size_t>(n));
    for (int k = 0; k <= grid.num_steps; ++k) {
        const double t = std::min(static_cast<double>(k) * cfg.step_ms, duration_ms);
        grid.t_ms[static_cast<std::size_t>(k)] = t;
        const auto sats = propagate(cfg.constellation, t / 1000.0);
        for (int s = 0; s < n; ++s) {
            grid.sat_x_m[static_cast<std::size_t>(k) * static_cast<std::size_t>(n) +
                         static_cast<std::size_t>(s)] = sats[static_cast<std::size_t>(s)].along_track_m;
        }
    }
    grid.t_ms.back() = duration_ms;
    return grid;
}

struct UeCounts {
    long long hos = 0;
    long long pps = 0;
    long long rlfs = 0;
};

// Whole trajectory of one UE. UEs never interact, so this is the unit of
// parallel work; all randomness comes from the UE's own streams.
UeCounts simulate_user(const SimConfig& cfg, const StepGrid& grid, int drop, int ue,
                       std::vector<TraceEvent>* events) {
    const int n = cfg.constellation.num_satellites;
    const std::uint64_t ch_seed = cfg.channel_seed.value_or(cfg.base_seed);
    const auto udrop = static_cast<std::uint64_t>(drop);
    const auto uue = static_cast<std::uint64_t>(ue);

    auto placement_rng = seeded_stream(cfg.base_seed, udrop, uue, StreamPurpose::placement);
    UserState user = init_users(1, cfg.cell_radius_m, cfg.mobility, placement_rng)[0];
    auto mobility_rng = seeded_stream(cfg.base_seed, udrop, uue, StreamPurpose::mobility);
    auto sf_los_rng = seeded_stream(ch_seed, udrop, uue, StreamPurpose::shadow_los);
    auto sf_nlos_rng = seeded_stream(ch_seed, udrop, uue, StreamPurpose::shadow_nlos);
    std::normal_distribution<double> gauss;

    std::vector<double> z_los(static_cast<std::size_t>(n));
    std::vector<double> z_nlos(static_cast<std::size_t>(n));
    auto redraw_sf = [&] {
        for (double& z : z_los) {
            z = gauss(sf_los_rng);
        }
        for (double& z : z_nlos) {
            z = gauss(sf_nlos_rng);
        }
    };
    redraw_sf();

    std::vector<LinkSample> samples(static_cast<std::size_t>(n));
    auto compute_samples = [&](int step_index) {
        const double* sx = &grid.sat_x_m[static_cast<std::size_t>(step_index) *
                                         static_cast<std::size_t>(n)];
        for (int s = 0; s < n; ++s) {
            const SatelliteState sat{sx[s], cfg.constellation.altitude_m,
                                     cfg.constellation.speed_mps};
            const LinkGeometry geo = link_geometry(user.position, sat);
            const EnvironmentRow& row = cfg.channel.environment.lookup(geo.elevation_deg);
            const double pl = total_path_loss_db(
                geo.slant_m, geo.elevation_deg,
                z_los[static_cast<std::size_t>(s)] * row.sigma_sf_los_db,
                z_nlos[static_cast<std::size_t>(s)] * row.sigma_sf_nlos_db, cfg.channel);
            samples[static_cast<std::size_t>(s)] =
                LinkSample{geo.slant_m, geo.elevation_deg, pl, rss_dbm(pl, cfg.channel),
                           std::numeric_limits<double>::quiet_NaN()};
        }
    };

    // The measurement trigger may see an L3-filtered copy of the RSS; the
    // RLF monitor always runs on the instantaneous SINR.
    const bool filter_meas =
        cfg.rss_filter_k.has_value() && std::holds_alternative<MeasurementTrigger>(cfg.mechanism);
    const double filter_weight =
        filter_meas ? std::pow(2.0, -*cfg.rss_filter_k / 4.0) : 1.0;
    std::vector<LinkSample> measured(filter_meas ? static_cast<std::size_t>(n) : 0);
    auto update_measured = [&] {
        if (!filter_meas) {
            return;
        }
        for (std::size_t s = 0; s < measured.size(); ++s) {
            const double prev = measured[s].rss_dbm;
            measured[s] = samples[s];
            measured[s].rss_dbm = (1.0 - filter_weight) * prev + filter_weight * samples[s].rss_dbm;
        }
    };

    compute_samples(0);
    if (filter_meas) {
        measured.assign(samples.begin(), samples.end()); // filter seeded at t = 0
    }
    const auto trigger_view = [&]() -> std::span<const LinkSample> {
        return filter_meas ? std::span<const LinkSample>(measured)
                           : std::span<const LinkSample>(samples);
    };
    AssociationState assoc(n, initial_association(cfg.mechanism, trigger_view()));
    RlfMonitor monitor = cfg.rlf;
    monitor.phase = RlfMonitor::Phase::in_sync;
    monitor.t310_elapsed_ms = 0.0;
    PingPongTracker tracker;
    tracker.window_s = cfg.pingpong_window_s;

    UeCounts counts;
    std::vector<double> interferers(static_cast<std::size_t>(n) - 1);

    for (int k = 1; k <= grid.num_steps; ++k) {
        const double dt_ms = grid.t_ms[static_cast<std::size_t>(k)] -
                             grid.t_ms[static_cast<std::size_t>(k) - 1];
        const double t_s = grid.t_ms[static_cast<std::size_t>(k)] / 1000.0;

        if (cfg.mobility.mode == MobilityMode::smooth_random) {
            user = step_user(user, dt_ms / 1000.0, cfg.cell_radius_m, cfg.mobility, mobility_rng);
        }
        if (cfg.channel.shadow_fading == ShadowFadingMode::per_step) {
            redraw_sf();
        }
        compute_samples(k);
        update_measured();

        std::size_t idx = 0;
        for (int s = 0; s < n; ++s) {
            if (s != assoc.serving) {
                interferers[idx++] = samples[static_cast<std::size_t>(s)].rss_dbm;
            }
        }
        const double sinr = sinr_db(samples[static_cast<std::size_t>(assoc.serving)].rss_dbm,
                                    interferers, cfg.channel.noise_dbm);
        samples[static_cast<std::size_t>(assoc.serving)].sinr_db = sinr;

        if (update_rlf(monitor, sinr, dt_ms)) {
            ++counts.rlfs;
            const int old_serving = assoc.serving;
            assoc.serving = initial_association(cfg.mechanism, trigger_view());
            assoc.reset_triggers();
            if (events) {
                events->push_back(
                    TraceEvent{t_s, drop, ue, EventKind::rlf, old_serving, assoc.serving, false});
            }
            continue; // re-association is not a handover; trigger context is stale
        }

        if (const auto target = evaluate_trigger(assoc, cfg.mechanism, trigger_view(), dt_ms)) {
            const bool pp = record_handover(tracker, assoc.serving, *target, t_s);
            ++counts.hos;
            if (pp) {
                ++counts.pps;
            }
            if (events) {
                events->push_back(
                    TraceEvent{t_s, drop, ue, EventKind::handover, assoc.serving, *target, pp});
            }
            apply_handover(assoc, cfg.mechanism, *target);
        }
    }
    return counts;
}

MetricsRecord config_echo(const SimConfig& cfg) {
    MetricsRecord record;
    record.mechanism = mechanism_name(cfg.mechanism);
    record.offset = display_offset(cfg.mechanism);
    record.ttt_ms = mechanism_ttt_ms(cfg.mechanism);
    record.mobile = cfg.mobility.mode == MobilityMode::smooth_random;
    record.seed = cfg.base_seed;
    return record;
}

} // namespace

DropResult run_drop(const SimConfig& config, int drop_index, const RunOptions& options) {
    config.validate();
    if (drop_index < 0) {
        throw std::invalid_argument("run_drop: drop_index must be >= 0");
    }
    const StepGrid grid = build_grid(config);
    const int n_users = config.users_per_drop;

    std::vector<UeCounts> per_ue(static_cast<std::size_t>(n_users));
    std::vector<std::vector<TraceEvent>> per_ue_events(
        config.collect_events ? static_cast<std::size_t>(n_users) : 0);
    auto events_slot = [&](int u) -> std::vector<TraceEvent>* {
        return config.collect_events ? &per_ue_events[static_cast<std::size_t>(u)] : nullptr;
    };

#ifdef _OPENMP
    if (options.use_openmp) {
        const int threads = options.num_threads > 0 ? options.num_threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
        for (int u = 0; u < n_users; ++u) {
            per_ue[static_cast<std::size_t>(u)] =
                simulate_user(config, grid, drop_index, u, events_slot(u));
        }
    } else
#else
    (void)options;
#endif
    {
        for (int u = 0; u < n_users; ++u) {
            per_ue[static_cast<std::size_t>(u)] =
                simulate_user(config, grid, drop_index, u, events_slot(u));
        }
    }

    DropResult result;
    result.metrics = config_echo(config);
    for (const UeCounts& c : per_ue) {
        result.metrics.handovers += c.hos;
        result.metrics.pingpong_handovers += c.pps;
        result.metrics.rlfs += c.rlfs;
    }
    if (config.collect_events) {
        for (auto& ev : per_ue_events) {
            result.events.insert(result.events.end(), ev.begin(), ev.end());
        }
        std::stable_sort(result.events.begin(), result.events.end(),
                         [](const TraceEvent& a, const TraceEvent& b) { return a.t_s < b.t_s; });
    }
    return result;
}

MetricsRecord run_config(const SimConfig& config, const RunOptions& options,
                         std::vector<TraceEvent>* events) {
    config.validate();
    MetricsRecord total;
    bool first = true;
    for (int d = 0; d < config.drops; ++d) {
        DropResult drop = run_drop(config, d, options);
        if (first) {
            total = drop.metrics;
            first = false;
        } else {
            total.handovers += drop.metrics.handovers;
            total.pingpong_handovers += drop.metrics.pingpong_handovers;
            total.rlfs += drop.metrics.rlfs;
        }
        if (events) {
            events->insert(events->end(), drop.events.begin(), drop.events.end());
        }
    }
    return total;
}

std::vector<MetricsRecord> run_campaign(std::span<const SimConfig> grid,
                                        const RunOptions& options) {
    if (grid.empty()) {
        throw std::invalid_argument("campaign: empty configuration grid");
    }
    std::vector<MetricsRecord> records;
    records.reserve(grid.size());
    for (const SimConfig& cfg : grid) {
        records.push_back(run_config(cfg, options));
    }
    return records;
}

} // namespace ntnho
