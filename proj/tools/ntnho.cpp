// Command-line front end: expands a campaign spec into engine runs and
// writes the result tables.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "ntnho/config.hpp"
#include "ntnho/report.hpp"

namespace {

int run(int argc, char** argv) {
    CLI::App app{"LEO NTN handover-mechanism simulator"};

    std::string config_path;
    bool default_paper = false;
    std::string mechanism;
    std::string mobility;
    std::string sf_mode;
    long long seed = -1;
    int drops = -1;
    int users = -1;
    std::string out_path;
    std::string pathloss_path;
    std::string events_path;
    bool serial = false;
    int threads = 0;

    auto* cfg_opt = app.add_option("--config", config_path, "Campaign config file");
    app.add_flag("--default-paper", default_paper,
                 "Run the built-in paper parameter set (default when no --config is given)")
        ->excludes(cfg_opt);
    app.add_option("--mechanism", mechanism,
                   "Restrict the sweep to one mechanism: measurement|distance|elevation|timer");
    app.add_option("--mobility", mobility, "Restrict the sweep: static|mobile|both");
    app.add_option("--sf-mode", sf_mode, "Shadow-fading mode override: per_drop|per_step");
    double rss_filter_k = -1.0;
    app.add_option("--rss-filter-k", rss_filter_k,
                   "L3 filter coefficient for the measurement trigger's RSS");
    app.add_option("--seed", seed, "Base seed override");
    app.add_option("--drops", drops, "Drops per configuration override");
    app.add_option("--users", users, "Users per drop override");
    app.add_option("--out", out_path, "Results CSV path override");
    app.add_option("--trace-pathloss", pathloss_path, "Write a path-loss-vs-distance CSV here");
    app.add_option("--events", events_path, "Write a per-event trace CSV here");
    app.add_flag("--serial", serial, "Use the serial reference engine");
    app.add_option("--threads", threads, "OpenMP thread count (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // flag errors are configuration errors
    }

    ntnho::CampaignSpec spec = config_path.empty() ? ntnho::default_paper_spec()
                                                   : ntnho::parse_config_file(config_path);

    if (!mechanism.empty()) {
        if (mechanism != "measurement" && mechanism != "distance" && mechanism != "elevation" &&
            mechanism != "timer") {
            throw ntnho::ConfigError("config: --mechanism must be one of "
                                     "measurement|distance|elevation|timer, got '" +
                                     mechanism + "'");
        }
        spec.sweep.mechanisms = {mechanism};
    }
    if (!mobility.empty()) {
        if (mobility == "static") {
            spec.sweep.mobility = {ntnho::MobilityMode::static_users};
        } else if (mobility == "mobile") {
            spec.sweep.mobility = {ntnho::MobilityMode::smooth_random};
        } else if (mobility == "both") {
            spec.sweep.mobility = {ntnho::MobilityMode::static_users,
                                   ntnho::MobilityMode::smooth_random};
        } else {
            throw ntnho::ConfigError("config: --mobility must be static|mobile|both, got '" +
                                     mobility + "'");
        }
    }
    if (!sf_mode.empty()) {
        if (sf_mode == "per_drop") {
            spec.scenario.channel.shadow_fading = ntnho::ShadowFadingMode::per_drop;
        } else if (sf_mode == "per_step") {
            spec.scenario.channel.shadow_fading = ntnho::ShadowFadingMode::per_step;
        } else {
            throw ntnho::ConfigError("config: --sf-mode must be per_drop|per_step, got '" +
                                     sf_mode + "'");
        }
    }
    if (rss_filter_k >= 0.0) {
        spec.scenario.rss_filter_k = rss_filter_k;
    }
    if (seed >= 0) {
        spec.scenario.base_seed = static_cast<std::uint64_t>(seed);
    }
    if (drops >= 0) {
        spec.scenario.drops = drops;
    }
    if (users >= 0) {
        spec.scenario.users_per_drop = users;
    }
    if (!out_path.empty()) {
        spec.output.results = out_path;
    }
    if (!pathloss_path.empty()) {
        spec.output.pathloss_trace = pathloss_path;
    }
    if (!events_path.empty()) {
        spec.output.events = events_path;
    }
    ntnho::validate_spec(spec);
    spec.scenario.collect_events = !spec.output.events.empty();

    ntnho::RunOptions options;
    options.use_openmp = !serial;
    options.num_threads = threads;

    const std::vector<ntnho::SimConfig> grid = ntnho::expand_campaign(spec);
    std::vector<ntnho::MetricsRecord> records;
    std::vector<ntnho::TraceEvent> events;
    records.reserve(grid.size());
    for (const ntnho::SimConfig& cfg : grid) {
        records.push_back(ntnho::run_config(
            cfg, options, spec.scenario.collect_events ? &events : nullptr));
    }

    ntnho::write_results_csv(records, spec.output.results);
    std::fprintf(stderr, "wrote %zu result rows to %s\n", records.size(),
                 spec.output.results.c_str());
    if (!spec.output.events.empty()) {
        ntnho::write_events_csv(events, spec.output.events);
        std::fprintf(stderr, "wrote %zu events to %s\n", events.size(),
                     spec.output.events.c_str());
    }
    if (!spec.output.pathloss_trace.empty()) {
        const auto points =
            ntnho::pathloss_trace(spec.scenario, spec.output.pathloss_samples);
        ntnho::write_pathloss_csv(points, spec.output.pathloss_trace);
        std::fprintf(stderr, "wrote %zu path-loss samples to %s\n", points.size(),
                     spec.output.pathloss_trace.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ntnho::ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
