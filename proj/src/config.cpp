#include "ntnho/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ntnho {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size() || !std::isfinite(v)) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v != std::floor(v)) {
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + value + "'");
    }
    return static_cast<long long>(v);
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const std::string& item : split_list(value)) {
        out.push_back(parse_double(key, item));
    }
    if (out.empty()) {
        throw ConfigError("config: key '" + key + "' expects a non-empty list");
    }
    return out;
}

MobilityMode parse_mobility(const std::string& key, const std::string& value) {
    if (value == "static") {
        return MobilityMode::static_users;
    }
    if (value == "mobile") {
        return MobilityMode::smooth_random;
    }
    throw ConfigError("config: key '" + key + "' expects 'static' or 'mobile', got '" + value +
                      "'");
}

const char* mobility_word(MobilityMode mode) {
    return mode == MobilityMode::static_users ? "static" : "mobile";
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) {
            out += ",";
        }
        out += fmt(values[i]);
    }
    return out;
}

void apply_scenario_key(CampaignSpec& spec, const std::string& key, const std::string& value) {
    SimConfig& sc = spec.scenario;
    if (key == "altitude_m") {
        sc.constellation.altitude_m = parse_double(key, value);
    } else if (key == "speed_mps") {
        sc.constellation.speed_mps = parse_double(key, value);
    } else if (key == "spacing_m") {
        sc.constellation.spacing_m = parse_double(key, value);
    } else if (key == "num_satellites") {
        sc.constellation.num_satellites = static_cast<int>(parse_int(key, value));
    } else if (key == "cell_radius_m") {
        sc.cell_radius_m = parse_double(key, value);
    } else if (key == "carrier_ghz") {
        sc.channel.carrier_ghz = parse_double(key, value);
    } else if (key == "eirp_dbw_mhz") {
        sc.channel.eirp_density_dbw_mhz = parse_double(key, value);
    } else if (key == "prb_mhz") {
        sc.channel.prb_bandwidth_mhz = parse_double(key, value);
    } else if (key == "noise_dbm") {
        sc.channel.noise_dbm = parse_double(key, value);
    } else if (key == "p_fluc_db") {
        sc.channel.p_fluc_db = parse_double(key, value);
    } else if (key == "shadow_fading") {
        if (value == "per_drop") {
            sc.channel.shadow_fading = ShadowFadingMode::per_drop;
        } else if (value == "per_step") {
            sc.channel.shadow_fading = ShadowFadingMode::per_step;
        } else {
            throw ConfigError("config: key 'shadow_fading' expects 'per_drop' or 'per_step'");
        }
    } else if (key == "q_in_db") {
        sc.rlf.q_in_db = parse_double(key, value);
    } else if (key == "q_out_db") {
        sc.rlf.q_out_db = parse_double(key, value);
    } else if (key == "t310_ms") {
        sc.rlf.t310_ms = parse_double(key, value);
    } else if (key == "pingpong_window_s") {
        sc.pingpong_window_s = parse_double(key, value);
    } else if (key == "v_max_mps") {
        sc.mobility.v_max_mps = parse_double(key, value);
    } else if (key == "accel_max_mps2") {
        sc.mobility.accel_max_mps2 = parse_double(key, value);
    } else if (key == "mean_direction_hold_s") {
        sc.mobility.mean_direction_hold_s = parse_double(key, value);
    } else if (key == "direction_drift_s") {
        sc.mobility.direction_drift_s = parse_double(key, value);
    } else if (key == "step_ms") {
        sc.step_ms = parse_double(key, value);
    } else if (key == "rss_filter_k") {
        if (value.empty() || value == "none") {
            sc.rss_filter_k.reset();
        } else {
            sc.rss_filter_k = parse_double(key, value);
        }
    } else if (key.rfind("table_row_", 0) == 0) {
        const std::string bucket_str = key.substr(10);
        const long long bucket = parse_int(key, bucket_str);
        const auto fields = parse_double_list(key, value);
        if (fields.size() != 4) {
            throw ConfigError("config: key '" + key +
                              "' expects 'los_prob,sigma_los,sigma_nlos,clutter_loss'");
        }
        try {
            sc.channel.environment.set_row(EnvironmentRow{static_cast<int>(bucket), fields[0],
                                                          fields[1], fields[2], fields[3]});
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: key '") + key + "': " + e.what());
        }
    } else {
        throw ConfigError("config: unknown key '" + key + "' in [scenario]");
    }
}

void apply_sweep_key(CampaignSpec& spec, const std::string& key, const std::string& value) {
    SweepSpec& sw = spec.sweep;
    if (key == "mechanisms") {
        sw.mechanisms = split_list(value);
        if (sw.mechanisms.empty()) {
            throw ConfigError("config: key 'mechanisms' expects a non-empty list");
        }
    } else if (key == "mobility") {
        sw.mobility.clear();
        for (const std::string& item : split_list(value)) {
            sw.mobility.push_back(parse_mobility(key, item));
        }
        if (sw.mobility.empty()) {
            throw ConfigError("config: key 'mobility' expects a non-empty list");
        }
    } else if (key == "ttt_ms") {
        sw.ttt_ms = parse_double_list(key, value);
    } else if (key == "hys_plus_off_db") {
        sw.hys_plus_off_db = parse_double_list(key, value);
    } else if (key == "d_off_km") {
        sw.d_off_km = parse_double_list(key, value);
    } else if (key == "alpha_off_deg") {
        sw.alpha_off_deg = parse_double_list(key, value);
    } else if (key == "t_off_s") {
        sw.t_off_s = parse_double_list(key, value);
    } else {
        throw ConfigError("config: unknown key '" + key + "' in [sweep]");
    }
}

void apply_seeds_key(CampaignSpec& spec, const std::string& key, const std::string& value) {
    if (key == "base_seed") {
        spec.scenario.base_seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "channel_seed") {
        spec.scenario.channel_seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "drops") {
        spec.scenario.drops = static_cast<int>(parse_int(key, value));
    } else if (key == "users") {
        spec.scenario.users_per_drop = static_cast<int>(parse_int(key, value));
    } else {
        throw ConfigError("config: unknown key '" + key + "' in [seeds]");
    }
}

void apply_output_key(CampaignSpec& spec, const std::string& key, const std::string& value) {
    if (key == "results") {
        spec.output.results = value;
    } else if (key == "events") {
        spec.output.events = value;
    } else if (key == "pathloss_trace") {
        spec.output.pathloss_trace = value;
    } else if (key == "pathloss_samples") {
        spec.output.pathloss_samples = static_cast<int>(parse_int(key, value));
    } else {
        throw ConfigError("config: unknown key '" + key + "' in [output]");
    }
}

} // namespace

CampaignSpec default_paper_spec() {
    return CampaignSpec{};
}

CampaignSpec parse_config_text(const std::string& text, const std::string& origin) {
    CampaignSpec spec = default_paper_spec();
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') {
            continue;
        }
        if (stripped.front() == '[') {
            if (stripped.back() != ']') {
                throw ConfigError("config: " + origin + ":" + std::to_string(line_no) +
                                  ": malformed section header '" + stripped + "'");
            }
            section = trim(stripped.substr(1, stripped.size() - 2));
            if (section != "scenario" && section != "sweep" && section != "seeds" &&
                section != "output") {
                throw ConfigError("config: unknown section '[" + section + "]'");
            }
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: " + origin + ":" + std::to_string(line_no) +
                              ": expected 'key = value', got '" + stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config: " + origin + ":" + std::to_string(line_no) +
                              ": empty key");
        }
        if (section == "scenario") {
            apply_scenario_key(spec, key, value);
        } else if (section == "sweep") {
            apply_sweep_key(spec, key, value);
        } else if (section == "seeds") {
            apply_seeds_key(spec, key, value);
        } else if (section == "output") {
            apply_output_key(spec, key, value);
        } else {
            throw ConfigError("config: " + origin + ":" + std::to_string(line_no) +
                              ": key '" + key + "' outside any section");
        }
    }
    validate_spec(spec);
    return spec;
}

CampaignSpec parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

void validate_spec(const CampaignSpec& spec) {
    try {
        spec.scenario.constellation.validate();
        spec.scenario.channel.validate();
        spec.scenario.mobility.validate();
        spec.scenario.rlf.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    const SimConfig& sc = spec.scenario;
    if (sc.step_ms <= 0.0) {
        throw ConfigError("config: key 'step_ms' must be positive");
    }
    if (sc.cell_radius_m <= 0.0) {
        throw ConfigError("config: key 'cell_radius_m' must be positive");
    }
    if (sc.pingpong_window_s <= 0.0) {
        throw ConfigError("config: key 'pingpong_window_s' must be positive");
    }
    if (sc.drops < 1) {
        throw ConfigError("config: key 'drops' must be >= 1");
    }
    if (sc.users_per_drop < 1) {
        throw ConfigError("config: key 'users' must be >= 1");
    }
    const double t310_ratio = sc.rlf.t310_ms / sc.step_ms;
    if (std::abs(t310_ratio - std::round(t310_ratio)) > 1e-9) {
        throw ConfigError("config: key 't310_ms' must be a multiple of step_ms");
    }
    if (spec.output.pathloss_samples < 2) {
        throw ConfigError("config: key 'pathloss_samples' must be >= 2");
    }
    if (sc.rss_filter_k && *sc.rss_filter_k < 0.0) {
        throw ConfigError("config: key 'rss_filter_k' must be >= 0");
    }

    for (const std::string& name : spec.sweep.mechanisms) {
        if (name != "measurement" && name != "distance" && name != "elevation" &&
            name != "timer") {
            throw ConfigError("config: key 'mechanisms' has unknown mechanism '" + name + "'");
        }
    }
    for (double ttt : spec.sweep.ttt_ms) {
        const double ratio = ttt / sc.step_ms;
        if (ttt <= 0.0 || std::abs(ratio - std::round(ratio)) > 1e-9) {
            throw ConfigError("config: key 'ttt_ms' value " + fmt(ttt) +
                              " is not a positive multiple of step_ms");
        }
    }
    for (double v : spec.sweep.hys_plus_off_db) {
        if (v < 0.0) {
            throw ConfigError("config: key 'hys_plus_off_db' values must be >= 0");
        }
    }
    for (double v : spec.sweep.d_off_km) {
        if (v < 0.0) {
            throw ConfigError("config: key 'd_off_km' values must be >= 0");
        }
    }
    for (double v : spec.sweep.alpha_off_deg) {
        if (v < 0.0) {
            throw ConfigError("config: key 'alpha_off_deg' values must be >= 0");
        }
    }
    for (double v : spec.sweep.t_off_s) {
        if (v <= 0.0) {
            throw ConfigError("config: key 't_off_s' values must be positive");
        }
    }
}

std::string canonical_form(const CampaignSpec& spec) {
    const SimConfig& sc = spec.scenario;
    std::ostringstream out;
    out << "[scenario]\n";
    out << "altitude_m = " << fmt(sc.constellation.altitude_m) << "\n";
    out << "speed_mps = " << fmt(sc.constellation.speed_mps) << "\n";
    out << "spacing_m = " << fmt(sc.constellation.spacing_m) << "\n";
    out << "num_satellites = " << sc.constellation.num_satellites << "\n";
    out << "cell_radius_m = " << fmt(sc.cell_radius_m) << "\n";
    out << "carrier_ghz = " << fmt(sc.channel.carrier_ghz) << "\n";
    out << "eirp_dbw_mhz = " << fmt(sc.channel.eirp_density_dbw_mhz) << "\n";
    out << "prb_mhz = " << fmt(sc.channel.prb_bandwidth_mhz) << "\n";
    out << "noise_dbm = " << fmt(sc.channel.noise_dbm) << "\n";
    out << "p_fluc_db = " << fmt(sc.channel.p_fluc_db) << "\n";
    out << "shadow_fading = "
        << (sc.channel.shadow_fading == ShadowFadingMode::per_drop ? "per_drop" : "per_step")
        << "\n";
    for (const EnvironmentRow& row : sc.channel.environment.rows()) {
        out << "table_row_" << row.elevation_bucket_deg << " = " << fmt(row.los_probability)
            << "," << fmt(row.sigma_sf_los_db) << "," << fmt(row.sigma_sf_nlos_db) << ","
            << fmt(row.clutter_loss_db) << "\n";
    }
    out << "q_in_db = " << fmt(sc.rlf.q_in_db) << "\n";
    out << "q_out_db = " << fmt(sc.rlf.q_out_db) << "\n";
    out << "t310_ms = " << fmt(sc.rlf.t310_ms) << "\n";
    out << "pingpong_window_s = " << fmt(sc.pingpong_window_s) << "\n";
    out << "v_max_mps = " << fmt(sc.mobility.v_max_mps) << "\n";
    out << "accel_max_mps2 = " << fmt(sc.mobility.accel_max_mps2) << "\n";
    out << "mean_direction_hold_s = " << fmt(sc.mobility.mean_direction_hold_s) << "\n";
    out << "direction_drift_s = " << fmt(sc.mobility.direction_drift_s) << "\n";
    out << "step_ms = " << fmt(sc.step_ms) << "\n";
    if (sc.rss_filter_k) {
        out << "rss_filter_k = " << fmt(*sc.rss_filter_k) << "\n";
    }
    out << "\n[sweep]\n";
    out << "mechanisms = ";
    for (std::size_t i = 0; i < spec.sweep.mechanisms.size(); ++i) {
        out << (i ? "," : "") << spec.sweep.mechanisms[i];
    }
    out << "\n";
    out << "mobility = ";
    for (std::size_t i = 0; i < spec.sweep.mobility.size(); ++i) {
        out << (i ? "," : "") << mobility_word(spec.sweep.mobility[i]);
    }
    out << "\n";
    out << "ttt_ms = " << fmt_list(spec.sweep.ttt_ms) << "\n";
    out << "hys_plus_off_db = " << fmt_list(spec.sweep.hys_plus_off_db) << "\n";
    out << "d_off_km = " << fmt_list(spec.sweep.d_off_km) << "\n";
    out << "alpha_off_deg = " << fmt_list(spec.sweep.alpha_off_deg) << "\n";
    out << "t_off_s = " << fmt_list(spec.sweep.t_off_s) << "\n";
    out << "\n[seeds]\n";
    out << "base_seed = " << sc.base_seed << "\n";
    if (sc.channel_seed) {
        out << "channel_seed = " << *sc.channel_seed << "\n";
    }
    out << "drops = " << sc.drops << "\n";
    out << "users = " << sc.users_per_drop << "\n";
    out << "\n[output]\n";
    out << "results = " << spec.output.results << "\n";
    if (!spec.output.events.empty()) {
        out << "events = " << spec.output.events << "\n";
    }
    if (!spec.output.pathloss_trace.empty()) {
        out << "pathloss_trace = " << spec.output.pathloss_trace << "\n";
    }
    out << "pathloss_samples = " << spec.output.pathloss_samples << "\n";
    return out.str();
}

std::vector<SimConfig> expand_campaign(const CampaignSpec& spec) {
    validate_spec(spec);

    auto sorted = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    auto has_mechanism = [&](const char* name) {
        return std::find(spec.sweep.mechanisms.begin(), spec.sweep.mechanisms.end(), name) !=
               spec.sweep.mechanisms.end();
    };
    std::vector<MobilityMode> mobility_order;
    for (MobilityMode mode : {MobilityMode::static_users, MobilityMode::smooth_random}) {
        if (std::find(spec.sweep.mobility.begin(), spec.sweep.mobility.end(), mode) !=
            spec.sweep.mobility.end()) {
            mobility_order.push_back(mode);
        }
    }

    std::vector<SimConfig> grid;
    auto push = [&](const HoMechanism& mechanism, MobilityMode mode) {
        SimConfig cfg = spec.scenario;
        cfg.mechanism = mechanism;
        cfg.mobility.mode = mode;
        grid.push_back(cfg);
    };

    if (has_mechanism("measurement")) {
        for (double margin : sorted(spec.sweep.hys_plus_off_db)) {
            for (double ttt : sorted(spec.sweep.ttt_ms)) {
                for (MobilityMode mode : mobility_order) {
                    push(MeasurementTrigger{margin, ttt}, mode);
                }
            }
        }
    }
    if (has_mechanism("distance")) {
        for (double off_km : sorted(spec.sweep.d_off_km)) {
            for (MobilityMode mode : mobility_order) {
                push(DistanceTrigger{off_km * 1000.0}, mode);
            }
        }
    }
    if (has_mechanism("elevation")) {
        for (double off : sorted(spec.sweep.alpha_off_deg)) {
            for (MobilityMode mode : mobility_order) {
                push(ElevationTrigger{off}, mode);
            }
        }
    }
    if (has_mechanism("timer")) {
        for (double t_off : sorted(spec.sweep.t_off_s)) {
            for (MobilityMode mode : mobility_order) {
                push(TimerTrigger{t_off}, mode);
            }
        }
    }
    if (grid.empty()) {
        throw ConfigError("config: sweep expands to an empty campaign");
    }
    return grid;
}

} // namespace ntnho
