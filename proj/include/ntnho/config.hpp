#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ntnho/engine.hpp"

namespace ntnho {

/// Bad configuration input (file content or flag values). The CLI maps this
/// to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Which mechanisms to sweep and over which grids. Offsets and TTT values
/// are in the units the result tables use.
struct SweepSpec {
    std::vector<std::string> mechanisms{"measurement", "distance", "elevation", "timer"};
    std::vector<MobilityMode> mobility{MobilityMode::static_users, MobilityMode::smooth_random};
    std::vector<double> ttt_ms{20, 40, 60, 80, 100};
    std::vector<double> hys_plus_off_db{1, 2, 3, 4};
    std::vector<double> d_off_km{1, 1.5, 2, 2.5, 3, 3.5, 4, 4.5, 5};
    std::vector<double> alpha_off_deg{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<double> t_off_s{6.4, 6.45, 6.5, 6.55, 6.6, 6.65, 6.7, 6.75, 6.8};
};

struct OutputSpec {
    std::string results = "results.csv";
    std::string events;          // empty = no event trace
    std::string pathloss_trace;  // empty = no trace
    int pathloss_samples = 251;
};

/// A full campaign: the shared scenario, the sweep grids and where the
/// output goes. Default construction is the paper parameter set.
struct CampaignSpec {
    SimConfig scenario;
    SweepSpec sweep;
    OutputSpec output;
};

/// The Table-II parameter set (identical to a default-constructed spec;
/// kept as a named entry point so presets stay greppable).
CampaignSpec default_paper_spec();

/// Parses the sectioned key=value campaign file on top of the defaults.
/// Unknown sections or keys, malformed lines and out-of-range values are
/// ConfigErrors naming the offending key.
CampaignSpec parse_config_file(const std::string& path);
CampaignSpec parse_config_text(const std::string& text, const std::string& origin = "<config>");

/// Cross-field validation (also called by parse/expand).
void validate_spec(const CampaignSpec& spec);

/// The spec serialized back to config-file form; parsing it reproduces the
/// spec exactly.
std::string canonical_form(const CampaignSpec& spec);

/// Expands the sweep into concrete engine configurations, ordered the way
/// the result tables are: mechanism, then offset ascending, then TTT
/// ascending, then static before mobile.
std::vector<SimConfig> expand_campaign(const CampaignSpec& spec);

} // namespace ntnho
