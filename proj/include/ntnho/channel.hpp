#pragma once

#include <array>
#include <span>

namespace ntnho {

/// One elevation bucket of the dense-urban NTN parameter table:
/// LoS probability, shadow-fading sigmas and clutter loss.
struct EnvironmentRow {
    int elevation_bucket_deg = 0;
    double los_probability = 0.0;
    double sigma_sf_los_db = 0.0;
    double sigma_sf_nlos_db = 0.0;
    double clutter_loss_db = 0.0;
};

/// Nine rows at 10 degree steps. Defaults are the dense-urban values;
/// rows can be replaced from a config file to model other environments.
class EnvironmentTable {
public:
    EnvironmentTable(); // dense-urban defaults

    /// Nearest bucket, ties round up; anything at or below 5 degrees maps
    /// to the 10 degree row. Throws std::domain_error for elevation <= 0.
    const EnvironmentRow& lookup(double elevation_deg) const;

    /// Replace the row for row.elevation_bucket_deg (must be 10..90 step 10).
    void set_row(const EnvironmentRow& row);

    std::span<const EnvironmentRow, 9> rows() const { return rows_; }

    /// Throws std::invalid_argument if LoS probability is not strictly
    /// increasing with elevation or any dB value is negative.
    void validate() const;

private:
    std::array<EnvironmentRow, 9> rows_;
};

enum class ShadowFadingMode {
    per_drop, // one draw per (UE, satellite, branch) per drop
    per_step, // redrawn every simulation step
};

struct ChannelConfig {
    double carrier_ghz = 2.0;
    double p_fluc_db = 11.0;
    double eirp_density_dbw_mhz = 34.0;
    double prb_bandwidth_mhz = 0.18;
    double noise_dbm = -121.4;
    ShadowFadingMode shadow_fading = ShadowFadingMode::per_drop;
    EnvironmentTable environment;

    /// Ionospheric scintillation loss, P_fluc / sqrt(2).
    double scintillation_db() const;

    /// EIRP allocated to one PRB, in dBm.
    double eirp_per_prb_dbm() const;

    void validate() const;
};

enum class PathBranch { los, nlos };

/// Free-space path loss, 32.45 + 20 log10(f_GHz) + 20 log10(d_m).
/// Throws std::domain_error on non-positive inputs.
double fspl_db(double distance_m, double carrier_ghz);

/// FSPL plus shadow fading; clutter loss is added on the NLoS branch only.
double basic_path_loss_db(double distance_m, double carrier_ghz, const EnvironmentRow& row,
                          PathBranch branch, double sf_db);

/// LoS-probability-weighted combination of the two branches plus
/// scintillation, all in dB. Shadow-fading samples are supplied by the
/// caller so that randomness stays outside this module.
double total_path_loss_db(double distance_m, double elevation_deg, double sf_los_db,
                          double sf_nlos_db, const ChannelConfig& config);

/// Received signal strength: per-PRB EIRP minus total path loss.
double rss_dbm(double pl_total_db, const ChannelConfig& config);

/// Linear-domain S / (sum I + N). Throws std::domain_error on non-finite
/// serving signal.
double sinr_db(double serving_dbm, std::span<const double> interferer_dbm, double noise_dbm);

/// Per (UE, satellite, step) link quantities. sinr_db is only filled in
/// for the serving satellite.
struct LinkSample {
    double distance_m = 0.0;
    double elevation_deg = 0.0;
    double pl_total_db = 0.0;
    double rss_dbm = 0.0;
    double sinr_db = 0.0;
};

} // namespace ntnho
