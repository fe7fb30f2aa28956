#include "ntnho/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ntnho {

EnvironmentTable::EnvironmentTable()
    : rows_{{
          // bucket, Pr(LoS), sigma LoS, sigma NLoS, clutter loss
          {10, 0.282, 3.5, 15.5, 34.3},
          {20, 0.331, 3.4, 13.9, 30.9},
          {30, 0.398, 2.9, 12.4, 29.0},
          {40, 0.468, 3.0, 11.7, 27.7},
          {50, 0.537, 3.1, 10.6, 26.8},
          {60, 0.612, 2.7, 10.5, 26.2},
          {70, 0.738, 2.5, 10.1, 25.8},
          {80, 0.820, 2.3, 9.2, 25.5},
          {90, 0.981, 1.2, 9.2, 25.5},
      }} {}

const EnvironmentRow& EnvironmentTable::lookup(double elevation_deg) const {
    if (elevation_deg <= 0.0) {
        throw std::domain_error("environment lookup: elevation must be positive");
    }
    // Nearest 10-degree bucket with half-way values rounding up; below 5
    // degrees there is no nearer row than 10.
    int bucket = static_cast<int>(std::floor(elevation_deg / 10.0 + 0.5));
    if (bucket < 1) {
        bucket = 1;
    } else if (bucket > 9) {
        bucket = 9;
    }
    return rows_[static_cast<std::size_t>(bucket - 1)];
}

void EnvironmentTable::set_row(const EnvironmentRow& row) {
    if (row.elevation_bucket_deg < 10 || row.elevation_bucket_deg > 90 ||
        row.elevation_bucket_deg % 10 != 0) {
        throw std::invalid_argument("environment row: bucket must be one of 10,20,...,90");
    }
    rows_[static_cast<std::size_t>(row.elevation_bucket_deg / 10 - 1)] = row;
}

void EnvironmentTable::validate() const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const EnvironmentRow& row = rows_[i];
        if (row.los_probability < 0.0 || row.los_probability > 1.0) {
            throw std::invalid_argument("environment row: LoS probability outside [0, 1]");
        }
        if (row.sigma_sf_los_db < 0.0 || row.sigma_sf_nlos_db < 0.0 || row.clutter_loss_db < 0.0) {
            throw std::invalid_argument("environment row: dB values must be non-negative");
        }
        if (i > 0 && rows_[i - 1].los_probability >= row.los_probability) {
            throw std::invalid_argument(
                "environment table: LoS probability must increase with elevation");
        }
    }
}

double ChannelConfig::scintillation_db() const {
    return p_fluc_db / std::sqrt(2.0);
}

double ChannelConfig::eirp_per_prb_dbm() const {
    // dBW/MHz scaled to one PRB, then dBW -> dBm.
    return eirp_density_dbw_mhz + 10.0 * std::log10(prb_bandwidth_mhz) + 30.0;
}

void ChannelConfig::validate() const {
    if (carrier_ghz <= 0.0 || carrier_ghz >= 6.0) {
        throw std::invalid_argument(
            "channel: carrier_ghz must lie in (0, 6); the scintillation and "
            "gas-loss simplifications only hold below 6 GHz");
    }
    if (p_fluc_db < 0.0) {
        throw std::invalid_argument("channel: p_fluc_db must be non-negative");
    }
    if (prb_bandwidth_mhz <= 0.0) {
        throw std::invalid_argument("channel: prb_bandwidth_mhz must be positive");
    }
    environment.validate();
}

double fspl_db(double distance_m, double carrier_ghz) {
    if (distance_m <= 0.0 || carrier_ghz <= 0.0) {
        throw std::domain_error("fspl: distance and carrier frequency must be positive");
    }
    return 32.45 + 20.0 * std::log10(carrier_ghz) + 20.0 * std::log10(distance_m);
}

double basic_path_loss_db(double distance_m, double carrier_ghz, const EnvironmentRow& row,
                          PathBranch branch, double sf_db) {
    double pl = fspl_db(distance_m, carrier_ghz) + sf_db;
    if (branch == PathBranch::nlos) {
        pl += row.clutter_loss_db;
    }
    return pl;
}

double total_path_loss_db(double distance_m, double elevation_deg, double sf_los_db,
                          double sf_nlos_db, const ChannelConfig& config) {
    const EnvironmentRow& row = config.environment.lookup(elevation_deg);
    const double pl_los =
        basic_path_loss_db(distance_m, config.carrier_ghz, row, PathBranch::los, sf_los_db);
    const double pl_nlos =
        basic_path_loss_db(distance_m, config.carrier_ghz, row, PathBranch::nlos, sf_nlos_db);
    return row.los_probability * pl_los + (1.0 - row.los_probability) * pl_nlos +
           config.scintillation_db();
}

double rss_dbm(double pl_total_db, const ChannelConfig& config) {
    return config.eirp_per_prb_dbm() - pl_total_db;
}

namespace {

inline double dbm_to_mw(double dbm) {
    return std::pow(10.0, dbm / 10.0);
}

} // namespace

double sinr_db(double serving_dbm, std::span<const double> interferer_dbm, double noise_dbm) {
    if (!std::isfinite(serving_dbm)) {
        throw std::domain_error("sinr: serving signal must be finite");
    }
    double denom_mw = dbm_to_mw(noise_dbm);
    for (double i : interferer_dbm) {
        denom_mw += dbm_to_mw(i);
    }
    return 10.0 * std::log10(dbm_to_mw(serving_dbm) / denom_mw);
}

} // namespace ntnho
