#include "ntnho/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ntnho {

double ConstellationConfig::sim_duration_s() const {
    return static_cast<double>(num_satellites - 1) * spacing_m / speed_mps;
}

void ConstellationConfig::validate() const {
    if (num_satellites < 1) {
        throw std::invalid_argument("constellation: num_satellites must be >= 1");
    }
    if (spacing_m <= 0.0) {
        throw std::invalid_argument("constellation: spacing_m must be positive");
    }
    if (altitude_m <= 0.0) {
        throw std::invalid_argument("constellation: altitude_m must be positive");
    }
    if (speed_mps <= 0.0) {
        throw std::invalid_argument("constellation: speed_mps must be positive");
    }
}

std::vector<SatelliteState> propagate(const ConstellationConfig& config, double t_s) {
    config.validate();
    const double duration = config.sim_duration_s();
    if (t_s < 0.0 || t_s > duration + 1e-9) {
        throw std::out_of_range("propagate: t outside [0, sim_duration]");
    }
    std::vector<SatelliteState> sats(static_cast<std::size_t>(config.num_satellites));
    for (int i = 0; i < config.num_satellites; ++i) {
        sats[static_cast<std::size_t>(i)] = SatelliteState{
            -static_cast<double>(i) * config.spacing_m + config.speed_mps * t_s,
            config.altitude_m,
            config.speed_mps,
        };
    }
    return sats;
}

double horizontal_distance_m(const GroundPosition& ue, const SatelliteState& sat) {
    return std::hypot(ue.x_m - sat.along_track_m, ue.y_m);
}

double elevation_angle_deg(const GroundPosition& ue, const SatelliteState& sat) {
    const double rho = horizontal_distance_m(ue, sat);
    return std::atan2(sat.altitude_m, rho) * 180.0 / std::numbers::pi;
}

double slant_distance_m(double elevation_deg, double altitude_m) {
    const double sin_a = std::sin(elevation_deg * std::numbers::pi / 180.0);
    const double re = kEarthRadiusM;
    return std::sqrt(re * re * sin_a * sin_a + altitude_m * altitude_m + 2.0 * altitude_m * re) -
           re * sin_a;
}

namespace {

double slant_from_sin(double sin_a, double altitude_m) {
    const double re = kEarthRadiusM;
    return std::sqrt(re * re * sin_a * sin_a + altitude_m * altitude_m + 2.0 * altitude_m * re) -
           re * sin_a;
}

} // namespace

double slant_distance_m(const GroundPosition& ue, const SatelliteState& sat) {
    const double rho = horizontal_distance_m(ue, sat);
    const double sin_a = sat.altitude_m / std::hypot(rho, sat.altitude_m);
    return slant_from_sin(sin_a, sat.altitude_m);
}

LinkGeometry link_geometry(const GroundPosition& ue, const SatelliteState& sat) {
    const double rho = horizontal_distance_m(ue, sat);
    const double hyp = std::hypot(rho, sat.altitude_m);
    return LinkGeometry{
        rho,
        std::atan2(sat.altitude_m, rho) * 180.0 / std::numbers::pi,
        slant_from_sin(sat.altitude_m / hyp, sat.altitude_m),
    };
}

} // namespace ntnho
