#pragma once

#include <vector>

namespace ntnho {

inline constexpr double kEarthRadiusM = 6'371'000.0;

/// Ground point in the local tangent plane. Origin is the cell center,
/// satellites move along +x.
struct GroundPosition {
    double x_m = 0.0;
    double y_m = 0.0;
};

/// One LEO satellite on the linear overhead pass. The sub-satellite point
/// sits at (along_track_m, 0) in the local frame.
struct SatelliteState {
    double along_track_m = 0.0;
    double altitude_m = 600'000.0;
    double speed_mps = 7'560.0;
};

struct ConstellationConfig {
    int num_satellites = 3;
    double spacing_m = 50'000.0;
    double altitude_m = 600'000.0;
    double speed_mps = 7'560.0;

    /// Pass ends when the last satellite is over the cell center.
    double sim_duration_s() const;

    /// Throws std::invalid_argument on non-positive spacing/altitude/speed
    /// or fewer than one satellite.
    void validate() const;
};

/// Satellite states at time t. Satellite 0 starts directly above the cell
/// center and the others trail at one spacing each.
/// Throws std::out_of_range if t is outside [0, sim_duration].
std::vector<SatelliteState> propagate(const ConstellationConfig& config, double t_s);

/// Horizontal distance between a ground point and the sub-satellite point.
double horizontal_distance_m(const GroundPosition& ue, const SatelliteState& sat);

/// Elevation of the UE->satellite ray above the local horizontal, in
/// (0, 90]. Uses the flat tangent-plane horizontal offset.
double elevation_angle_deg(const GroundPosition& ue, const SatelliteState& sat);

/// Slant range from the spherical-Earth relation
///   d = sqrt(Re^2 sin^2(a) + h^2 + 2 h Re) - Re sin(a).
double slant_distance_m(double elevation_deg, double altitude_m);
double slant_distance_m(const GroundPosition& ue, const SatelliteState& sat);

/// Elevation and slant range of one link in a single pass; the engine's
/// hot loop uses this instead of the two separate calls.
struct LinkGeometry {
    double horizontal_m;
    double elevation_deg;
    double slant_m;
};
LinkGeometry link_geometry(const GroundPosition& ue, const SatelliteState& sat);

} // namespace ntnho
