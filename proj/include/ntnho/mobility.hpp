#pragma once

#include <random>
#include <vector>

#include "ntnho/geometry.hpp"

namespace ntnho {

enum class MobilityMode { static_users, smooth_random };

/// A speed the random-mobility model prefers over the uniform background.
struct SpeedPreference {
    double speed_mps = 0.0;
    double probability = 0.0;
};

struct MobilityConfig {
    MobilityMode mode = MobilityMode::static_users;
    double v_max_mps = 10.0;
    /// Empty means the standard preset {0 m/s: 0.2, v_max: 0.2}; the
    /// remaining probability mass is uniform over [0, v_max].
    std::vector<SpeedPreference> preferred_speeds;
    double accel_max_mps2 = 1.0;
    /// Mean of the exponentially distributed time between target-direction
    /// changes.
    double mean_direction_hold_s = 5.0;
    /// A direction change drifts linearly to the new target over this long.
    double direction_drift_s = 1.0;

    std::vector<SpeedPreference> effective_preferences() const;
    void validate() const;
};

struct UserState {
    GroundPosition position;
    double speed_mps = 0.0;
    double direction_rad = 0.0;
    double target_speed_mps = 0.0;
    double target_direction_rad = 0.0;
    double turn_rate_rad_s = 0.0;
    double time_to_direction_change_s = 0.0;
};

/// Users placed area-uniformly on the disc of the given radius. Static mode
/// starts everyone at speed 0; otherwise speeds come from the preference
/// distribution. Throws std::invalid_argument for count < 1.
std::vector<UserState> init_users(int count, double cell_radius_m, const MobilityConfig& config,
                                  std::mt19937_64& rng);

/// One mobility step. Static mode is the identity. The smooth-random mode
/// bounds speed changes by accel_max, drifts the heading toward an
/// exponentially re-drawn target, and reflects by pi radians at the cell
/// edge. The result never leaves the disc.
UserState step_user(const UserState& user, double dt_s, double cell_radius_m,
                    const MobilityConfig& config, std::mt19937_64& rng);

} // namespace ntnho
