#include "ntnho/mobility.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ntnho {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_two_pi(double angle) {
    angle = std::fmod(angle, kTwoPi);
    return angle < 0.0 ? angle + kTwoPi : angle;
}

// Signed shortest rotation from -> to, in (-pi, pi].
double wrap_pi(double diff) {
    diff = std::fmod(diff + std::numbers::pi, kTwoPi);
    if (diff < 0.0) {
        diff += kTwoPi;
    }
    return diff - std::numbers::pi;
}

double draw_speed(const std::vector<SpeedPreference>& prefs, double v_max,
                  std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double u = uni(rng);
    double acc = 0.0;
    for (const SpeedPreference& p : prefs) {
        acc += p.probability;
        if (u < acc) {
            return p.speed_mps;
        }
    }
    return uni(rng) * v_max;
}

void clamp_to_disc(GroundPosition& p, double radius) {
    const double r2 = p.x_m * p.x_m + p.y_m * p.y_m;
    if (r2 <= radius * radius) {
        return;
    }
    const double scale = radius / std::sqrt(r2);
    p.x_m *= scale;
    p.y_m *= scale;
    // Rounding in the scale can leave the point a few ulps outside; walk it
    // in until the containment invariant holds exactly.
    while (p.x_m * p.x_m + p.y_m * p.y_m > radius * radius) {
        p.x_m = std::nextafter(p.x_m, 0.0);
        p.y_m = std::nextafter(p.y_m, 0.0);
    }
}

} // namespace

std::vector<SpeedPreference> MobilityConfig::effective_preferences() const {
    if (!preferred_speeds.empty()) {
        return preferred_speeds;
    }
    return {{0.0, 0.2}, {v_max_mps, 0.2}};
}

void MobilityConfig::validate() const {
    if (v_max_mps <= 0.0) {
        throw std::invalid_argument("mobility: v_max_mps must be positive");
    }
    if (accel_max_mps2 <= 0.0) {
        throw std::invalid_argument("mobility: accel_max_mps2 must be positive");
    }
    if (mean_direction_hold_s <= 0.0 || direction_drift_s <= 0.0) {
        throw std::invalid_argument("mobility: direction timing parameters must be positive");
    }
    double total = 0.0;
    for (const SpeedPreference& p : effective_preferences()) {
        if (p.probability < 0.0 || p.speed_mps < 0.0 || p.speed_mps > v_max_mps) {
            throw std::invalid_argument("mobility: preferred speed outside [0, v_max]");
        }
        total += p.probability;
    }
    if (total > 1.0 + 1e-12) {
        throw std::invalid_argument("mobility: preferred-speed probabilities exceed 1");
    }
}

std::vector<UserState> init_users(int count, double cell_radius_m, const MobilityConfig& config,
                                  std::mt19937_64& rng) {
    if (count < 1) {
        throw std::invalid_argument("init_users: count must be >= 1");
    }
    if (cell_radius_m <= 0.0) {
        throw std::invalid_argument("init_users: cell_radius_m must be positive");
    }
    config.validate();

    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::exponential_distribution<double> hold(1.0 / config.mean_direction_hold_s);
    const auto prefs = config.effective_preferences();

    std::vector<UserState> users;
    users.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        UserState u;
        const double r = cell_radius_m * std::sqrt(uni(rng));
        const double phi = uni(rng) * kTwoPi;
        u.position = {r * std::cos(phi), r * std::sin(phi)};
        clamp_to_disc(u.position, cell_radius_m);
        u.direction_rad = uni(rng) * kTwoPi;
        u.target_direction_rad = u.direction_rad;
        if (config.mode == MobilityMode::smooth_random) {
            u.speed_mps = draw_speed(prefs, config.v_max_mps, rng);
            u.target_speed_mps = draw_speed(prefs, config.v_max_mps, rng);
            u.time_to_direction_change_s = hold(rng);
        }
        users.push_back(u);
    }
    return users;
}

UserState step_user(const UserState& user, double dt_s, double cell_radius_m,
                    const MobilityConfig& config, std::mt19937_64& rng) {
    if (dt_s <= 0.0) {
        throw std::invalid_argument("step_user: dt must be positive");
    }
    if (config.mode == MobilityMode::static_users) {
        return user;
    }

    UserState next = user;
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    // Speed approaches its target no faster than accel_max allows; a fresh
    // target is drawn once the current one is reached.
    const double dv = config.accel_max_mps2 * dt_s;
    if (std::abs(next.target_speed_mps - next.speed_mps) <= dv) {
        next.speed_mps = next.target_speed_mps;
        next.target_speed_mps = draw_speed(config.effective_preferences(), config.v_max_mps, rng);
    } else {
        next.speed_mps += next.target_speed_mps > next.speed_mps ? dv : -dv;
    }

    next.time_to_direction_change_s -= dt_s;
    if (next.time_to_direction_change_s <= 0.0) {
        next.target_direction_rad = uni(rng) * kTwoPi;
        std::exponential_distribution<double> hold(1.0 / config.mean_direction_hold_s);
        next.time_to_direction_change_s = hold(rng);
        next.turn_rate_rad_s =
            wrap_pi(next.target_direction_rad - next.direction_rad) / config.direction_drift_s;
    }
    const double remaining = wrap_pi(next.target_direction_rad - next.direction_rad);
    const double turn = next.turn_rate_rad_s * dt_s;
    if (std::abs(turn) >= std::abs(remaining)) {
        next.direction_rad = next.target_direction_rad;
    } else {
        next.direction_rad = wrap_two_pi(next.direction_rad + turn);
    }

    GroundPosition tentative{next.position.x_m + next.speed_mps * dt_s * std::cos(next.direction_rad),
                             next.position.y_m + next.speed_mps * dt_s * std::sin(next.direction_rad)};
    const double r2 = tentative.x_m * tentative.x_m + tentative.y_m * tentative.y_m;
    if (r2 > cell_radius_m * cell_radius_m) {
        // Cell-edge rule: heading flips by pi and the update is redone from
        // the boundary-clamped point.
        next.direction_rad = wrap_two_pi(next.direction_rad + std::numbers::pi);
        next.target_direction_rad = wrap_two_pi(next.target_direction_rad + std::numbers::pi);
        clamp_to_disc(tentative, cell_radius_m);
        tentative.x_m += next.speed_mps * dt_s * std::cos(next.direction_rad);
        tentative.y_m += next.speed_mps * dt_s * std::sin(next.direction_rad);
        clamp_to_disc(tentative, cell_radius_m);
    }
    next.position = tentative;
    return next;
}

} // namespace ntnho
