#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ntnho/channel.hpp"

namespace ntnho {

/// A3-style trigger: candidate RSS must beat serving RSS by the combined
/// hysteresis/offset margin for the whole time-to-trigger window.
struct MeasurementTrigger {
    double hys_plus_off_db = 3.0;
    double ttt_ms = 40.0;
};

/// Trigger on d_target < d_serving - d_off (slant distances).
struct DistanceTrigger {
    double d_off_m = 0.0;
};

/// Trigger on alpha_target > alpha_serving + alpha_off.
struct ElevationTrigger {
    double alpha_off_deg = 0.0;
};

/// Nearest-satellite rule until the first handover, then a fixed-period
/// timer advancing through the pass order.
struct TimerTrigger {
    double t_off_s = 6.61;
};

using HoMechanism =
    std::variant<MeasurementTrigger, DistanceTrigger, ElevationTrigger, TimerTrigger>;

std::string mechanism_name(const HoMechanism& mechanism);

/// Offset in the units the result tables use: dB, km, degrees or seconds.
double display_offset(const HoMechanism& mechanism);

/// TTT for measurement triggers, 0 for everything else.
double mechanism_ttt_ms(const HoMechanism& mechanism);

/// Throws std::invalid_argument on negative offsets or a TTT that is not a
/// positive multiple of the simulation step.
void validate_mechanism(const HoMechanism& mechanism, double step_ms);

/// Per-UE trigger bookkeeping.
struct AssociationState {
    int serving = 0;
    std::vector<double> ttt_elapsed_ms; // one entry per satellite
    double timer_elapsed_ms = 0.0;
    bool timer_armed = false; // set after the first handover in timer mode

    explicit AssociationState(int num_satellites = 0, int serving_index = 0)
        : serving(serving_index), ttt_elapsed_ms(static_cast<std::size_t>(num_satellites), 0.0) {}

    /// Clears TTT accumulation and disarms the timer (used after an RLF).
    void reset_triggers();
};

/// Serving satellite at t = 0: strongest RSS for measurement, nearest for
/// distance and timer, highest elevation for elevation. Ties break to the
/// lowest index. Throws std::invalid_argument on an empty sample list.
int initial_association(const HoMechanism& mechanism, std::span<const LinkSample> samples);

/// A3 evaluation for one step: accumulates or resets the per-candidate TTT
/// clocks and returns the target index once one of them expires.
std::optional<int> evaluate_measurement(AssociationState& state,
                                        std::span<const LinkSample> samples,
                                        double hys_plus_off_db, double ttt_ms, double dt_ms);

std::optional<int> evaluate_distance(const AssociationState& state,
                                     std::span<const LinkSample> samples, double d_off_m);

std::optional<int> evaluate_elevation(const AssociationState& state,
                                      std::span<const LinkSample> samples, double alpha_off_deg);

/// Distance rule with zero offset before the first handover; afterwards the
/// armed timer hands over to the next satellite in pass order every t_off.
std::optional<int> evaluate_timer(AssociationState& state, std::span<const LinkSample> samples,
                                  double t_off_s, double dt_ms);

/// Dispatch to the mechanism's evaluator.
std::optional<int> evaluate_trigger(AssociationState& state, const HoMechanism& mechanism,
                                    std::span<const LinkSample> samples, double dt_ms);

/// Switches serving, clears all TTT clocks and (re)arms the timer when the
/// mechanism is timer-based.
void apply_handover(AssociationState& state, const HoMechanism& mechanism, int target);

} // namespace ntnho
