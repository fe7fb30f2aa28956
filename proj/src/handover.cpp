#include "ntnho/handover.hpp"

#include <cmath>
#include <stdexcept>

namespace ntnho {

namespace {

// Guards fixed-point accumulation of step times against sub-ulp shortfalls
// (650 * 10 ms must count as 6.5 s).
constexpr double kTimeSlackMs = 1e-6;

bool is_positive_multiple(double value_ms, double step_ms) {
    if (value_ms <= 0.0) {
        return false;
    }
    const double ratio = value_ms / step_ms;
    return std::abs(ratio - std::round(ratio)) < 1e-9;
}

} // namespace

std::string mechanism_name(const HoMechanism& mechanism) {
    struct Visitor {
        std::string operator()(const MeasurementTrigger&) const { return "measurement"; }
        std::string operator()(const DistanceTrigger&) const { return "distance"; }
        std::string operator()(const ElevationTrigger&) const { return "elevation"; }
        std::string operator()(const TimerTrigger&) const { return "timer"; }
    };
    return std::visit(Visitor{}, mechanism);
}

double display_offset(const HoMechanism& mechanism) {
    struct Visitor {
        double operator()(const MeasurementTrigger& m) const { return m.hys_plus_off_db; }
        double operator()(const DistanceTrigger& d) const { return d.d_off_m / 1000.0; }
        double operator()(const ElevationTrigger& e) const { return e.alpha_off_deg; }
        double operator()(const TimerTrigger& t) const { return t.t_off_s; }
    };
    return std::visit(Visitor{}, mechanism);
}

double mechanism_ttt_ms(const HoMechanism& mechanism) {
    if (const auto* m = std::get_if<MeasurementTrigger>(&mechanism)) {
        return m->ttt_ms;
    }
    return 0.0;
}

void validate_mechanism(const HoMechanism& mechanism, double step_ms) {
    if (const auto* m = std::get_if<MeasurementTrigger>(&mechanism)) {
        if (m->hys_plus_off_db < 0.0) {
            throw std::invalid_argument("measurement: hys_plus_off_db must be >= 0");
        }
        if (!is_positive_multiple(m->ttt_ms, step_ms)) {
            throw std::invalid_argument(
                "measurement: ttt_ms must be a positive multiple of step_ms");
        }
    } else if (const auto* d = std::get_if<DistanceTrigger>(&mechanism)) {
        if (d->d_off_m < 0.0) {
            throw std::invalid_argument("distance: d_off_m must be >= 0");
        }
    } else if (const auto* e = std::get_if<ElevationTrigger>(&mechanism)) {
        if (e->alpha_off_deg < 0.0) {
            throw std::invalid_argument("elevation: alpha_off_deg must be >= 0");
        }
    } else if (const auto* t = std::get_if<TimerTrigger>(&mechanism)) {
        if (t->t_off_s <= 0.0) {
            throw std::invalid_argument("timer: t_off_s must be positive");
        }
    }
}

void AssociationState::reset_triggers() {
    for (double& t : ttt_elapsed_ms) {
        t = 0.0;
    }
    timer_elapsed_ms = 0.0;
    timer_armed = false;
}

namespace {

int argmax_rss(std::span<const LinkSample> samples) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(samples.size()); ++i) {
        if (samples[static_cast<std::size_t>(i)].rss_dbm >
            samples[static_cast<std::size_t>(best)].rss_dbm) {
            best = i;
        }
    }
    return best;
}

int argmin_distance(std::span<const LinkSample> samples) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(samples.size()); ++i) {
        if (samples[static_cast<std::size_t>(i)].distance_m <
            samples[static_cast<std::size_t>(best)].distance_m) {
            best = i;
        }
    }
    return best;
}

int argmax_elevation(std::span<const LinkSample> samples) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(samples.size()); ++i) {
        if (samples[static_cast<std::size_t>(i)].elevation_deg >
            samples[static_cast<std::size_t>(best)].elevation_deg) {
            best = i;
        }
    }
    return best;
}

} // namespace

int initial_association(const HoMechanism& mechanism, std::span<const LinkSample> samples) {
    if (samples.empty()) {
        throw std::invalid_argument("initial_association: no link samples");
    }
    struct Visitor {
        std::span<const LinkSample> samples;
        int operator()(const MeasurementTrigger&) const { return argmax_rss(samples); }
        int operator()(const DistanceTrigger&) const { return argmin_distance(samples); }
        int operator()(const ElevationTrigger&) const { return argmax_elevation(samples); }
        int operator()(const TimerTrigger&) const { return argmin_distance(samples); }
    };
    return std::visit(Visitor{samples}, mechanism);
}

std::optional<int> evaluate_measurement(AssociationState& state,
                                        std::span<const LinkSample> samples,
                                        double hys_plus_off_db, double ttt_ms, double dt_ms) {
    const int n = static_cast<int>(samples.size());
    const double serving_rss = samples[static_cast<std::size_t>(state.serving)].rss_dbm;
    std::optional<int> target;
    for (int i = 0; i < n; ++i) {
        if (i == state.serving) {
            continue;
        }
        double& elapsed = state.ttt_elapsed_ms[static_cast<std::size_t>(i)];
        if (samples[static_cast<std::size_t>(i)].rss_dbm > serving_rss + hys_plus_off_db) {
            elapsed += dt_ms;
            if (elapsed >= ttt_ms - kTimeSlackMs) {
                if (!target || samples[static_cast<std::size_t>(i)].rss_dbm >
                                   samples[static_cast<std::size_t>(*target)].rss_dbm) {
                    target = i;
                }
            }
        } else {
            elapsed = 0.0;
        }
    }
    return target;
}

std::optional<int> evaluate_distance(const AssociationState& state,
                                     std::span<const LinkSample> samples, double d_off_m) {
    const double serving_d = samples[static_cast<std::size_t>(state.serving)].distance_m;
    std::optional<int> target;
    for (int i = 0; i < static_cast<int>(samples.size()); ++i) {
        if (i == state.serving) {
            continue;
        }
        const double d = samples[static_cast<std::size_t>(i)].distance_m;
        if (d < serving_d - d_off_m &&
            (!target || d < samples[static_cast<std::size_t>(*target)].distance_m)) {
            target = i;
        }
    }
    return target;
}

std::optional<int> evaluate_elevation(const AssociationState& state,
                                      std::span<const LinkSample> samples, double alpha_off_deg) {
    const double serving_a = samples[static_cast<std::size_t>(state.serving)].elevation_deg;
    std::optional<int> target;
    for (int i = 0; i < static_cast<int>(samples.size()); ++i) {
        if (i == state.serving) {
            continue;
        }
        const double a = samples[static_cast<std::size_t>(i)].elevation_deg;
        if (a > serving_a + alpha_off_deg &&
            (!target || a > samples[static_cast<std::size_t>(*target)].elevation_deg)) {
            target = i;
        }
    }
    return target;
}

std::optional<int> evaluate_timer(AssociationState& state, std::span<const LinkSample> samples,
                                  double t_off_s, double dt_ms) {
    if (!state.timer_armed) {
        return evaluate_distance(state, samples, 0.0);
    }
    state.timer_elapsed_ms += dt_ms;
    if (state.timer_elapsed_ms < t_off_s * 1000.0 - kTimeSlackMs) {
        return std::nullopt;
    }
    const int next = state.serving + 1;
    if (next >= static_cast<int>(samples.size())) {
        return std::nullopt; // pass ending, nothing left to hand over to
    }
    return next;
}

std::optional<int> evaluate_trigger(AssociationState& state, const HoMechanism& mechanism,
                                    std::span<const LinkSample> samples, double dt_ms) {
    struct Visitor {
        AssociationState& state;
        std::span<const LinkSample> samples;
        double dt_ms;
        std::optional<int> operator()(const MeasurementTrigger& m) const {
            return evaluate_measurement(state, samples, m.hys_plus_off_db, m.ttt_ms, dt_ms);
        }
        std::optional<int> operator()(const DistanceTrigger& d) const {
            return evaluate_distance(state, samples, d.d_off_m);
        }
        std::optional<int> operator()(const ElevationTrigger& e) const {
            return evaluate_elevation(state, samples, e.alpha_off_deg);
        }
        std::optional<int> operator()(const TimerTrigger& t) const {
            return evaluate_timer(state, samples, t.t_off_s, dt_ms);
        }
    };
    return std::visit(Visitor{state, samples, dt_ms}, mechanism);
}

void apply_handover(AssociationState& state, const HoMechanism& mechanism, int target) {
    state.serving = target;
    for (double& t : state.ttt_elapsed_ms) {
        t = 0.0;
    }
    state.timer_elapsed_ms = 0.0;
    state.timer_armed = std::holds_alternative<TimerTrigger>(mechanism);
}

} // namespace ntnho
