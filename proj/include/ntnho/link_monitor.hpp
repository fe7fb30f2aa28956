#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>

namespace ntnho {

/// Q_in / Q_out / T310 radio-link-failure detector for one UE.
struct RlfMonitor {
    enum class Phase { in_sync, out_of_sync };

    Phase phase = Phase::in_sync;
    double t310_elapsed_ms = 0.0;
    double q_in_db = -6.0;
    double q_out_db = -8.0;
    double t310_ms = 500.0;

    void validate() const;
};

/// Advances the monitor by one step. Crossing below Q_out starts the T310
/// clock (that step's dt already counts toward it); crossing above Q_in
/// aborts it; SINR inside [q_out, q_in] leaves the phase untouched. Returns
/// true when T310 expires, after resetting the monitor to in_sync.
bool update_rlf(RlfMonitor& monitor, double sinr_db, double dt_ms);

/// Remembers the last handover so a quick return to the previous serving
/// satellite can be flagged.
struct PingPongTracker {
    double last_ho_time_s = -std::numeric_limits<double>::infinity();
    std::optional<int> previous_serving;
    double window_s = 5.0;
};

/// Registers a handover from -> to at time t and reports whether it is a
/// ping-pong (a return to the previous serving satellite within the window).
bool record_handover(PingPongTracker& tracker, int from, int to, double t_s);

/// One cell of the result tables: accumulated counts plus the
/// configuration they belong to.
struct MetricsRecord {
    std::string mechanism;
    double offset = 0.0; // display units: dB, km, deg or s
    double ttt_ms = 0.0; // 0 for non-measurement mechanisms
    bool mobile = false;
    std::uint64_t seed = 0;
    long long handovers = 0;
    long long pingpong_handovers = 0;
    long long rlfs = 0;
};

/// Sums counts across per-UE / per-drop records; the configuration echo is
/// taken from the first record. An empty span yields an all-zero record.
MetricsRecord aggregate(std::span<const MetricsRecord> records);

} // namespace ntnho
