#include "ntnho/link_monitor.hpp"

#include <stdexcept>

namespace ntnho {

void RlfMonitor::validate() const {
    if (q_in_db <= q_out_db) {
        throw std::invalid_argument("rlf: q_in_db must exceed q_out_db");
    }
    if (t310_ms <= 0.0) {
        throw std::invalid_argument("rlf: t310_ms must be positive");
    }
}

bool update_rlf(RlfMonitor& monitor, double sinr_db, double dt_ms) {
    if (monitor.phase == RlfMonitor::Phase::in_sync) {
        if (sinr_db < monitor.q_out_db) {
            monitor.phase = RlfMonitor::Phase::out_of_sync;
            monitor.t310_elapsed_ms = dt_ms;
        }
    } else if (sinr_db > monitor.q_in_db) {
        monitor.phase = RlfMonitor::Phase::in_sync;
        monitor.t310_elapsed_ms = 0.0;
    } else {
        monitor.t310_elapsed_ms += dt_ms;
    }
    if (monitor.phase == RlfMonitor::Phase::out_of_sync &&
        monitor.t310_elapsed_ms >= monitor.t310_ms - 1e-6) {
        monitor.phase = RlfMonitor::Phase::in_sync;
        monitor.t310_elapsed_ms = 0.0;
        return true;
    }
    return false;
}

bool record_handover(PingPongTracker& tracker, int from, int to, double t_s) {
    const bool pingpong = tracker.previous_serving && *tracker.previous_serving == to &&
                          t_s - tracker.last_ho_time_s <= tracker.window_s;
    tracker.previous_serving = from;
    tracker.last_ho_time_s = t_s;
    return pingpong;
}

MetricsRecord aggregate(std::span<const MetricsRecord> records) {
    MetricsRecord total;
    if (!records.empty()) {
        total = records.front();
        total.handovers = 0;
        total.pingpong_handovers = 0;
        total.rlfs = 0;
    }
    for (const MetricsRecord& r : records) {
        total.handovers += r.handovers;
        total.pingpong_handovers += r.pingpong_handovers;
        total.rlfs += r.rlfs;
    }
    return total;
}

} // namespace ntnho
