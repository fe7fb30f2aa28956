#pragma once

#include <span>
#include <string>
#include <vector>

#include "ntnho/engine.hpp"

namespace ntnho {

/// Result-table CSV, one row per configuration. Byte-stable for identical
/// inputs.
std::string results_csv(std::span<const MetricsRecord> records);
void write_results_csv(std::span<const MetricsRecord> records, const std::string& path);

/// Per-event trace CSV (time, drop, ue, event, from, to, pingpong flag).
std::string events_csv(std::span<const TraceEvent> events);
void write_events_csv(std::span<const TraceEvent> events, const std::string& path);

/// Deterministic path loss along a pass over a UE at the cell center with
/// shadow fading disabled; one row per sampled ground distance.
struct PathlossPoint {
    double ground_distance_m = 0.0;
    double elevation_deg = 0.0;
    double pl_total_db = 0.0;
};
std::vector<PathlossPoint> pathloss_trace(const SimConfig& scenario, int samples);
std::string pathloss_csv(std::span<const PathlossPoint> points);
void write_pathloss_csv(std::span<const PathlossPoint> points, const std::string& path);

} // namespace ntnho
