#include "ntnho/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ntnho {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void write_file(const std::string& content, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("output: cannot open '" + path + "' for writing");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("output: write to '" + path + "' failed");
    }
}

} // namespace

std::string results_csv(std::span<const MetricsRecord> records) {
    std::ostringstream out;
    out << "mechanism,offset,ttt_ms,mobility,seed_group,hos,pp_hos,rlfs\n";
    for (const MetricsRecord& r : records) {
        out << r.mechanism << "," << fmt(r.offset) << "," << fmt(r.ttt_ms) << ","
            << (r.mobile ? "mobile" : "static") << "," << r.seed << "," << r.handovers << ","
            << r.pingpong_handovers << "," << r.rlfs << "\n";
    }
    return out.str();
}

void write_results_csv(std::span<const MetricsRecord> records, const std::string& path) {
    write_file(results_csv(records), path);
}

std::string events_csv(std::span<const TraceEvent> events) {
    std::ostringstream out;
    out << "time_s,drop,ue,event,from,to,pingpong\n";
    for (const TraceEvent& e : events) {
        out << fmt(e.t_s) << "," << e.drop << "," << e.ue << ","
            << (e.kind == EventKind::handover ? "handover" : "rlf") << "," << e.from << ","
            << e.to << "," << (e.pingpong ? 1 : 0) << "\n";
    }
    return out.str();
}

void write_events_csv(std::span<const TraceEvent> events, const std::string& path) {
    write_file(events_csv(events), path);
}

std::vector<PathlossPoint> pathloss_trace(const SimConfig& scenario, int samples) {
    if (samples < 2) {
        throw std::invalid_argument("pathloss trace: need at least 2 samples");
    }
    const GroundPosition center{0.0, 0.0};
    // Widest ground offset seen during a pass: trailing satellite spacing
    // plus the cell radius.
    const double max_ground =
        scenario.constellation.spacing_m *
            static_cast<double>(scenario.constellation.num_satellites - 1) +
        scenario.cell_radius_m;
    std::vector<PathlossPoint> points;
    points.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double ground =
            max_ground * static_cast<double>(i) / static_cast<double>(samples - 1);
        const SatelliteState sat{ground, scenario.constellation.altitude_m,
                                 scenario.constellation.speed_mps};
        const LinkGeometry geo = link_geometry(center, sat);
        const double pl =
            total_path_loss_db(geo.slant_m, geo.elevation_deg, 0.0, 0.0, scenario.channel);
        points.push_back(PathlossPoint{ground, geo.elevation_deg, pl});
    }
    return points;
}

std::string pathloss_csv(std::span<const PathlossPoint> points) {
    std::ostringstream out;
    out << "ground_distance_m,elevation_deg,pl_total_db\n";
    for (const PathlossPoint& p : points) {
        out << fmt(p.ground_distance_m) << "," << fmt(p.elevation_deg) << ","
            << fmt(p.pl_total_db) << "\n";
    }
    return out.str();
}

void write_pathloss_csv(std::span<const PathlossPoint> points, const std::string& path) {
    write_file(pathloss_csv(points), path);
}

} // namespace ntnho
