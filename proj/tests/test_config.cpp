#include <doctest.h>

#include <string>
#include <vector>

#include "ntnho/config.hpp"
#include "ntnho/report.hpp"

using namespace ntnho;

TEST_CASE("default preset carries the published parameter set") {
    const CampaignSpec spec = default_paper_spec();
    const SimConfig& sc = spec.scenario;
    CHECK(sc.constellation.altitude_m == 600'000.0);
    CHECK(sc.constellation.speed_mps == 7'560.0);
    CHECK(sc.constellation.num_satellites == 3);
    CHECK(sc.constellation.spacing_m == 50'000.0);
    CHECK(sc.cell_radius_m == 25'000.0); // 50 km diameter
    CHECK(sc.channel.carrier_ghz == 2.0);
    CHECK(sc.channel.eirp_density_dbw_mhz == 34.0);
    CHECK(sc.channel.p_fluc_db == 11.0);
    CHECK(sc.channel.noise_dbm == -121.4);
    CHECK(sc.channel.prb_bandwidth_mhz == 0.18);
    CHECK(sc.channel.shadow_fading == ShadowFadingMode::per_drop);
    CHECK(sc.rlf.q_in_db == -6.0);
    CHECK(sc.rlf.q_out_db == -8.0);
    CHECK(sc.rlf.t310_ms == 500.0);
    CHECK(sc.pingpong_window_s == 5.0);
    CHECK(sc.mobility.v_max_mps == 10.0);
    CHECK(sc.step_ms == 10.0);
    CHECK(sc.users_per_drop == 1963);
    CHECK(sc.drops == 4);
    CHECK(!sc.rss_filter_k.has_value());

    CHECK(spec.sweep.ttt_ms == std::vector<double>{20, 40, 60, 80, 100});
    CHECK(spec.sweep.hys_plus_off_db == std::vector<double>{1, 2, 3, 4});
    CHECK(spec.sweep.d_off_km == std::vector<double>{1, 1.5, 2, 2.5, 3, 3.5, 4, 4.5, 5});
    CHECK(spec.sweep.alpha_off_deg == std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    CHECK(spec.sweep.t_off_s ==
          std::vector<double>{6.4, 6.45, 6.5, 6.55, 6.6, 6.65, 6.7, 6.75, 6.8});
}

TEST_CASE("config text: overrides, comments and sections") {
    const std::string text = R"(
# desk-scale run
[scenario]
step_ms = 20
shadow_fading = per_step
rss_filter_k = 12

[sweep]
mechanisms = measurement
mobility = static
ttt_ms = 20,40

[seeds]
base_seed = 9
users = 100
drops = 2

[output]
results = out.csv
)";
    const CampaignSpec spec = parse_config_text(text);
    CHECK(spec.scenario.step_ms == 20.0);
    CHECK(spec.scenario.channel.shadow_fading == ShadowFadingMode::per_step);
    CHECK(spec.scenario.rss_filter_k == 12.0);
    CHECK(spec.scenario.base_seed == 9);
    CHECK(spec.scenario.users_per_drop == 100);
    CHECK(spec.sweep.mechanisms == std::vector<std::string>{"measurement"});
    CHECK(spec.sweep.ttt_ms == std::vector<double>{20, 40});
    CHECK(spec.output.results == "out.csv");
}

TEST_CASE("config errors name the offending key") {
    CHECK_THROWS_WITH_AS(parse_config_text("[scenario]\naltitud_m = 1\n"),
                         doctest::Contains("altitud_m"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("[sweep]\nttt = 20\n"), doctest::Contains("ttt"),
                         ConfigError);
    CHECK_THROWS_AS(parse_config_text("[nope]\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[scenario]\nstep_ms\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("step_ms = 10\n"), ConfigError); // outside any section
    CHECK_THROWS_AS(parse_config_file("/nonexistent/path.conf"), ConfigError);
}

TEST_CASE("config range checks") {
    // q_in must exceed q_out.
    CHECK_THROWS_AS(parse_config_text("[scenario]\nq_in_db = -9\nq_out_db = -8\n"), ConfigError);
    // TTT values must be multiples of the step.
    CHECK_THROWS_AS(parse_config_text("[scenario]\nstep_ms = 10\n[sweep]\nttt_ms = 25\n"),
                    ConfigError);
    // A 20 ms step accepts the 20 ms TTT (and the rest of the default grid).
    CHECK_NOTHROW(parse_config_text("[scenario]\nstep_ms = 20\n"));
    CHECK_THROWS_AS(parse_config_text("[sweep]\nd_off_km = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[sweep]\nmechanisms = sideways\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[scenario]\ncarrier_ghz = 7\n"), ConfigError);
}

TEST_CASE("canonical form round-trips") {
    CampaignSpec spec = default_paper_spec();
    spec.scenario.base_seed = 77;
    spec.scenario.channel_seed = 12345;
    spec.scenario.rss_filter_k = 12.0;
    spec.scenario.channel.shadow_fading = ShadowFadingMode::per_step;
    spec.sweep.mechanisms = {"timer", "distance"};
    spec.sweep.t_off_s = {6.45, 6.6};
    spec.output.events = "events.csv";

    const std::string canon = canonical_form(spec);
    const CampaignSpec reparsed = parse_config_text(canon);
    CHECK(canonical_form(reparsed) == canon);
    CHECK(reparsed.scenario.channel_seed == spec.scenario.channel_seed);
    CHECK(reparsed.sweep.t_off_s == spec.sweep.t_off_s);
}

TEST_CASE("campaign expansion: grid sizes and table ordering") {
    CampaignSpec spec = default_paper_spec();
    const auto grid = expand_campaign(spec);
    // 5x4x2 measurement + (9 + 10 + 9) x 2 for the alternatives.
    CHECK(grid.size() == 40 + 18 + 20 + 18);

    // Mechanism blocks in table order; offsets ascend; static precedes mobile.
    CHECK(mechanism_name(grid[0].mechanism) == "measurement");
    CHECK(grid[0].mobility.mode == MobilityMode::static_users);
    CHECK(grid[1].mobility.mode == MobilityMode::smooth_random);
    CHECK(mechanism_name(grid[40].mechanism) == "distance");
    CHECK(display_offset(grid[40].mechanism) == doctest::Approx(1.0));
    CHECK(mechanism_name(grid[40 + 18].mechanism) == "elevation");
    CHECK(mechanism_name(grid[40 + 18 + 20].mechanism) == "timer");

    // Measurement block: offset outer, TTT inner, both ascending.
    CHECK(display_offset(grid[0].mechanism) == doctest::Approx(1.0));
    CHECK(mechanism_ttt_ms(grid[0].mechanism) == 20.0);
    CHECK(mechanism_ttt_ms(grid[2].mechanism) == 40.0);
    CHECK(display_offset(grid[10].mechanism) == doctest::Approx(2.0));

    spec.sweep.mechanisms = {"distance"};
    spec.sweep.mobility = {MobilityMode::static_users};
    CHECK(expand_campaign(spec).size() == 9);

    spec.sweep.mechanisms = {"timer"};
    const auto timer_grid = expand_campaign(spec);
    CHECK(timer_grid.size() == 9);
    CHECK(display_offset(timer_grid.front().mechanism) == doctest::Approx(6.4));
    CHECK(display_offset(timer_grid.back().mechanism) == doctest::Approx(6.8));
}

TEST_CASE("results csv: header, formatting and empty input") {
    MetricsRecord r;
    r.mechanism = "distance";
    r.offset = 1.5;
    r.ttt_ms = 0.0;
    r.mobile = false;
    r.seed = 3;
    r.handovers = 661;
    const std::string csv = results_csv(std::vector<MetricsRecord>{r});
    CHECK(csv == "mechanism,offset,ttt_ms,mobility,seed_group,hos,pp_hos,rlfs\n"
                 "distance,1.5,0,static,3,661,0,0\n");

    CHECK(results_csv(std::vector<MetricsRecord>{}) ==
          "mechanism,offset,ttt_ms,mobility,seed_group,hos,pp_hos,rlfs\n");
}

TEST_CASE("pathloss trace: endpoints, monotonicity and sample count") {
    const SimConfig scenario;
    const auto points = pathloss_trace(scenario, 251);
    REQUIRE(points.size() == 251);
    CHECK(points.front().ground_distance_m == 0.0);
    CHECK(points.front().elevation_deg == doctest::Approx(90.0));
    CHECK(points.front().pl_total_db == doctest::Approx(162.2963).epsilon(1e-4));
    CHECK(points.back().ground_distance_m == doctest::Approx(125'000.0));
    for (std::size_t i = 1; i < points.size(); ++i) {
        CHECK(points[i].pl_total_db >= points[i - 1].pl_total_db - 1e-9);
    }
}
