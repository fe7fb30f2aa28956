#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "ntnho/geometry.hpp"

using namespace ntnho;

TEST_CASE("propagate: initial positions and pass timing") {
    ConstellationConfig cfg;

    auto sats = propagate(cfg, 0.0);
    REQUIRE(sats.size() == 3);
    CHECK(sats[0].along_track_m == doctest::Approx(0.0));
    CHECK(sats[1].along_track_m == doctest::Approx(-50'000.0));
    CHECK(sats[2].along_track_m == doctest::Approx(-100'000.0));
    CHECK(sats[0].altitude_m == 600'000.0);
    CHECK(sats[0].speed_mps == 7'560.0);

    // S2 over the cell center at 50 km / 7.56 km/s.
    sats = propagate(cfg, 50'000.0 / 7'560.0);
    CHECK(sats[1].along_track_m == doctest::Approx(0.0).epsilon(1e-9));

    const double duration = cfg.sim_duration_s();
    CHECK(duration == doctest::Approx(100'000.0 / 7'560.0));
    sats = propagate(cfg, duration);
    CHECK(sats[2].along_track_m == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("propagate: rejects times outside the pass") {
    ConstellationConfig cfg;
    CHECK_THROWS_AS(propagate(cfg, -0.1), std::out_of_range);
    CHECK_THROWS_AS(propagate(cfg, cfg.sim_duration_s() + 0.1), std::out_of_range);
}

TEST_CASE("slant distance: spherical-Earth relation") {
    // Directly under the satellite the relation collapses to the altitude.
    CHECK(slant_distance_m(90.0, 600'000.0) ==
          doctest::Approx(600'000.0).epsilon(1e-6));
    CHECK(slant_distance_m(10.0, 600'000.0) ==
          doctest::Approx(1'931'635.358909).epsilon(1e-9));
    CHECK(slant_distance_m(30.0, 600'000.0) ==
          doctest::Approx(1'075'088.016929).epsilon(1e-9));
}

TEST_CASE("slant distance: matches the independently computed table") {
    // Frozen from a standalone script evaluating the same relation.
    const struct {
        double alpha_deg;
        double d_m;
    } table[] = {
        {10, 1931635.358909}, {20, 1392163.987999}, {30, 1075088.016929},
        {40, 882335.864736},  {50, 760823.177871},  {60, 683151.377564},
        {70, 634906.539409},  {80, 608442.896049},  {90, 600000.000000},
    };
    for (const auto& row : table) {
        CHECK(slant_distance_m(row.alpha_deg, 600'000.0) ==
              doctest::Approx(row.d_m).epsilon(1e-9));
    }
}

TEST_CASE("elevation angle: local-frame geometry") {
    const SatelliteState overhead{0.0, 600'000.0, 7'560.0};
    CHECK(elevation_angle_deg({0.0, 0.0}, overhead) == doctest::Approx(90.0));

    const SatelliteState behind{-50'000.0, 600'000.0, 7'560.0};
    CHECK(elevation_angle_deg({0.0, 0.0}, behind) ==
          doctest::Approx(85.236358).epsilon(1e-6));

    const SatelliteState far_behind{-100'000.0, 600'000.0, 7'560.0};
    CHECK(elevation_angle_deg({25'000.0, 0.0}, far_behind) ==
          doctest::Approx(78.231711).epsilon(1e-6));
}

TEST_CASE("geometry: monotone in approach, symmetric in direction") {
    const GroundPosition ue{10'000.0, -4'000.0};
    double prev_alpha = 0.0;
    double prev_d = 1e12;
    // Satellite sweeping in from 120 km out to overhead.
    for (double x = -120'000.0; x <= 10'000.0 + 1e-9; x += 10'000.0) {
        const SatelliteState sat{x, 600'000.0, 7'560.0};
        const double alpha = elevation_angle_deg(ue, sat);
        const double d = slant_distance_m(ue, sat);
        CHECK(alpha > prev_alpha);
        CHECK(d < prev_d);
        prev_alpha = alpha;
        prev_d = d;
    }

    // Same horizontal offset, different direction: identical link geometry.
    const SatelliteState east{20'000.0, 600'000.0, 7'560.0};
    const double a1 = elevation_angle_deg({0.0, 0.0}, east);
    const double d1 = slant_distance_m({0.0, 0.0}, east);
    const double a2 = elevation_angle_deg({12'000.0, 16'000.0}, {0.0, 600'000.0, 7'560.0});
    const double d2 = slant_distance_m({12'000.0, 16'000.0}, {0.0, 600'000.0, 7'560.0});
    CHECK(a1 == doctest::Approx(a2).epsilon(1e-12));
    CHECK(d1 == doctest::Approx(d2).epsilon(1e-12));
}

TEST_CASE("link_geometry agrees with the scalar operations") {
    const GroundPosition ue{-7'500.0, 3'200.0};
    const SatelliteState sat{42'000.0, 600'000.0, 7'560.0};
    const LinkGeometry geo = link_geometry(ue, sat);
    CHECK(geo.horizontal_m == doctest::Approx(horizontal_distance_m(ue, sat)).epsilon(1e-12));
    CHECK(geo.elevation_deg == doctest::Approx(elevation_angle_deg(ue, sat)).epsilon(1e-12));
    CHECK(geo.slant_m == doctest::Approx(slant_distance_m(ue, sat)).epsilon(1e-12));
}

TEST_CASE("constellation config validation") {
    ConstellationConfig cfg;
    cfg.spacing_m = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.spacing_m = 50'000.0;
    cfg.num_satellites = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
