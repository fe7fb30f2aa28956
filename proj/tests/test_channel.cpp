#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>
#include <vector>

#include "ntnho/channel.hpp"
#include "ntnho/geometry.hpp"
#include "ntnho/rng.hpp"

using namespace ntnho;

TEST_CASE("environment lookup: dense-urban rows and bucket rule") {
    const EnvironmentTable table;

    const EnvironmentRow& r30 = table.lookup(30.0);
    CHECK(r30.los_probability == doctest::Approx(0.398));
    CHECK(r30.sigma_sf_los_db == doctest::Approx(2.9));
    CHECK(r30.sigma_sf_nlos_db == doctest::Approx(12.4));
    CHECK(r30.clutter_loss_db == doctest::Approx(29.0));

    const EnvironmentRow& r90 = table.lookup(90.0);
    CHECK(r90.los_probability == doctest::Approx(0.981));
    CHECK(r90.sigma_sf_los_db == doctest::Approx(1.2));
    CHECK(r90.sigma_sf_nlos_db == doctest::Approx(9.2));
    CHECK(r90.clutter_loss_db == doctest::Approx(25.5));

    CHECK(table.lookup(34.0).elevation_bucket_deg == 30);  // nearest bucket
    CHECK(table.lookup(85.0).elevation_bucket_deg == 90);  // tie rounds up
    CHECK(table.lookup(3.0).elevation_bucket_deg == 10);   // clamp below 5 degrees
    CHECK_THROWS_AS(table.lookup(0.0), std::domain_error);
    CHECK_THROWS_AS(table.lookup(-5.0), std::domain_error);
}

TEST_CASE("fspl") {
    CHECK(fspl_db(600'000.0, 2.0) == doctest::Approx(154.033625).epsilon(1e-8));
    CHECK(fspl_db(1.0, 1.0) == doctest::Approx(32.45));
    CHECK(fspl_db(1'931'635.358909, 2.0) == doctest::Approx(164.189103).epsilon(1e-8));
    CHECK_THROWS_AS(fspl_db(0.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(fspl_db(600'000.0, 0.0), std::domain_error);
}

TEST_CASE("basic path loss: clutter on the NLoS branch only") {
    const EnvironmentTable table;
    const EnvironmentRow& r90 = table.lookup(90.0);
    const double f = fspl_db(600'000.0, 2.0);
    CHECK(basic_path_loss_db(600'000.0, 2.0, r90, PathBranch::los, 0.0) == doctest::Approx(f));
    CHECK(basic_path_loss_db(600'000.0, 2.0, r90, PathBranch::nlos, 0.0) ==
          doctest::Approx(f + 25.5));
    CHECK(basic_path_loss_db(600'000.0, 2.0, r90, PathBranch::los, 3.5) ==
          doctest::Approx(f + 3.5));
}

TEST_CASE("total path loss: weighted combination plus scintillation") {
    const ChannelConfig cfg;
    CHECK(cfg.scintillation_db() == doctest::Approx(7.778175).epsilon(1e-6));

    CHECK(total_path_loss_db(600'000.0, 90.0, 0.0, 0.0, cfg) ==
          doctest::Approx(162.296300).epsilon(1e-8));
    CHECK(total_path_loss_db(1'931'635.358909, 10.0, 0.0, 0.0, cfg) ==
          doctest::Approx(196.594677).epsilon(1e-8));

    // Degenerate LoS probability turns the combination into PL_LoS + PL_s.
    ChannelConfig certain = cfg;
    certain.environment.set_row(EnvironmentRow{90, 1.0, 1.2, 9.2, 25.5});
    CHECK(total_path_loss_db(600'000.0, 90.0, 0.0, 0.0, certain) ==
          doctest::Approx(fspl_db(600'000.0, 2.0) + certain.scintillation_db()).epsilon(1e-10));
}

TEST_CASE("total path loss: increases as elevation drops") {
    const ChannelConfig cfg;
    double prev = 0.0;
    for (int alpha = 90; alpha >= 10; alpha -= 10) {
        const double d = slant_distance_m(static_cast<double>(alpha), 600'000.0);
        const double pl = total_path_loss_db(d, static_cast<double>(alpha), 0.0, 0.0, cfg);
        CHECK(pl > prev);
        prev = pl;
    }
}

TEST_CASE("rss: per-PRB EIRP minus path loss") {
    const ChannelConfig cfg;
    CHECK(cfg.eirp_per_prb_dbm() == doctest::Approx(56.552725).epsilon(1e-7));
    CHECK(rss_dbm(162.296300, cfg) == doctest::Approx(-105.743574).epsilon(1e-7));
    CHECK(rss_dbm(0.0, cfg) == doctest::Approx(cfg.eirp_per_prb_dbm()));

    // Additive inverse holds for arbitrary losses.
    for (double pl : {0.0, 37.5, 154.03, 210.0}) {
        CHECK(rss_dbm(pl, cfg) + pl == doctest::Approx(cfg.eirp_per_prb_dbm()).epsilon(1e-12));
    }
}

TEST_CASE("sinr: linear-domain combining") {
    CHECK(sinr_db(-100.0, {}, -121.4) == doctest::Approx(21.400000).epsilon(1e-7));

    // Equal serving and single interferer with negligible noise.
    const std::vector<double> one{-100.0};
    CHECK(sinr_db(-100.0, one, -300.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));

    const std::vector<double> two{-120.0, -125.0};
    CHECK(sinr_db(-105.743574, two, -121.4) == doctest::Approx(11.158711).epsilon(1e-6));

    CHECK_THROWS_AS(sinr_db(std::nan(""), {}, -121.4), std::domain_error);
}

TEST_CASE("sinr: invariant under a common dB shift") {
    std::mt19937_64 rng{7};
    std::uniform_real_distribution<double> level(-140.0, -80.0);
    std::uniform_real_distribution<double> shift(-30.0, 30.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double s = level(rng);
        std::vector<double> ints{level(rng), level(rng)};
        const double n = level(rng);
        const double c = shift(rng);
        const double base = sinr_db(s, ints, n);
        std::vector<double> ints_shifted{ints[0] + c, ints[1] + c};
        const double shifted = sinr_db(s + c, ints_shifted, n + c);
        CHECK(shifted == doctest::Approx(base).epsilon(1e-9));
    }
}

TEST_CASE("shadow fading draws match the configured sigma") {
    // 1e5 draws per branch; empirical std within 2% of Table-row sigma.
    const EnvironmentTable table;
    const EnvironmentRow& row = table.lookup(40.0);
    auto rng = seeded_stream(99, 0, 0, StreamPurpose::shadow_nlos);
    std::normal_distribution<double> gauss;
    const int n = 100'000;
    double sum = 0.0;
    double sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double sf = gauss(rng) * row.sigma_sf_nlos_db;
        sum += sf;
        sum2 += sf * sf;
    }
    const double mean = sum / n;
    const double std_dev = std::sqrt(sum2 / n - mean * mean);
    CHECK(std_dev == doctest::Approx(row.sigma_sf_nlos_db).epsilon(0.02));
}

TEST_CASE("channel config validation") {
    ChannelConfig cfg;
    cfg.carrier_ghz = 6.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = ChannelConfig{};
    cfg.prb_bandwidth_mhz = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = ChannelConfig{};
    // Non-increasing LoS probability across buckets is rejected.
    cfg.environment.set_row(EnvironmentRow{20, 0.2, 3.4, 13.9, 30.9});
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
