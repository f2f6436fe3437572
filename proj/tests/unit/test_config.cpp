#include <doctest.h>

#include "cfda/config.hpp"

using namespace cfda;

namespace {

std::string message_of(const std::string& text) {
  try {
    parse_config(text).validate();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("defaults are the desk scenario") {
    const Configuration cfg = desk_defaults();
    CHECK(cfg.scenario.num_tx == 4);
    CHECK(cfg.scenario.samples_per_pulse() == 200);
    CHECK(cfg.clutter_patches == 60);
    CHECK(cfg.ambiguities == 3);
    CHECK_NOTHROW(cfg.validate());
  }

  TEST_CASE("keys map onto fields with degrees at the boundary") {
    const Configuration cfg = parse_config(R"({"f_c": 9e9, "delta_f": 2500, "M": 6, "psi_deg": 45,
      "phi_t_deg": -10, "R_t": 11000, "I": 90, "P": 2, "INR_dB": 20, "target_doppler": 0.4,
      "delta_f_fda_mimo": 2e6, "seed": 42})");
    CHECK(cfg.scenario.carrier_frequency == 9e9);
    CHECK(cfg.scenario.frequency_offset == 2500);
    CHECK(cfg.scenario.num_tx == 6);
    CHECK(cfg.scenario.yaw == doctest::Approx(kPi / 4.0));
    CHECK(cfg.target_azimuth == doctest::Approx(-kPi / 18.0));
    CHECK(cfg.target_range == 11000);
    CHECK(cfg.clutter_patches == 90);
    CHECK(cfg.ambiguities == 2);
    CHECK(cfg.inr() == doctest::Approx(100.0));
    CHECK(cfg.target_doppler.value() == 0.4);
    CHECK(cfg.fda_mimo_offset == 2e6);
    CHECK(cfg.scenario.rng_seed == 42);
    CHECK(cfg.target().doppler.value() == 0.4);
  }

  TEST_CASE("diagnostics name the offending field") {
    CHECK(message_of(R"({"Rt": 1})").find("'Rt'") != std::string::npos);
    CHECK(message_of(R"({"M": "four"})").find("'M'") != std::string::npos);
    CHECK(message_of(R"({"M": 2.5})").find("'M'") != std::string::npos);
    CHECK(message_of(R"({"f_s": 1e5})").find("f_s") != std::string::npos);
    CHECK(message_of("[1, 2]").find("object") != std::string::npos);
    CHECK(message_of("{").find("malformed") != std::string::npos);
  }

  TEST_CASE("target below the platform is a domain error") {
    CHECK_THROWS_AS(parse_config(R"({"R_t": 2000})").validate(), std::domain_error);
  }

  TEST_CASE("fig scale overrides the file") {
    Configuration cfg = parse_config(R"({"M": 2, "f_s": 30e6})");
    apply_fig_scale(cfg);
    CHECK(cfg.scenario.num_tx == 8);
    CHECK(cfg.scenario.samples_per_pulse() == 1000);
    CHECK(cfg.clutter_patches == 360);
    CHECK(cfg.ambiguities == 5);
  }

  TEST_CASE("json round trip") {
    Configuration cfg = desk_defaults();
    cfg.target_doppler = 0.25;
    cfg.scenario.yaw = 0.3;
    const Configuration back = parse_config(config_to_json(cfg));
    CHECK(config_to_json(back) == config_to_json(cfg));
    CHECK(back.scenario.yaw == doctest::Approx(0.3));
  }
}
