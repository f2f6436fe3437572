#pragma once

#include <optional>
#include <string>

#include "cfda/clutter.hpp"
#include "cfda/scene.hpp"

namespace cfda {

/// Scenario plus the target, jammer and clutter settings of a study.
struct Configuration {
  Scenario scenario;
  double fda_mimo_offset = 1e6;
  double target_azimuth = 0.0;
  double target_range = 12e3;
  double target_velocity = 25.0;
  std::optional<double> target_doppler;
  int clutter_patches = 60;
  int ambiguities = 3;
  double snr_in_db = 10.0;
  double inr_db = 30.0;
  double cnr_db = 50.0;
  double jammer_range = 12.5e3;

  /// Throws std::invalid_argument for bad parameters and std::domain_error
  /// for infeasible geometry (R < H).
  void validate() const;

  PointEmitter target() const;
  ClutterOptions clutter() const;
  double snr_in() const { return from_db10(snr_in_db); }
  double inr() const { return from_db10(inr_db); }
};

/// M = N = K = 4, f_s = 20 MHz, I = 60, P = 3.
Configuration desk_defaults();
/// f_s = 100 MHz, M = N = K = 8, I = 360, P = 5.
void apply_fig_scale(Configuration& cfg);

/// Flat JSON object; keys mirror the usual symbols (f_c, delta_f, B, T_p, T, d,
/// M, N, K, H, v_a, psi_deg, f_s, sigma_n2, seed, phi_t_deg, R_t, v_t,
/// target_doppler, I, P, SNR_in_dB, INR_dB, CNR_dB, R_j, delta_f_fda_mimo).
/// Unknown keys and wrongly typed values throw std::invalid_argument naming the key.
Configuration parse_config(const std::string& json_text, const Configuration& base = desk_defaults());
Configuration load_config(const std::string& path, bool fig_scale);
std::string config_to_json(const Configuration& cfg);

}  // namespace cfda
