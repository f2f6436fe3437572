#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfda/clutter.hpp"
#include "cfda/config.hpp"
#include "cfda/interference.hpp"
#include "cfda/rxchain.hpp"

namespace cfda {

/// Header plus rows of already formatted cells.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  void write_csv(const std::string& path) const;
};

/// Shortest round-trip decimal form ("%.17g" trimmed); '.' separator regardless of locale.
std::string format_number(double value);

/// Scenario for one architecture: PA runs at delta_f = 0, FDA-MIMO at the
/// configured FDA-MIMO offset, C-FDA at the configured offset, unless overridden.
Scenario scenario_for(const Configuration& cfg, Architecture arch, std::optional<double> delta_f = {});

std::vector<double> linspace(double first, double last, int count);

struct ProfileResult {
  Table table;  // channel_m, rx_n, pulse_k, range_m, magnitude, phase_rad
  double peak_magnitude = 0.0;
  double peak_range = 0.0;
};

/// Noise-free range profiles of every channel of (n, k) = (1, 1) for a point target.
ProfileResult mf_profile(const Configuration& cfg, Architecture arch, std::optional<double> delta_f = {},
                         double half_width = 2000.0);

struct GainPoint {
  double delta_f = 0.0;
  double e_spectral = 0.0;
  double e_time_peak = 0.0;
  double e_spread = 0.0;
  double omega_pa = 0.0;
  double omega_fm = 0.0;
  double omega_cf = 0.0;
};

struct GainSweep {
  std::vector<GainPoint> points;
  Table table;
};

/// Amplitude coefficient per offset plus Monte-Carlo output SNR with w = t:
/// |t^H t|^2 / mean |t^H n|^2 over `trials` noise cubes, `lags` independent
/// fast-time bins each. PA, FDA-MIMO and C-FDA share each trial's noise.
GainSweep gain_sweep(const Configuration& cfg, const std::vector<double>& offsets, int trials, std::uint64_t seed,
                     int lags = 20);

struct SinrPoint {
  double delta_r = 0.0;
  Architecture architecture = Architecture::cfda;
  double delta_f = 0.0;
  double sinr_db = 0.0;
};

/// Closed-form output SINR versus jammer offset R_j - R_t.
std::vector<SinrPoint> sinr_sweep(const Configuration& cfg, const std::vector<Architecture>& archs,
                                  const std::vector<double>& offsets, const std::vector<double>& delta_r);
Table sinr_table(const std::vector<SinrPoint>& points);
/// -1500..1500 m in 10 m steps plus the configured jammer offset.
std::vector<double> default_delta_r(const Configuration& cfg);

/// 100 ranges over 11.5-13 km by 61 azimuths over -30..30 degrees unless given.
CaponMap run_capon(const Configuration& cfg, Architecture arch, std::optional<double> delta_f = {},
                   std::vector<double> ranges = {}, std::vector<double> azimuths = {});
Table capon_table(const CaponMap& map);

/// Range-Doppler clutter spectrum around the target range.
Table clutter_spectrum_table(const Configuration& cfg, Architecture arch, std::optional<double> delta_f = {},
                             int range_bins = 61, double bin_spacing = 50.0, int doppler_bins = 64);

/// Normalized Doppler grid -0.5 + i / count.
std::vector<double> doppler_grid(int count);

struct SdrLossRun {
  Architecture architecture;
  double delta_f;
  StapMethod method;
  bool srdc;
  SdrLossCurve curve;
};

SdrLossRun run_sdr_loss(const Configuration& cfg, Architecture arch, std::optional<double> delta_f, StapMethod method,
                        bool srdc, int doppler_bins = 200);
Table sdr_loss_table(const std::vector<SdrLossRun>& runs);

}  // namespace cfda
