#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cfda/numerics.hpp"

namespace cfda {

/// Radar, platform and processing parameters. SI units, angles in radians.
struct Scenario {
  double carrier_frequency = 10e9;
  double frequency_offset = 50e3;
  double bandwidth = 1e6;
  double pulse_width = 10e-6;
  double pri = 100e-6;
  double element_spacing = 0.015;
  int num_tx = 4;
  int num_rx = 4;
  int num_pulses = 4;
  double platform_height = 3000.0;
  double platform_velocity = 75.0;
  double yaw = kPi / 2.0;
  double sample_rate = 20e6;
  double noise_power = 1.0;
  std::uint64_t rng_seed = 1;

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;

  double wavelength() const { return kSpeedOfLight / carrier_frequency; }
  double chirp_rate() const { return bandwidth / pulse_width; }
  /// N_s = round(f_s T_p)
  int samples_per_pulse() const;
  /// R_u = c T / 2
  double unambiguous_range() const { return kSpeedOfLight * pri / 2.0; }
  int mnk() const { return num_tx * num_rx * num_pulses; }
  int nk() const { return num_rx * num_pulses; }
};

enum class EmitterKind { target, jammer, clutter_patch };

struct PointEmitter {
  double azimuth = 0.0;
  double elevation = 0.0;
  double range = 12e3;
  double velocity = 0.0;
  double power = 1.0;
  EmitterKind kind = EmitterKind::target;
  /// Normalized Doppler used instead of the geometric value when set.
  std::optional<double> doppler;
};

struct DelaySet {
  double propagation = 0.0;
  std::vector<double> tx;       // per transmit element
  std::vector<double> rx;       // per receive element
  std::vector<double> doppler;  // per pulse

  /// tau_{n,k} = propagation - rx[n] - doppler[k] (zero-based indices)
  double two_way(int n, int k) const { return propagation - rx[n] - doppler[k]; }
};

DelaySet delays(const Scenario& sc, const PointEmitter& e);

/// (d / lambda) cos(azimuth) cos(elevation)
double spatial_frequency(const Scenario& sc, double azimuth, double elevation);

/// Normalized Doppler 2 (v_a + v) T / lambda * cos(azimuth + yaw) cos(elevation),
/// or the emitter's override.
double doppler_frequency(const Scenario& sc, const PointEmitter& e);

/// -2 R delta_f / c
double range_frequency(const Scenario& sc, double range);

/// arcsin(H / R); throws std::domain_error when R < H.
double elevation_from_range(const Scenario& sc, double range);

/// Emitter at the given range with elevation derived from the platform height.
PointEmitter emitter_at(const Scenario& sc, double range, double azimuth, double velocity,
                        double power, EmitterKind kind = EmitterKind::target);

}  // namespace cfda
