#include "cfda/scene.hpp"

#include <string>

namespace cfda {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("scenario: ") + what);
}

}  // namespace

void Scenario::validate() const {
  require(carrier_frequency > 0.0, "f_c must be > 0");
  require(frequency_offset >= 0.0, "delta_f must be >= 0");
  require(bandwidth > 0.0, "B must be > 0");
  require(pulse_width > 0.0, "T_p must be > 0");
  require(pri >= pulse_width, "T must be >= T_p");
  require(num_tx >= 1, "M must be >= 1");
  require(num_rx >= 1, "N must be >= 1");
  require(num_pulses >= 1, "K must be >= 1");
  require(sample_rate >= 2.0 * bandwidth, "f_s must be >= 2B");
  require(element_spacing > 0.0, "d must be > 0");
  require(platform_height >= 0.0, "H must be >= 0");
  require(noise_power >= 0.0, "sigma_n2 must be >= 0");
}

int Scenario::samples_per_pulse() const {
  return static_cast<int>(std::lround(sample_rate * pulse_width));
}

DelaySet delays(const Scenario& sc, const PointEmitter& e) {
  if (!(e.range > 0.0)) throw std::invalid_argument("delays: range must be > 0");
  DelaySet out;
  out.propagation = 2.0 * e.range / kSpeedOfLight;

  const double geom = sc.element_spacing / kSpeedOfLight * std::cos(e.azimuth) * std::cos(e.elevation);
  out.tx.resize(static_cast<std::size_t>(sc.num_tx));
  for (int m = 0; m < sc.num_tx; ++m) out.tx[m] = m * geom;
  out.rx.resize(static_cast<std::size_t>(sc.num_rx));
  for (int n = 0; n < sc.num_rx; ++n) out.rx[n] = n * geom;

  // f_c * tau_k = k * f_D, which also covers a Doppler override.
  const double per_pulse = doppler_frequency(sc, e) / sc.carrier_frequency;
  out.doppler.resize(static_cast<std::size_t>(sc.num_pulses));
  for (int k = 0; k < sc.num_pulses; ++k) out.doppler[k] = k * per_pulse;
  return out;
}

double spatial_frequency(const Scenario& sc, double azimuth, double elevation) {
  return sc.element_spacing / sc.wavelength() * std::cos(azimuth) * std::cos(elevation);
}

double doppler_frequency(const Scenario& sc, const PointEmitter& e) {
  if (e.doppler) return *e.doppler;
  return 2.0 * (sc.platform_velocity + e.velocity) * sc.pri / sc.wavelength() *
         std::cos(e.azimuth + sc.yaw) * std::cos(e.elevation);
}

double range_frequency(const Scenario& sc, double range) {
  return -2.0 * range * sc.frequency_offset / kSpeedOfLight;
}

double elevation_from_range(const Scenario& sc, double range) {
  if (range < sc.platform_height) {
    throw std::domain_error("elevation_from_range: R = " + std::to_string(range) +
                            " m is below platform height H = " +
                            std::to_string(sc.platform_height) + " m");
  }
  return std::asin(sc.platform_height / range);
}

PointEmitter emitter_at(const Scenario& sc, double range, double azimuth, double velocity,
                        double power, EmitterKind kind) {
  PointEmitter e;
  e.range = range;
  e.azimuth = azimuth;
  e.elevation = elevation_from_range(sc, range);
  e.velocity = velocity;
  e.power = power;
  e.kind = kind;
  return e;
}

}  // namespace cfda
