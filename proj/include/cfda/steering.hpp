#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cfda/scene.hpp"

namespace cfda {

enum class Architecture { pa, mimo, fda_mimo, cfda };

/// "pa", "mimo", "fda-mimo", "c-fda"
std::string to_string(Architecture arch);
Architecture parse_architecture(std::string_view name);

struct Snapshot {
  CVector data;
  Architecture architecture = Architecture::cfda;
  /// Fast-time bin the snapshot was taken at (window-relative), or -1.
  long long bin = -1;
};

/// Flat index of (m, n, k), zero-based: (m N + n) K + k.
inline Eigen::Index flat_index(int m, int n, int k, int num_rx, int num_pulses) {
  return (static_cast<Eigen::Index>(m) * num_rx + n) * num_pulses + k;
}

struct ChannelIndex {
  int m, n, k;
};
ChannelIndex unflatten(Eigen::Index index, int num_rx, int num_pulses);

CVector tx_steering(const Scenario& sc, double azimuth, double elevation);
CVector rx_steering(const Scenario& sc, double azimuth, double elevation);
CVector doppler_steering(const Scenario& sc, double doppler);
CVector range_steering(const Scenario& sc, double range);

/// Per-architecture space-time(-range) response.
///
/// Gain factors: PA M, MIMO and FDA-MIMO 1, C-FDA the amplitude coefficient E.
/// Layout is range ⊗ receive ⊗ Doppler (PA drops the range block).
class SteeringModel {
 public:
  /// C-FDA requires the amplitude coefficient; other architectures ignore it.
  SteeringModel(const Scenario& sc, Architecture arch, std::optional<double> coefficient = {});

  Architecture architecture() const { return arch_; }
  const Scenario& scenario() const { return sc_; }
  double coefficient() const { return coefficient_; }
  Eigen::Index dimension() const;

  CVector response(double azimuth, double elevation, double doppler, double range) const;
  CVector response(const PointEmitter& e) const;

  /// Response split into its Kronecker factors; `transmit` is empty for PA.
  struct Factors {
    double gain = 1.0;
    CVector transmit;
    CVector receive;
    CVector doppler;
  };
  Factors factors(double azimuth, double elevation, double doppler, double range) const;

 private:
  Scenario sc_;
  Architecture arch_;
  double coefficient_ = 1.0;
};

/// xi times the model response toward e.
Snapshot ideal_snapshot(const SteeringModel& model, const PointEmitter& e, cdouble amplitude);

}  // namespace cfda
