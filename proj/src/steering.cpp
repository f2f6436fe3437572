#include "cfda/steering.hpp"

namespace cfda {

namespace {

CVector progression(int count, double cycles) {
  CVector v(count);
  for (int i = 0; i < count; ++i) v(i) = cis(kTwoPi * i * cycles);
  return v;
}

}  // namespace

std::string to_string(Architecture arch) {
  switch (arch) {
    case Architecture::pa: return "pa";
    case Architecture::mimo: return "mimo";
    case Architecture::fda_mimo: return "fda-mimo";
    case Architecture::cfda: return "c-fda";
  }
  return "unknown";
}

Architecture parse_architecture(std::string_view name) {
  if (name == "pa") return Architecture::pa;
  if (name == "mimo") return Architecture::mimo;
  if (name == "fda-mimo" || name == "fda_mimo") return Architecture::fda_mimo;
  if (name == "c-fda" || name == "cfda") return Architecture::cfda;
  throw std::invalid_argument("unknown architecture '" + std::string(name) +
                              "' (expected pa, mimo, fda-mimo or c-fda)");
}

ChannelIndex unflatten(Eigen::Index index, int num_rx, int num_pulses) {
  const auto k = static_cast<int>(index % num_pulses);
  const auto rest = index / num_pulses;
  return {static_cast<int>(rest / num_rx), static_cast<int>(rest % num_rx), k};
}

CVector tx_steering(const Scenario& sc, double azimuth, double elevation) {
  return progression(sc.num_tx, spatial_frequency(sc, azimuth, elevation));
}

CVector rx_steering(const Scenario& sc, double azimuth, double elevation) {
  return progression(sc.num_rx, spatial_frequency(sc, azimuth, elevation));
}

CVector doppler_steering(const Scenario& sc, double doppler) {
  return progression(sc.num_pulses, doppler);
}

CVector range_steering(const Scenario& sc, double range) {
  if (!(range > 0.0)) throw std::invalid_argument("range_steering: range must be > 0");
  return progression(sc.num_tx, range_frequency(sc, range));
}

SteeringModel::SteeringModel(const Scenario& sc, Architecture arch, std::optional<double> coefficient)
    : sc_(sc), arch_(arch) {
  if (arch == Architecture::cfda) {
    if (!coefficient) {
      throw std::invalid_argument("SteeringModel: C-FDA needs the amplitude coefficient E");
    }
    coefficient_ = *coefficient;
  } else if (arch == Architecture::pa) {
    coefficient_ = sc.num_tx;
  }
}

Eigen::Index SteeringModel::dimension() const {
  return arch_ == Architecture::pa ? sc_.nk() : sc_.mnk();
}

SteeringModel::Factors SteeringModel::factors(double azimuth, double elevation, double doppler,
                                              double range) const {
  Factors f;
  f.receive = rx_steering(sc_, azimuth, elevation);
  f.doppler = doppler_steering(sc_, doppler);
  switch (arch_) {
    case Architecture::pa:
      f.gain = coefficient_;
      break;
    case Architecture::mimo:
      f.transmit = tx_steering(sc_, azimuth, elevation);
      break;
    case Architecture::fda_mimo:
      f.transmit = tx_steering(sc_, azimuth, elevation).cwiseProduct(range_steering(sc_, range));
      break;
    case Architecture::cfda:
      f.gain = coefficient_;
      f.transmit = range_steering(sc_, range);
      break;
  }
  return f;
}

CVector SteeringModel::response(double azimuth, double elevation, double doppler, double range) const {
  const Factors f = factors(azimuth, elevation, doppler, range);
  const CVector space = f.transmit.size() ? kron(f.transmit, f.receive) : f.receive;
  return f.gain * kron(space, f.doppler);
}

CVector SteeringModel::response(const PointEmitter& e) const {
  return response(e.azimuth, e.elevation, doppler_frequency(sc_, e), e.range);
}

Snapshot ideal_snapshot(const SteeringModel& model, const PointEmitter& e, cdouble amplitude) {
  Snapshot s;
  s.data = amplitude * model.response(e);
  s.architecture = model.architecture();
  return s;
}

}  // namespace cfda
