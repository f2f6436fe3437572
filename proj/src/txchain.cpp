#include "cfda/txchain.hpp"

namespace cfda {

BeamformWeights tx_weights(const Scenario& sc, double azimuth, double elevation) {
  BeamformWeights w;
  w.azimuth = azimuth;
  w.elevation = elevation;
  w.v.resize(sc.num_tx);
  const double geom = sc.element_spacing / kSpeedOfLight * std::cos(azimuth) * std::cos(elevation);
  for (int m = 0; m < sc.num_tx; ++m) {
    const double freq = sc.carrier_frequency + m * sc.frequency_offset;
    w.v(m) = cis(-kTwoPi * freq * m * geom);
  }
  return w;
}

BeamformWeights unit_weights(const Scenario& sc) {
  BeamformWeights w;
  w.v = CVector::Ones(sc.num_tx);
  return w;
}

CVector tone_coefficients(const Scenario& sc, const BeamformWeights& w, const PointEmitter& e) {
  if (w.v.size() != sc.num_tx) throw std::invalid_argument("tone_coefficients: weight count != M");
  const DelaySet d = delays(sc, e);
  CVector c(sc.num_tx);
  for (int m = 0; m < sc.num_tx; ++m) {
    const double freq = sc.carrier_frequency + m * sc.frequency_offset;
    c(m) = w.v(m) * cis(kTwoPi * freq * d.tx[m]);
  }
  return c;
}

ComplexSignal transmit_signal(const Scenario& sc, const WaveformBank& bank, const BeamformWeights& w,
                              const PointEmitter& e) {
  if (bank.elements.size() != static_cast<std::size_t>(w.v.size())) {
    throw std::invalid_argument("transmit_signal: bank and weights differ in M");
  }
  const CVector c = tone_coefficients(sc, w, e);
  ComplexSignal s = bank.elements.front();
  std::fill(s.samples.begin(), s.samples.end(), cdouble{});
  for (std::size_t m = 0; m < bank.elements.size(); ++m) {
    const auto& u = bank.elements[m].samples;
    for (std::size_t q = 0; q < u.size(); ++q) s.samples[q] += c(m) * u[q];
  }
  return s;
}

TransmitDesign transmit_design(const Scenario& sc, Architecture arch, const PointEmitter& steer_to,
                               const PointEmitter& toward) {
  TransmitDesign design;
  switch (arch) {
    case Architecture::pa: {
      Scenario coherent = sc;
      coherent.frequency_offset = 0.0;
      design.tones =
          tone_coefficients(coherent, tx_weights(coherent, steer_to.azimuth, steer_to.elevation), toward);
      return design;
    }
    case Architecture::fda_mimo:
      design.frequency_offset = sc.frequency_offset;
      design.tones = tone_coefficients(sc, unit_weights(sc), toward);
      return design;
    case Architecture::cfda:
      design.frequency_offset = sc.frequency_offset;
      design.tones = tone_coefficients(sc, tx_weights(sc, steer_to.azimuth, steer_to.elevation), toward);
      return design;
    case Architecture::mimo:
      break;
  }
  throw std::invalid_argument("transmit_design: MIMO is modelled in closed form only");
}

}  // namespace cfda
