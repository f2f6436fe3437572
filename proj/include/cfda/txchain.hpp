#pragma once

#include "cfda/steering.hpp"
#include "cfda/waveform.hpp"

namespace cfda {

struct BeamformWeights {
  CVector v;
  double azimuth = 0.0;
  double elevation = 0.0;
};

/// v_m = exp(-j 2 pi [f_c + m delta_f] m (d/c) cos(azimuth) cos(elevation)), m zero-based.
BeamformWeights tx_weights(const Scenario& sc, double azimuth, double elevation);

/// All-ones weights (no transmit beamforming).
BeamformWeights unit_weights(const Scenario& sc);

/// Complex amplitude of each transmitted tone as seen from e:
/// c_m = v_m exp(j 2 pi [f_c + m delta_f] tau_m), tau_m the element displacement delay.
CVector tone_coefficients(const Scenario& sc, const BeamformWeights& w, const PointEmitter& e);

/// Composite baseband signal radiated toward e: sum_m c_m u_m(t).
ComplexSignal transmit_signal(const Scenario& sc, const WaveformBank& bank, const BeamformWeights& w,
                              const PointEmitter& e);

/// Transmit description consumed by echo synthesis.
struct TransmitDesign {
  double frequency_offset = 0.0;
  CVector tones;  // c_m, one per transmitted tone
};

/// PA: steering weights with delta_f forced to 0. FDA-MIMO: unit weights at the
/// scenario offset. C-FDA: steering weights at the scenario offset.
/// MIMO has no time-domain model and throws.
TransmitDesign transmit_design(const Scenario& sc, Architecture arch, const PointEmitter& steer_to,
                               const PointEmitter& toward);

}  // namespace cfda
