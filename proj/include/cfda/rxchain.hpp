#pragma once

#include <random>
#include <vector>

#include "cfda/steering.hpp"
#include "cfda/txchain.hpp"
#include "cfda/waveform.hpp"

namespace cfda {

/// Fast-time receive window in absolute sample indices: t = index / f_s.
struct ReceiveWindow {
  long long first_index = 0;
  int length = 0;
};

/// Window centred on the two-way delay of `range`, +-half_width metres.
ReceiveWindow window_around(const Scenario& sc, double range, double half_width);
/// Window centred on `range` wide enough for a full compressed pulse.
ReceiveWindow default_window(const Scenario& sc, double range);

/// Received signals y_{n,k}(t). With `copies` = M each (m, n, k) channel has its
/// own noise realization; the echo itself is shared.
struct EchoCube {
  int num_rx = 0;
  int num_pulses = 0;
  int copies = 1;
  double sample_rate = 1.0;
  ReceiveWindow window;
  bool noisy = false;
  std::vector<std::vector<cdouble>> signals;

  const std::vector<cdouble>& at(int copy, int n, int k) const {
    return signals[(static_cast<std::size_t>(copy) * num_rx + n) * num_pulses + k];
  }
  std::vector<cdouble>& at(int copy, int n, int k) {
    return signals[(static_cast<std::size_t>(copy) * num_rx + n) * num_pulses + k];
  }
};

/// Echo of a point emitter illuminated by `tx`, scaled by xi.
/// Throws std::out_of_range when any two-way delay falls outside the window.
EchoCube synthesize_echo(const Scenario& sc, const TransmitDesign& tx, const PointEmitter& e, cdouble xi,
                         const ReceiveWindow& window, int copies = 1);

/// Adds i.i.d. CN(0, sigma_n^2) to every sample of every copy.
void add_noise(const Scenario& sc, EchoCube& cube, std::mt19937_64& rng);

/// Noise-only cube.
EchoCube noise_cube(const Scenario& sc, const ReceiveWindow& window, int copies, std::mt19937_64& rng);

/// M x N x K grid of window-aligned signals.
struct ChannelGrid {
  int num_channels = 0;
  int num_rx = 0;
  int num_pulses = 0;
  double sample_rate = 1.0;
  ReceiveWindow window;
  std::vector<std::vector<cdouble>> z;

  const std::vector<cdouble>& at(int m, int n, int k) const {
    return z[static_cast<std::size_t>(flat_index(m, n, k, num_rx, num_pulses))];
  }
  std::vector<cdouble>& at(int m, int n, int k) {
    return z[static_cast<std::size_t>(flat_index(m, n, k, num_rx, num_pulses))];
  }
  /// Range (m) of window bin j: c t / 2.
  double range_of(long long bin) const;
};

/// Correlates x with template p (centre sample c) and aligns the output with x:
/// out[i] = sum_q x[i + q - c] conj(p[q]).
std::vector<cdouble> matched_filter(const std::vector<cdouble>& x, const std::vector<cdouble>& tmpl,
                                    int centre);

/// Multi-channel frequency mixing: channel m = y exp(-j 2 pi m delta_f t).
ChannelGrid mfm(const Scenario& sc, const EchoCube& cube);

/// Template of channel m: phi(u) sum_i exp(j 2 pi (i - m) delta_f u).
std::vector<cdouble> mmf_template(const Scenario& sc, int m);

/// Multi-channel matched filtering of mixed signals.
ChannelGrid mmf(const Scenario& sc, const ChannelGrid& mixed);

/// Single-channel matched filter on each (n, k); M = 1 grid.
ChannelGrid pa_chain(const Scenario& sc, const EchoCube& cube);
/// Mix channel m down by m delta_f, then match with phi alone.
ChannelGrid fdamimo_chain(const Scenario& sc, const EchoCube& cube);
ChannelGrid cfda_chain(const Scenario& sc, const EchoCube& cube);

enum class PeakMode { at_known_delay, argmax };

/// Samples every channel at the emitter's two-way delay, or at each channel's
/// magnitude maximum. `bins` receives the window-relative bin per channel.
Snapshot sample_peak(const Scenario& sc, const ChannelGrid& out, const PointEmitter& e, PeakMode mode,
                     Architecture arch, std::vector<long long>* bins = nullptr);

Snapshot pa_receiver(const Scenario& sc, const EchoCube& cube, const PointEmitter& e,
                     PeakMode mode = PeakMode::at_known_delay);
Snapshot fdamimo_receiver(const Scenario& sc, const EchoCube& cube, const PointEmitter& e,
                          PeakMode mode = PeakMode::at_known_delay);
Snapshot cfda_receiver(const Scenario& sc, const EchoCube& cube, const PointEmitter& e,
                       PeakMode mode = PeakMode::at_known_delay);

enum class AmplitudeMethod { spectral, time_peak };

struct AmplitudeCoefficient {
  double value = 0.0;  // E, channel 1
  double frequency_offset = 0.0;
  AmplitudeMethod method = AmplitudeMethod::spectral;
  Eigen::VectorXd per_channel;
  /// (max - min) / value over channels
  double spread = 0.0;
  /// delta_f >= B / (M - 1): outside the regime where sqrt(M) < E <= M is expected.
  bool outside_regime = false;
};

/// E = sqrt(zero-lag MMF peak / N_s) for a unit, coherently steered echo.
AmplitudeCoefficient amplitude_coefficient(const Scenario& sc, AmplitudeMethod method);

/// Steering model for `arch`; C-FDA gets the spectral amplitude coefficient.
SteeringModel make_model(const Scenario& sc, Architecture arch);

}  // namespace cfda
