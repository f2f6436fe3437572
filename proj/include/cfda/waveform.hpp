#pragma once

#include <vector>

#include "cfda/scene.hpp"

namespace cfda {

/// Uniformly sampled complex baseband signal; sample i sits at t0 + i / sample_rate.
struct ComplexSignal {
  std::vector<cdouble> samples;
  double sample_rate = 1.0;
  double t0 = 0.0;

  double duration() const { return static_cast<double>(samples.size()) / sample_rate; }
  double time(std::size_t i) const { return t0 + static_cast<double>(i) / sample_rate; }
};

/// Amplitude-1 LFM pulse exp(j pi kappa t^2), kappa = B / T_p.
///
/// The pulse is centred on t = 0: N_s = round(f_s T_p) samples at
/// t_q = (q - floor(N_s / 2)) / f_s.
class LfmPulse {
 public:
  LfmPulse(double pulse_width, double bandwidth, double sample_rate);

  int samples() const { return samples_; }
  int centre() const { return samples_ / 2; }
  double chirp_rate() const { return chirp_rate_; }
  double sample_rate() const { return sample_rate_; }

  /// Continuous-time value; zero outside the N_s-sample support.
  cdouble operator()(double t) const;
  /// Time of template sample q.
  double time(int q) const { return (q - centre()) / sample_rate_; }

  ComplexSignal sampled() const;

 private:
  double sample_rate_;
  double chirp_rate_;
  int samples_;
};

/// Throws std::invalid_argument when f_s < 2B.
ComplexSignal lfm_baseband(double pulse_width, double bandwidth, double sample_rate);

/// u_m(t) = phi(t) exp(j 2 pi m delta_f t), m = 0..M-1, on the pulse grid.
struct WaveformBank {
  std::vector<ComplexSignal> elements;
  double frequency_offset = 0.0;
};

WaveformBank transmit_bank(const Scenario& sc);

/// G[i][j] = <u_i, u_j> / sqrt(<u_i,u_i><u_j,u_j>)
CMatrix gram_matrix(const WaveformBank& bank);

}  // namespace cfda
