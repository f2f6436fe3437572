#include "cfda/waveform.hpp"

#include <string>

namespace cfda {

LfmPulse::LfmPulse(double pulse_width, double bandwidth, double sample_rate)
    : sample_rate_(sample_rate), chirp_rate_(bandwidth / pulse_width) {
  if (!(pulse_width > 0.0)) throw std::invalid_argument("lfm: T_p must be > 0");
  if (bandwidth < 0.0) throw std::invalid_argument("lfm: B must be >= 0");
  if (sample_rate < 2.0 * bandwidth) {
    throw std::invalid_argument("lfm: undersampled, f_s = " + std::to_string(sample_rate) +
                                " Hz < 2B = " + std::to_string(2.0 * bandwidth) + " Hz");
  }
  samples_ = static_cast<int>(std::lround(sample_rate * pulse_width));
  if (samples_ < 1) throw std::invalid_argument("lfm: f_s T_p rounds to zero samples");
}

cdouble LfmPulse::operator()(double t) const {
  // Support is the half-open interval of width N_s samples around the template grid,
  // so any delay picks up exactly N_s samples.
  const double u = t * sample_rate_ + centre();
  if (u < -0.5 || u >= samples_ - 0.5) return {};
  return cis(kPi * chirp_rate_ * t * t);
}

ComplexSignal LfmPulse::sampled() const {
  ComplexSignal s;
  s.sample_rate = sample_rate_;
  s.t0 = time(0);
  s.samples.resize(static_cast<std::size_t>(samples_));
  for (int q = 0; q < samples_; ++q) {
    const double t = time(q);
    s.samples[q] = cis(kPi * chirp_rate_ * t * t);
  }
  return s;
}

ComplexSignal lfm_baseband(double pulse_width, double bandwidth, double sample_rate) {
  return LfmPulse(pulse_width, bandwidth, sample_rate).sampled();
}

WaveformBank transmit_bank(const Scenario& sc) {
  const ComplexSignal base = lfm_baseband(sc.pulse_width, sc.bandwidth, sc.sample_rate);
  WaveformBank bank;
  bank.frequency_offset = sc.frequency_offset;
  bank.elements.reserve(static_cast<std::size_t>(sc.num_tx));
  for (int m = 0; m < sc.num_tx; ++m) {
    ComplexSignal u = base;
    for (std::size_t q = 0; q < u.samples.size(); ++q) {
      u.samples[q] *= cis(kTwoPi * m * sc.frequency_offset * u.time(q));
    }
    bank.elements.push_back(std::move(u));
  }
  return bank;
}

CMatrix gram_matrix(const WaveformBank& bank) {
  const auto count = static_cast<Eigen::Index>(bank.elements.size());
  CMatrix g(count, count);
  for (Eigen::Index i = 0; i < count; ++i) {
    for (Eigen::Index j = 0; j < count; ++j) {
      const auto& a = bank.elements[i].samples;
      const auto& b = bank.elements[j].samples;
      cdouble acc{};
      for (std::size_t q = 0; q < a.size(); ++q) acc += a[q] * std::conj(b[q]);
      g(i, j) = acc;
    }
  }
  const Eigen::VectorXd norm = g.diagonal().real().cwiseSqrt();
  for (Eigen::Index i = 0; i < count; ++i) {
    for (Eigen::Index j = 0; j < count; ++j) g(i, j) /= norm(i) * norm(j);
  }
  return g;
}

}  // namespace cfda
