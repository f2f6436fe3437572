#include "cfda/rxchain.hpp"

#include <algorithm>
#include <string>

namespace cfda {

ReceiveWindow window_around(const Scenario& sc, double range, double half_width) {
  const double fs = sc.sample_rate;
  const long long centre = std::llround(2.0 * range / kSpeedOfLight * fs);
  const long long half = std::llround(2.0 * half_width / kSpeedOfLight * fs);
  return {centre - half, static_cast<int>(2 * half + 1)};
}

ReceiveWindow default_window(const Scenario& sc, double range) {
  const double half_samples = sc.samples_per_pulse() + 16;
  return window_around(sc, range, half_samples * kSpeedOfLight / (2.0 * sc.sample_rate));
}

EchoCube synthesize_echo(const Scenario& sc, const TransmitDesign& tx, const PointEmitter& e, cdouble xi,
                         const ReceiveWindow& window, int copies) {
  if (copies < 1) throw std::invalid_argument("synthesize_echo: copies must be >= 1");
  const LfmPulse pulse(sc.pulse_width, sc.bandwidth, sc.sample_rate);
  const DelaySet d = delays(sc, e);
  const double fs = sc.sample_rate;
  const double last_index = static_cast<double>(window.first_index + window.length - 1);

  EchoCube cube;
  cube.num_rx = sc.num_rx;
  cube.num_pulses = sc.num_pulses;
  cube.copies = copies;
  cube.sample_rate = fs;
  cube.window = window;
  cube.signals.assign(static_cast<std::size_t>(copies) * sc.nk(),
                      std::vector<cdouble>(static_cast<std::size_t>(window.length)));

  const auto tones = static_cast<int>(tx.tones.size());
  for (int n = 0; n < sc.num_rx; ++n) {
    for (int k = 0; k < sc.num_pulses; ++k) {
      const double tau = d.two_way(n, k);
      const double at = tau * fs;
      if (at < static_cast<double>(window.first_index) || at > last_index) {
        throw std::out_of_range("synthesize_echo: delay " + std::to_string(tau) +
                                " s lies outside the receive window");
      }
      // Carrier phase reduced to one cycle before scaling; f_c tau is ~1e5 cycles.
      const double carrier_cycles = sc.carrier_frequency * tau;
      const cdouble scale = xi * cis(-kTwoPi * (carrier_cycles - std::floor(carrier_cycles)));
      auto& y = cube.at(0, n, k);
      for (int j = 0; j < window.length; ++j) {
        const double u = (window.first_index + j) / fs - tau;
        const cdouble env = pulse(u);
        if (env == cdouble{}) continue;
        cdouble acc{};
        for (int i = 0; i < tones; ++i) acc += tx.tones(i) * cis(kTwoPi * i * tx.frequency_offset * u);
        y[j] = scale * env * acc;
      }
      for (int c = 1; c < copies; ++c) cube.at(c, n, k) = y;
    }
  }
  return cube;
}

void add_noise(const Scenario& sc, EchoCube& cube, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(sc.noise_power / 2.0));
  for (auto& y : cube.signals) {
    for (auto& v : y) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      v += cdouble(re, im);
    }
  }
  cube.noisy = true;
}

EchoCube noise_cube(const Scenario& sc, const ReceiveWindow& window, int copies, std::mt19937_64& rng) {
  EchoCube cube;
  cube.num_rx = sc.num_rx;
  cube.num_pulses = sc.num_pulses;
  cube.copies = copies;
  cube.sample_rate = sc.sample_rate;
  cube.window = window;
  cube.signals.assign(static_cast<std::size_t>(copies) * sc.nk(),
                      std::vector<cdouble>(static_cast<std::size_t>(window.length)));
  add_noise(sc, cube, rng);
  return cube;
}

double ChannelGrid::range_of(long long bin) const {
  return kSpeedOfLight * static_cast<double>(window.first_index + bin) / (2.0 * sample_rate);
}

std::vector<cdouble> matched_filter(const std::vector<cdouble>& x, const std::vector<cdouble>& tmpl,
                                    int centre) {
  const auto ns = static_cast<std::ptrdiff_t>(tmpl.size());
  std::vector<cdouble> h(tmpl.size());
  for (std::ptrdiff_t q = 0; q < ns; ++q) h[q] = std::conj(tmpl[ns - 1 - q]);
  const std::vector<cdouble> full = fft_convolve(x, h);
  const std::ptrdiff_t offset = ns - 1 - centre;
  std::vector<cdouble> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = full[static_cast<std::size_t>(offset) + i];
  return out;
}

namespace {

ChannelGrid empty_grid(const EchoCube& cube, int channels) {
  ChannelGrid g;
  g.num_channels = channels;
  g.num_rx = cube.num_rx;
  g.num_pulses = cube.num_pulses;
  g.sample_rate = cube.sample_rate;
  g.window = cube.window;
  g.z.resize(static_cast<std::size_t>(channels) * cube.num_rx * cube.num_pulses);
  return g;
}

int copy_for(const EchoCube& cube, int m) { return cube.copies > 1 ? m % cube.copies : 0; }

ChannelGrid mix(const Scenario& sc, const EchoCube& cube) {
  const int channels = sc.num_tx;
  ChannelGrid g = empty_grid(cube, channels);
  const double fs = cube.sample_rate;
  std::vector<std::vector<cdouble>> rot(static_cast<std::size_t>(channels),
                                        std::vector<cdouble>(static_cast<std::size_t>(cube.window.length)));
  for (int m = 0; m < channels; ++m) {
    for (int j = 0; j < cube.window.length; ++j) {
      // Phase reduced modulo one cycle: m delta_f t can reach thousands of cycles.
      const double cycles = m * sc.frequency_offset * ((cube.window.first_index + j) / fs);
      rot[m][j] = cis(-kTwoPi * (cycles - std::floor(cycles)));
    }
  }
  for (int m = 0; m < channels; ++m) {
    for (int n = 0; n < cube.num_rx; ++n) {
      for (int k = 0; k < cube.num_pulses; ++k) {
        const auto& y = cube.at(copy_for(cube, m), n, k);
        auto& out = g.at(m, n, k);
        out.resize(y.size());
        for (std::size_t j = 0; j < y.size(); ++j) out[j] = y[j] * rot[m][j];
      }
    }
  }
  return g;
}

ChannelGrid filter_channels(const Scenario& sc, const ChannelGrid& in,
                            const std::vector<std::vector<cdouble>>& templates) {
  const int centre = LfmPulse(sc.pulse_width, sc.bandwidth, sc.sample_rate).centre();
  ChannelGrid out = in;
  parallel_for(in.z.size(), [&](std::size_t idx) {
    const ChannelIndex ch = unflatten(static_cast<Eigen::Index>(idx), in.num_rx, in.num_pulses);
    out.z[idx] = matched_filter(in.z[idx], templates[static_cast<std::size_t>(ch.m)], centre);
  });
  return out;
}

}  // namespace

ChannelGrid mfm(const Scenario& sc, const EchoCube& cube) { return mix(sc, cube); }

std::vector<cdouble> mmf_template(const Scenario& sc, int m) {
  const LfmPulse pulse(sc.pulse_width, sc.bandwidth, sc.sample_rate);
  std::vector<cdouble> p(static_cast<std::size_t>(pulse.samples()));
  for (int q = 0; q < pulse.samples(); ++q) {
    const double u = pulse.time(q);
    cdouble tones{};
    for (int i = 0; i < sc.num_tx; ++i) tones += cis(kTwoPi * (i - m) * sc.frequency_offset * u);
    p[q] = pulse(u) * tones;
  }
  return p;
}

ChannelGrid mmf(const Scenario& sc, const ChannelGrid& mixed) {
  std::vector<std::vector<cdouble>> templates;
  for (int m = 0; m < mixed.num_channels; ++m) templates.push_back(mmf_template(sc, m));
  return filter_channels(sc, mixed, templates);
}

ChannelGrid pa_chain(const Scenario& sc, const EchoCube& cube) {
  ChannelGrid g = empty_grid(cube, 1);
  for (int n = 0; n < cube.num_rx; ++n) {
    for (int k = 0; k < cube.num_pulses; ++k) g.at(0, n, k) = cube.at(0, n, k);
  }
  const std::vector<std::vector<cdouble>> tmpl{
      lfm_baseband(sc.pulse_width, sc.bandwidth, sc.sample_rate).samples};
  return filter_channels(sc, g, tmpl);
}

ChannelGrid fdamimo_chain(const Scenario& sc, const EchoCube& cube) {
  const ChannelGrid mixed = mix(sc, cube);
  const std::vector<cdouble> phi = lfm_baseband(sc.pulse_width, sc.bandwidth, sc.sample_rate).samples;
  return filter_channels(sc, mixed, std::vector<std::vector<cdouble>>(sc.num_tx, phi));
}

ChannelGrid cfda_chain(const Scenario& sc, const EchoCube& cube) { return mmf(sc, mfm(sc, cube)); }

Snapshot sample_peak(const Scenario& sc, const ChannelGrid& out, const PointEmitter& e, PeakMode mode,
                     Architecture arch, std::vector<long long>* bins) {
  const DelaySet d = delays(sc, e);
  Snapshot s;
  s.architecture = arch;
  s.data.resize(static_cast<Eigen::Index>(out.z.size()));
  if (bins) bins->assign(out.z.size(), 0);
  for (std::size_t idx = 0; idx < out.z.size(); ++idx) {
    const ChannelIndex ch = unflatten(static_cast<Eigen::Index>(idx), out.num_rx, out.num_pulses);
    const auto& z = out.z[idx];
    long long bin = 0;
    if (mode == PeakMode::at_known_delay) {
      bin = std::llround(d.two_way(ch.n, ch.k) * out.sample_rate) - out.window.first_index;
      if (bin < 0 || bin >= static_cast<long long>(z.size())) {
        throw std::out_of_range("sample_peak: emitter delay outside the output window");
      }
    } else {
      const auto it = std::max_element(z.begin(), z.end(),
                                       [](cdouble a, cdouble b) { return std::norm(a) < std::norm(b); });
      bin = it - z.begin();
    }
    s.data(static_cast<Eigen::Index>(idx)) = z[static_cast<std::size_t>(bin)];
    if (bins) (*bins)[idx] = bin;
    if (idx == 0) s.bin = bin;
  }
  return s;
}

Snapshot pa_receiver(const Scenario& sc, const EchoCube& cube, const PointEmitter& e, PeakMode mode) {
  return sample_peak(sc, pa_chain(sc, cube), e, mode, Architecture::pa);
}

Snapshot fdamimo_receiver(const Scenario& sc, const EchoCube& cube, const PointEmitter& e, PeakMode mode) {
  return sample_peak(sc, fdamimo_chain(sc, cube), e, mode, Architecture::fda_mimo);
}

Snapshot cfda_receiver(const Scenario& sc, const EchoCube& cube, const PointEmitter& e, PeakMode mode) {
  return sample_peak(sc, cfda_chain(sc, cube), e, mode, Architecture::cfda);
}

AmplitudeCoefficient amplitude_coefficient(const Scenario& sc, AmplitudeMethod method) {
  AmplitudeCoefficient out;
  out.method = method;
  out.frequency_offset = sc.frequency_offset;
  out.per_channel.resize(sc.num_tx);
  out.outside_regime = sc.num_tx > 1 && sc.frequency_offset >= sc.bandwidth / (sc.num_tx - 1);
  const int ns = sc.samples_per_pulse();

  if (method == AmplitudeMethod::spectral) {
    const LfmPulse pulse(sc.pulse_width, sc.bandwidth, sc.sample_rate);
    const std::size_t nfft = next_pow2(static_cast<std::size_t>(2 * ns));
    for (int m = 0; m < sc.num_tx; ++m) {
      // Spectrum of the channel-m template as a sum of shifted copies of the pulse spectrum.
      std::vector<cdouble> spectrum(nfft);
      for (int i = 0; i < sc.num_tx; ++i) {
        std::vector<cdouble> tone(nfft);
        for (int q = 0; q < ns; ++q) {
          const double u = pulse.time(q);
          tone[q] = pulse(u) * cis(kTwoPi * (i - m) * sc.frequency_offset * u);
        }
        fft_inplace(tone, false);
        for (std::size_t f = 0; f < nfft; ++f) spectrum[f] += tone[f];
      }
      for (auto& v : spectrum) v = std::norm(v);
      fft_inplace(spectrum, true);
      double peak = 0.0;
      for (const auto& v : spectrum) peak = std::max(peak, std::abs(v));
      peak /= static_cast<double>(nfft);
      out.per_channel(m) = std::sqrt(peak / ns);
    }
  } else {
    Scenario ref = sc;
    ref.num_rx = 1;
    ref.num_pulses = 1;
    // Broadside, stationary reference on an integer-sample delay.
    const long long index = std::llround(2.0 * 12e3 / kSpeedOfLight * sc.sample_rate);
    PointEmitter e;
    e.range = kSpeedOfLight * static_cast<double>(index) / (2.0 * sc.sample_rate);
    e.azimuth = kPi / 2.0;
    e.elevation = 0.0;
    e.doppler = 0.0;
    const TransmitDesign tx = transmit_design(ref, Architecture::cfda, e, e);
    const EchoCube cube = synthesize_echo(ref, tx, e, 1.0, default_window(ref, e.range));
    const ChannelGrid z = cfda_chain(ref, cube);
    for (int m = 0; m < sc.num_tx; ++m) {
      double peak = 0.0;
      for (const auto& v : z.at(m, 0, 0)) peak = std::max(peak, std::abs(v));
      out.per_channel(m) = std::sqrt(peak / ns);
    }
  }
  out.value = out.per_channel(0);
  out.spread = (out.per_channel.maxCoeff() - out.per_channel.minCoeff()) / out.value;
  return out;
}

SteeringModel make_model(const Scenario& sc, Architecture arch) {
  if (arch == Architecture::cfda) {
    return SteeringModel(sc, arch, amplitude_coefficient(sc, AmplitudeMethod::spectral).value);
  }
  return SteeringModel(sc, arch);
}

}  // namespace cfda
