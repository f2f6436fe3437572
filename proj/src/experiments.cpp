#include "cfda/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>

namespace cfda {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string Table::to_csv() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  emit(columns);
  for (const auto& row : rows) emit(row);
  return out;
}

void Table::write_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << to_csv();
}

Scenario scenario_for(const Configuration& cfg, Architecture arch, std::optional<double> delta_f) {
  Scenario sc = cfg.scenario;
  switch (arch) {
    case Architecture::pa:
    case Architecture::mimo:
      sc.frequency_offset = 0.0;
      break;
    case Architecture::fda_mimo:
      sc.frequency_offset = delta_f.value_or(cfg.fda_mimo_offset);
      break;
    case Architecture::cfda:
      sc.frequency_offset = delta_f.value_or(cfg.scenario.frequency_offset);
      break;
  }
  return sc;
}

std::vector<double> linspace(double first, double last, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[i] = count == 1 ? first : first + (last - first) * i / (count - 1);
  return out;
}

namespace {

ChannelGrid run_chain(const Scenario& sc, Architecture arch, const EchoCube& cube) {
  switch (arch) {
    case Architecture::pa: return pa_chain(sc, cube);
    case Architecture::fda_mimo: return fdamimo_chain(sc, cube);
    case Architecture::cfda: return cfda_chain(sc, cube);
    case Architecture::mimo: break;
  }
  throw std::invalid_argument("MIMO has no time-domain receiver; use pa, fda-mimo or c-fda");
}

}  // namespace

ProfileResult mf_profile(const Configuration& cfg, Architecture arch, std::optional<double> delta_f,
                         double half_width) {
  const Scenario sc = scenario_for(cfg, arch, delta_f);
  const PointEmitter target = cfg.target();
  const TransmitDesign tx = transmit_design(sc, arch, target, target);
  const EchoCube cube = synthesize_echo(sc, tx, target, 1.0, window_around(sc, target.range, half_width));
  const ChannelGrid out = run_chain(sc, arch, cube);

  ProfileResult result;
  result.table.columns = {"channel_m", "rx_n", "pulse_k", "range_m", "magnitude", "phase_rad"};
  for (int m = 0; m < out.num_channels; ++m) {
    const auto& z = out.at(m, 0, 0);
    for (std::size_t j = 0; j < z.size(); ++j) {
      const double mag = std::abs(z[j]);
      const double range = out.range_of(static_cast<long long>(j));
      if (mag > result.peak_magnitude) {
        result.peak_magnitude = mag;
        result.peak_range = range;
      }
      result.table.rows.push_back({std::to_string(m + 1), "1", "1", format_number(range), format_number(mag),
                                   format_number(std::arg(z[j]))});
    }
  }
  return result;
}

GainSweep gain_sweep(const Configuration& cfg, const std::vector<double>& offsets, int trials, std::uint64_t seed,
                     int lags) {
  if (trials < 1) throw std::invalid_argument("gain_sweep: trials must be >= 1");
  if (lags < 1) throw std::invalid_argument("gain_sweep: lags must be >= 1");
  const PointEmitter target = cfg.target();
  const Scenario sc_pa = scenario_for(cfg, Architecture::pa);
  const Scenario sc_fm = scenario_for(cfg, Architecture::fda_mimo);
  std::vector<Scenario> sc_cf;
  for (double df : offsets) sc_cf.push_back(scenario_for(cfg, Architecture::cfda, df));

  // Noise-free snapshots at the target delay act as the weight vectors.
  auto clean = [&](const Scenario& sc, Architecture arch) {
    const TransmitDesign tx = transmit_design(sc, arch, target, target);
    const EchoCube cube = synthesize_echo(sc, tx, target, 1.0, default_window(sc, target.range));
    return sample_peak(sc, run_chain(sc, arch, cube), target, PeakMode::at_known_delay, arch).data;
  };
  const CVector t_pa = clean(sc_pa, Architecture::pa);
  const CVector t_fm = clean(sc_fm, Architecture::fda_mimo);
  std::vector<CVector> t_cf;
  for (const auto& sc : sc_cf) t_cf.push_back(clean(sc, Architecture::cfda));

  const int ns = cfg.scenario.samples_per_pulse();
  const int guard = ns + 16;
  const ReceiveWindow window{0, lags * (ns + 1) + 2 * guard};
  const std::size_t series = 2 + offsets.size();

  auto project = [&](const CVector& t, const ChannelGrid& z, int lag) {
    const auto bin = static_cast<std::size_t>(guard + lag * (ns + 1));
    cdouble acc{};
    for (std::size_t idx = 0; idx < z.z.size(); ++idx) acc += std::conj(t(static_cast<Eigen::Index>(idx))) * z.z[idx][bin];
    return std::norm(acc);
  };

  std::vector<std::vector<double>> per_trial(static_cast<std::size_t>(trials), std::vector<double>(series, 0.0));
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), 0x9a1bu};
    std::mt19937_64 rng(seq);
    const EchoCube noise = noise_cube(cfg.scenario, window, cfg.scenario.num_tx, rng);
    const ChannelGrid z_pa = pa_chain(sc_pa, noise);
    const ChannelGrid z_fm = fdamimo_chain(sc_fm, noise);
    auto& acc = per_trial[trial];
    for (int l = 0; l < lags; ++l) {
      acc[0] += project(t_pa, z_pa, l);
      acc[1] += project(t_fm, z_fm, l);
    }
    for (std::size_t i = 0; i < sc_cf.size(); ++i) {
      const ChannelGrid z_cf = cfda_chain(sc_cf[i], noise);
      for (int l = 0; l < lags; ++l) acc[2 + i] += project(t_cf[i], z_cf, l);
    }
  });

  std::vector<double> mean(series, 0.0);
  for (const auto& row : per_trial) {
    for (std::size_t s = 0; s < series; ++s) mean[s] += row[s];
  }
  for (auto& v : mean) v /= static_cast<double>(trials) * lags;

  auto omega = [](const CVector& t, double noise_power) {
    const double g = t.squaredNorm();
    return g * g / noise_power;
  };

  GainSweep sweep;
  sweep.table.columns = {"delta_f_Hz", "E_spectral", "E_time_peak", "E_spread", "sqrt_M", "M",
                         "omega_pa",   "omega_fm",   "omega_cf",    "pa_over_fm", "cf_over_pa"};
  const double m = cfg.scenario.num_tx;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    GainPoint p;
    p.delta_f = offsets[i];
    const AmplitudeCoefficient spectral = amplitude_coefficient(sc_cf[i], AmplitudeMethod::spectral);
    p.e_spectral = spectral.value;
    p.e_spread = spectral.spread;
    p.e_time_peak = amplitude_coefficient(sc_cf[i], AmplitudeMethod::time_peak).value;
    p.omega_pa = omega(t_pa, mean[0]);
    p.omega_fm = omega(t_fm, mean[1]);
    p.omega_cf = omega(t_cf[i], mean[2 + i]);
    sweep.points.push_back(p);
    sweep.table.rows.push_back({format_number(p.delta_f), format_number(p.e_spectral), format_number(p.e_time_peak),
                                format_number(p.e_spread), format_number(std::sqrt(m)), format_number(m),
                                format_number(p.omega_pa), format_number(p.omega_fm), format_number(p.omega_cf),
                                format_number(p.omega_pa / p.omega_fm), format_number(p.omega_cf / p.omega_pa)});
  }
  return sweep;
}

std::vector<double> default_delta_r(const Configuration& cfg) {
  std::vector<double> grid;
  for (int i = -150; i <= 150; ++i) grid.push_back(10.0 * i);
  const double configured = cfg.jammer_range - cfg.target_range;
  if (std::find(grid.begin(), grid.end(), configured) == grid.end()) grid.push_back(configured);
  std::sort(grid.begin(), grid.end());
  return grid;
}

std::vector<SinrPoint> sinr_sweep(const Configuration& cfg, const std::vector<Architecture>& archs,
                                  const std::vector<double>& offsets, const std::vector<double>& delta_r) {
  std::vector<SinrPoint> out;
  const PointEmitter target = cfg.target();
  for (Architecture arch : archs) {
    std::vector<std::optional<double>> dfs;
    if (offsets.empty() || arch == Architecture::pa || arch == Architecture::mimo) dfs.push_back(std::nullopt);
    else dfs.assign(offsets.begin(), offsets.end());
    for (const auto& df : dfs) {
      const Scenario sc = scenario_for(cfg, arch, df);
      const SteeringModel model = make_model(sc, arch);
      for (double dr : delta_r) {
        if (target.range + dr <= 0.0) continue;
        const JammerScene scene = make_jammer_scene(sc, target, target.range + dr, cfg.snr_in(), cfg.inr());
        out.push_back({dr, arch, sc.frequency_offset, db10(sinr_closed_form(model, scene))});
      }
    }
  }
  return out;
}

Table sinr_table(const std::vector<SinrPoint>& points) {
  Table t;
  t.columns = {"delta_R_m", "architecture", "SINR_dB", "delta_f_Hz"};
  for (const auto& p : points) {
    t.rows.push_back({format_number(p.delta_r), to_string(p.architecture), format_number(p.sinr_db),
                      format_number(p.delta_f)});
  }
  return t;
}

CaponMap run_capon(const Configuration& cfg, Architecture arch, std::optional<double> delta_f,
                   std::vector<double> ranges, std::vector<double> azimuths) {
  if (ranges.empty()) ranges = linspace(11.5e3, 13e3, 100);
  if (azimuths.empty()) azimuths = linspace(-kPi / 6.0, kPi / 6.0, 61);
  const Scenario sc = scenario_for(cfg, arch, delta_f);
  const SteeringModel model = make_model(sc, arch);
  const JammerScene scene = make_jammer_scene(sc, cfg.target(), cfg.jammer_range, cfg.snr_in(), cfg.inr());
  return capon_map(model, scene, ranges, azimuths);
}

Table capon_table(const CaponMap& map) {
  Table t;
  t.columns = {"range_m", "azimuth_deg", "P_F_dB"};
  for (std::size_t r = 0; r < map.ranges.size(); ++r) {
    for (std::size_t a = 0; a < map.azimuths.size(); ++a) {
      t.rows.push_back({format_number(map.ranges[r]), format_number(map.azimuths[a] * 180.0 / kPi),
                        format_number(map.power_db(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(a)))});
    }
  }
  return t;
}

std::vector<double> doppler_grid(int count) {
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) grid[i] = -0.5 + static_cast<double>(i) / count;
  return grid;
}

Table clutter_spectrum_table(const Configuration& cfg, Architecture arch, std::optional<double> delta_f,
                             int range_bins, double bin_spacing, int doppler_bins) {
  const Scenario sc = scenario_for(cfg, arch, delta_f);
  const SteeringModel model = make_model(sc, arch);
  const double first = cfg.target_range - bin_spacing * (range_bins / 2);
  std::vector<double> ranges;
  for (int b = 0; b < range_bins; ++b) ranges.push_back(first + b * bin_spacing);
  const std::vector<double> dopplers = doppler_grid(doppler_bins);
  const Eigen::MatrixXd spectrum = clutter_spectrum(model, cfg.clutter(), cfg.target_azimuth, ranges, dopplers);

  Table t;
  t.columns = {"range_bin", "doppler_bin", "power_dB", "range_m", "doppler_normalized"};
  for (int b = 0; b < range_bins; ++b) {
    for (int d = 0; d < doppler_bins; ++d) {
      t.rows.push_back({std::to_string(b), std::to_string(d), format_number(spectrum(b, d)), format_number(ranges[b]),
                        format_number(dopplers[d])});
    }
  }
  return t;
}

SdrLossRun run_sdr_loss(const Configuration& cfg, Architecture arch, std::optional<double> delta_f, StapMethod method,
                        bool srdc, int doppler_bins) {
  const Scenario sc = scenario_for(cfg, arch, delta_f);
  const SteeringModel model = make_model(sc, arch);
  const ClutterModel clutter = build_clutter(sc, cfg.target_range, cfg.clutter());
  SdrLossRun run{arch, sc.frequency_offset, method, srdc, {}};
  run.curve = sdr_loss_curve(model, clutter, cfg.target_azimuth, doppler_grid(doppler_bins), method, srdc, cfg.snr_in());
  return run;
}

Table sdr_loss_table(const std::vector<SdrLossRun>& runs) {
  Table t;
  t.columns = {"doppler_normalized", "sdr_loss_dB",  "method",          "srdc_flag",
               "architecture",       "delta_f_Hz",   "sdr_loss_norm_dB"};
  for (const auto& run : runs) {
    for (std::size_t i = 0; i < run.curve.doppler.size(); ++i) {
      t.rows.push_back({format_number(run.curve.doppler[i]), format_number(run.curve.loss_db[i]), to_string(run.method),
                        run.srdc ? "1" : "0", to_string(run.architecture), format_number(run.delta_f),
                        format_number(run.curve.normalized_db[i])});
    }
  }
  return t;
}

}  // namespace cfda
