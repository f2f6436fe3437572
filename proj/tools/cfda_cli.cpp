#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cfda/experiments.hpp"

using namespace cfda;
using nlohmann::json;

namespace {

struct Options {
  std::string scenario;
  std::vector<std::string> arch;
  std::vector<double> delta_f;
  std::string out;
  std::optional<std::uint64_t> seed;
  int trials = 200;
  bool fig_scale = false;
  std::string method = "strap";
  std::string srdc = "off";
};

std::vector<Architecture> architectures(const Options& o, std::vector<std::string> fallback) {
  const auto& names = o.arch.empty() ? fallback : o.arch;
  std::vector<Architecture> out;
  for (const auto& n : names) out.push_back(parse_architecture(n));
  return out;
}

std::vector<std::optional<double>> offsets(const Options& o) {
  if (o.delta_f.empty()) return {std::nullopt};
  return {o.delta_f.begin(), o.delta_f.end()};
}

std::filesystem::path output_path(const Options& o, const std::string& experiment) {
  return o.out.empty() ? std::filesystem::path(experiment + ".csv") : std::filesystem::path(o.out);
}

std::filesystem::path suffixed(const std::filesystem::path& base, Architecture arch, double delta_f, bool needed) {
  if (!needed) return base;
  std::filesystem::path p = base;
  p.replace_filename(base.stem().string() + "_" + to_string(arch) + "_" + format_number(delta_f) +
                     base.extension().string());
  return p;
}

void write_outputs(const std::filesystem::path& csv, const Table& table, json sidecar, const Configuration& cfg) {
  if (csv.has_parent_path()) std::filesystem::create_directories(csv.parent_path());
  table.write_csv(csv.string());
  sidecar["scenario"] = json::parse(config_to_json(cfg));
  sidecar["rows"] = table.rows.size();
  std::filesystem::path side = csv;
  side.replace_extension(".json");
  std::ofstream(side, std::ios::binary) << sidecar.dump(2) << '\n';
  std::cout << csv.string() << '\n';
}

json base_sidecar(const std::string& experiment, const Options& o) {
  return {{"experiment", experiment}, {"scenario_file", o.scenario}, {"fig_scale", o.fig_scale}};
}

int run_mf_profile(const Options& o, const Configuration& cfg) {
  const auto archs = architectures(o, {"pa"});
  const auto dfs = offsets(o);
  const bool many = archs.size() * dfs.size() > 1;
  for (Architecture arch : archs) {
    for (const auto& df : dfs) {
      const double resolved = scenario_for(cfg, arch, df).frequency_offset;
      const ProfileResult r = mf_profile(cfg, arch, df);
      json side = base_sidecar("mf-profile", o);
      side["architecture"] = to_string(arch);
      side["delta_f"] = resolved;
      side["peak_magnitude"] = r.peak_magnitude;
      side["peak_range"] = r.peak_range;
      write_outputs(suffixed(output_path(o, "mf_profile"), arch, resolved, many), r.table, side, cfg);
    }
  }
  return 0;
}

int run_gain_sweep(const Options& o, const Configuration& cfg) {
  const std::vector<double> dfs = o.delta_f.empty() ? std::vector<double>{0.0, 10e3, 50e3, 100e3} : o.delta_f;
  const std::uint64_t seed = o.seed.value_or(cfg.scenario.rng_seed);
  const GainSweep sweep = gain_sweep(cfg, dfs, o.trials, seed);
  json side = base_sidecar("gain-sweep", o);
  side["delta_f"] = dfs;
  side["seed"] = seed;
  side["trials"] = o.trials;
  write_outputs(output_path(o, "gain_sweep"), sweep.table, side, cfg);
  return 0;
}

int run_sinr_sweep(const Options& o, const Configuration& cfg) {
  const auto archs = architectures(o, {"pa", "mimo", "fda-mimo", "c-fda"});
  const auto points = sinr_sweep(cfg, archs, o.delta_f, default_delta_r(cfg));
  json side = base_sidecar("sinr-sweep", o);
  side["architectures"] = json::array();
  for (Architecture a : archs) side["architectures"].push_back(to_string(a));
  side["delta_f"] = o.delta_f;
  write_outputs(output_path(o, "sinr_sweep"), sinr_table(points), side, cfg);
  return 0;
}

int run_capon_map(const Options& o, const Configuration& cfg) {
  const auto archs = architectures(o, {"c-fda"});
  const auto dfs = offsets(o);
  const bool many = archs.size() * dfs.size() > 1;
  for (Architecture arch : archs) {
    for (const auto& df : dfs) {
      const double resolved = scenario_for(cfg, arch, df).frequency_offset;
      const CaponMap map = run_capon(cfg, arch, df);
      json side = base_sidecar("capon-map", o);
      side["architecture"] = to_string(arch);
      side["delta_f"] = resolved;
      side["peaks"] = json::array();
      for (const MapPeak& p : capon_peaks(map, 10.0)) {
        side["peaks"].push_back({{"range_m", map.ranges[static_cast<std::size_t>(p.range_index)]},
                                 {"azimuth_deg", map.azimuths[static_cast<std::size_t>(p.azimuth_index)] * 180.0 / kPi},
                                 {"power_dB", p.power_db}});
      }
      write_outputs(suffixed(output_path(o, "capon_map"), arch, resolved, many), capon_table(map), side, cfg);
    }
  }
  return 0;
}

int run_clutter_spectrum(const Options& o, const Configuration& cfg) {
  const auto archs = architectures(o, {"c-fda"});
  const auto dfs = offsets(o);
  const bool many = archs.size() * dfs.size() > 1;
  for (Architecture arch : archs) {
    for (const auto& df : dfs) {
      const double resolved = scenario_for(cfg, arch, df).frequency_offset;
      json side = base_sidecar("clutter-spectrum", o);
      side["architecture"] = to_string(arch);
      side["delta_f"] = resolved;
      write_outputs(suffixed(output_path(o, "clutter_spectrum"), arch, resolved, many),
                    clutter_spectrum_table(cfg, arch, df), side, cfg);
    }
  }
  return 0;
}

int run_sdr_loss(const Options& o, const Configuration& cfg) {
  const auto archs = architectures(o, {"fda-mimo", "c-fda"});
  const StapMethod method = parse_stap_method(o.method);
  std::vector<bool> srdc_modes;
  if (o.srdc == "off") srdc_modes = {false};
  else if (o.srdc == "on") srdc_modes = {true};
  else srdc_modes = {false, true};
  std::vector<SdrLossRun> runs;
  for (Architecture arch : archs) {
    for (const auto& df : offsets(o)) {
      for (bool srdc : srdc_modes) runs.push_back(run_sdr_loss(cfg, arch, df, method, srdc));
    }
  }
  json side = base_sidecar("sdr-loss", o);
  side["method"] = to_string(method);
  side["srdc"] = o.srdc;
  side["runs"] = json::array();
  for (const auto& r : runs) {
    side["runs"].push_back({{"architecture", to_string(r.architecture)},
                            {"delta_f", r.delta_f},
                            {"srdc", r.srdc},
                            {"notches_10dB", count_notches(r.curve.loss_db, 10.0)}});
  }
  write_outputs(output_path(o, "sdr_loss"), sdr_loss_table(runs), side, cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent FDA radar simulator: emits CSV tables with a JSON sidecar"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--scenario", o.scenario, "JSON scenario file (defaults to desk scale)")->check(CLI::ExistingFile);
    sub->add_option("--arch", o.arch, "pa, mimo, fda-mimo or c-fda (repeatable or comma separated)")->delimiter(',');
    sub->add_option("--delta-f", o.delta_f, "Frequency offsets in Hz (comma separated)")->delimiter(',');
    sub->add_option("--out", o.out, "Output CSV path");
    sub->add_option("--seed", o.seed, "RNG seed (defaults to the scenario seed)");
    sub->add_option("--trials", o.trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
    sub->add_flag("--fig-scale", o.fig_scale, "f_s = 100 MHz, M = N = K = 8, I = 360, P = 5");
  };

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Options&, const Configuration&);
  };
  const std::vector<Command> commands = {
      {"mf-profile", "Noise-free matched-filter range profiles", run_mf_profile},
      {"gain-sweep", "Amplitude coefficient and Monte-Carlo array gain versus offset", run_gain_sweep},
      {"sinr-sweep", "Output SINR versus jammer range offset", run_sinr_sweep},
      {"capon-map", "Range-azimuth Capon spectrum with target and jammer", run_capon_map},
      {"clutter-spectrum", "Range-Doppler clutter spectrum", run_clutter_spectrum},
      {"sdr-loss", "SDR loss versus normalized Doppler", run_sdr_loss},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    common(sub);
    if (std::string(c.name) == "sdr-loss") {
      sub->add_option("--method", o.method, "strap, 3d-stap or dw-stap");
      sub->add_option("--srdc", o.srdc, "off, on or both")->check(CLI::IsMember({"off", "on", "both"}));
    }
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const Configuration cfg = load_config(o.scenario, o.fig_scale);
    for (std::size_t i = 0; i < commands.size(); ++i) {
      if (subs[i]->parsed()) return commands[i].run(o, cfg);
    }
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
