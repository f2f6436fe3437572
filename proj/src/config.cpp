#include "cfda/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

namespace cfda {

using nlohmann::json;

void Configuration::validate() const {
  scenario.validate();
  if (fda_mimo_offset < 0.0) throw std::invalid_argument("config: delta_f_fda_mimo must be >= 0");
  if (!(target_range > 0.0)) throw std::invalid_argument("config: R_t must be > 0");
  if (!(jammer_range > 0.0)) throw std::invalid_argument("config: R_j must be > 0");
  if (clutter_patches < 1) throw std::invalid_argument("config: I must be >= 1");
  if (ambiguities < 0) throw std::invalid_argument("config: P must be >= 0");
  if (cnr_db < 0.0) throw std::invalid_argument("config: CNR_dB must be >= 0");
  // Throws std::domain_error when the target sits below the platform.
  (void)elevation_from_range(scenario, target_range);
}

PointEmitter Configuration::target() const {
  PointEmitter e = emitter_at(scenario, target_range, target_azimuth, target_velocity, snr_in() * scenario.noise_power);
  e.doppler = target_doppler;
  return e;
}

ClutterOptions Configuration::clutter() const {
  ClutterOptions opt;
  opt.patches = clutter_patches;
  opt.ambiguities = ambiguities;
  opt.cnr = from_db10(cnr_db);
  return opt;
}

Configuration desk_defaults() { return Configuration{}; }

void apply_fig_scale(Configuration& cfg) {
  cfg.scenario.sample_rate = 100e6;
  cfg.scenario.num_tx = 8;
  cfg.scenario.num_rx = 8;
  cfg.scenario.num_pulses = 8;
  cfg.clutter_patches = 360;
  cfg.ambiguities = 5;
}

namespace {

constexpr double kDeg = kPi / 180.0;

double as_number(const std::string& key, const json& v) {
  if (!v.is_number()) throw std::invalid_argument("config: '" + key + "' must be a number");
  return v.get<double>();
}

long long as_integer(const std::string& key, const json& v) {
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw std::invalid_argument("config: '" + key + "' must be an integer");
  }
  return v.get<long long>();
}

int as_count(const std::string& key, const json& v) {
  const long long n = as_integer(key, v);
  if (n < 0 || n > 1 << 20) throw std::invalid_argument("config: '" + key + "' is out of range");
  return static_cast<int>(n);
}

using Setter = std::function<void(Configuration&, const std::string&, const json&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"f_c", [](Configuration& c, const std::string& k, const json& v) { c.scenario.carrier_frequency = as_number(k, v); }},
      {"delta_f", [](Configuration& c, const std::string& k, const json& v) { c.scenario.frequency_offset = as_number(k, v); }},
      {"delta_f_fda_mimo", [](Configuration& c, const std::string& k, const json& v) { c.fda_mimo_offset = as_number(k, v); }},
      {"B", [](Configuration& c, const std::string& k, const json& v) { c.scenario.bandwidth = as_number(k, v); }},
      {"T_p", [](Configuration& c, const std::string& k, const json& v) { c.scenario.pulse_width = as_number(k, v); }},
      {"T", [](Configuration& c, const std::string& k, const json& v) { c.scenario.pri = as_number(k, v); }},
      {"d", [](Configuration& c, const std::string& k, const json& v) { c.scenario.element_spacing = as_number(k, v); }},
      {"M", [](Configuration& c, const std::string& k, const json& v) { c.scenario.num_tx = as_count(k, v); }},
      {"N", [](Configuration& c, const std::string& k, const json& v) { c.scenario.num_rx = as_count(k, v); }},
      {"K", [](Configuration& c, const std::string& k, const json& v) { c.scenario.num_pulses = as_count(k, v); }},
      {"H", [](Configuration& c, const std::string& k, const json& v) { c.scenario.platform_height = as_number(k, v); }},
      {"v_a", [](Configuration& c, const std::string& k, const json& v) { c.scenario.platform_velocity = as_number(k, v); }},
      {"psi_deg", [](Configuration& c, const std::string& k, const json& v) { c.scenario.yaw = as_number(k, v) * kDeg; }},
      {"f_s", [](Configuration& c, const std::string& k, const json& v) { c.scenario.sample_rate = as_number(k, v); }},
      {"sigma_n2", [](Configuration& c, const std::string& k, const json& v) { c.scenario.noise_power = as_number(k, v); }},
      {"seed", [](Configuration& c, const std::string& k, const json& v) {
         const long long s = as_integer(k, v);
         if (s < 0) throw std::invalid_argument("config: 'seed' must be >= 0");
         c.scenario.rng_seed = static_cast<std::uint64_t>(s);
       }},
      {"phi_t_deg", [](Configuration& c, const std::string& k, const json& v) { c.target_azimuth = as_number(k, v) * kDeg; }},
      {"R_t", [](Configuration& c, const std::string& k, const json& v) { c.target_range = as_number(k, v); }},
      {"v_t", [](Configuration& c, const std::string& k, const json& v) { c.target_velocity = as_number(k, v); }},
      {"target_doppler", [](Configuration& c, const std::string& k, const json& v) {
         if (v.is_null()) c.target_doppler.reset();
         else c.target_doppler = as_number(k, v);
       }},
      {"I", [](Configuration& c, const std::string& k, const json& v) { c.clutter_patches = as_count(k, v); }},
      {"P", [](Configuration& c, const std::string& k, const json& v) { c.ambiguities = as_count(k, v); }},
      {"SNR_in_dB", [](Configuration& c, const std::string& k, const json& v) { c.snr_in_db = as_number(k, v); }},
      {"INR_dB", [](Configuration& c, const std::string& k, const json& v) { c.inr_db = as_number(k, v); }},
      {"CNR_dB", [](Configuration& c, const std::string& k, const json& v) { c.cnr_db = as_number(k, v); }},
      {"R_j", [](Configuration& c, const std::string& k, const json& v) { c.jammer_range = as_number(k, v); }},
  };
  return table;
}

}  // namespace

Configuration parse_config(const std::string& json_text, const Configuration& base) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config: top level must be a JSON object");
  Configuration cfg = base;
  const auto& table = setters();
  for (const auto& [key, value] : doc.items()) {
    const auto it = table.find(key);
    if (it == table.end()) throw std::invalid_argument("config: unknown key '" + key + "'");
    it->second(cfg, key, value);
  }
  return cfg;
}

Configuration load_config(const std::string& path, bool fig_scale) {
  Configuration cfg = desk_defaults();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    cfg = parse_config(text.str(), cfg);
  }
  if (fig_scale) apply_fig_scale(cfg);
  cfg.validate();
  return cfg;
}

std::string config_to_json(const Configuration& cfg) {
  const Scenario& sc = cfg.scenario;
  json doc = {
      {"f_c", sc.carrier_frequency},
      {"delta_f", sc.frequency_offset},
      {"delta_f_fda_mimo", cfg.fda_mimo_offset},
      {"B", sc.bandwidth},
      {"T_p", sc.pulse_width},
      {"T", sc.pri},
      {"d", sc.element_spacing},
      {"M", sc.num_tx},
      {"N", sc.num_rx},
      {"K", sc.num_pulses},
      {"H", sc.platform_height},
      {"v_a", sc.platform_velocity},
      {"psi_deg", sc.yaw / kDeg},
      {"f_s", sc.sample_rate},
      {"sigma_n2", sc.noise_power},
      {"seed", sc.rng_seed},
      {"phi_t_deg", cfg.target_azimuth / kDeg},
      {"R_t", cfg.target_range},
      {"v_t", cfg.target_velocity},
      {"target_doppler", cfg.target_doppler ? json(*cfg.target_doppler) : json(nullptr)},
      {"I", cfg.clutter_patches},
      {"P", cfg.ambiguities},
      {"SNR_in_dB", cfg.snr_in_db},
      {"INR_dB", cfg.inr_db},
      {"CNR_dB", cfg.cnr_db},
      {"R_j", cfg.jammer_range},
  };
  return doc.dump(2);
}

}  // namespace cfda
