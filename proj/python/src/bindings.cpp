#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cfda/experiments.hpp"

namespace py = pybind11;
using namespace cfda;

namespace {

Configuration configuration(const std::string& json_text, bool fig_scale) {
  Configuration cfg = parse_config(json_text.empty() ? "{}" : json_text);
  if (fig_scale) apply_fig_scale(cfg);
  cfg.validate();
  return cfg;
}

py::tuple table(const Table& t) { return py::make_tuple(t.columns, t.rows); }

}  // namespace

PYBIND11_MODULE(_cfda, m) {
  m.doc() = "Coherent FDA radar simulation core";

  py::register_exception<std::domain_error>(m, "InfeasibleGeometry", PyExc_ValueError);

  m.def("config_json", [](const std::string& text, bool fig_scale) { return config_to_json(configuration(text, fig_scale)); },
        py::arg("config") = "", py::arg("fig_scale") = false,
        "Resolved scenario as JSON, with defaults filled in");

  m.def(
      "amplitude_coefficient",
      [](const std::string& text, bool fig_scale, double delta_f, const std::string& method) {
        Scenario sc = configuration(text, fig_scale).scenario;
        sc.frequency_offset = delta_f;
        const AmplitudeCoefficient e = amplitude_coefficient(
            sc, method == "time_peak" ? AmplitudeMethod::time_peak : AmplitudeMethod::spectral);
        return py::make_tuple(e.value, e.spread);
      },
      py::arg("config"), py::arg("fig_scale"), py::arg("delta_f"), py::arg("method") = "spectral");

  m.def(
      "mf_profile",
      [](const std::string& text, bool fig_scale, const std::string& arch, std::optional<double> delta_f) {
        const ProfileResult r = mf_profile(configuration(text, fig_scale), parse_architecture(arch), delta_f);
        return py::make_tuple(table(r.table), r.peak_magnitude, r.peak_range);
      },
      py::arg("config"), py::arg("fig_scale"), py::arg("arch"), py::arg("delta_f") = py::none());

  m.def(
      "gain_sweep",
      [](const std::string& text, bool fig_scale, const std::vector<double>& offsets, int trials,
         std::optional<std::uint64_t> seed, int lags) {
        const Configuration cfg = configuration(text, fig_scale);
        GainSweep sweep;
        {
          py::gil_scoped_release release;
          sweep = gain_sweep(cfg, offsets, trials, seed.value_or(cfg.scenario.rng_seed), lags);
        }
        return table(sweep.table);
      },
      py::arg("config"), py::arg("fig_scale"), py::arg("offsets"), py::arg("trials"), py::arg("seed") = py::none(),
      py::arg("lags") = 20);

  m.def(
      "sinr_sweep",
      [](const std::string& text, bool fig_scale, const std::vector<std::string>& archs,
         const std::vector<double>& offsets, const std::vector<double>& delta_r) {
        const Configuration cfg = configuration(text, fig_scale);
        std::vector<Architecture> parsed;
        for (const auto& a : archs) parsed.push_back(parse_architecture(a));
        return table(sinr_table(sinr_sweep(cfg, parsed, offsets, delta_r.empty() ? default_delta_r(cfg) : delta_r)));
      },
      py::arg("config"), py::arg("fig_scale"), py::arg("archs"), py::arg("offsets") = std::vector<double>{},
      py::arg("delta_r") = std::vector<double>{});

  m.def(
      "capon_map",
      [](const std::string& text, bool fig_scale, const std::string& arch, std::optional<double> delta_f,
         std::vector<double> ranges, std::vector<double> azimuths) {
        const Configuration cfg = configuration(text, fig_scale);
        CaponMap map;
        {
          py::gil_scoped_release release;
          map = run_capon(cfg, parse_architecture(arch), delta_f, std::move(ranges), std::move(azimuths));
        }
        return py::make_tuple(map.ranges, map.azimuths, map.power_db);
      },
      py::arg("config"), py::arg("fig_scale"), py::arg("arch"), py::arg("delta_f") = py::none(),
      py::arg("ranges") = std::vector<double>{}, py::arg("azimuths") = std::vector<double>{});

  m.def(
      "clutter_spectrum",
      [](const std::string& text, bool fig_scale, const std::string& arch, std::optional<double> delta_f) {
        return table(clutter_spectrum_table(configuration(text, fig_scale), parse_architecture(arch), delta_f));
      },
      py::arg("config"), py::arg("fig_scale"), py::arg("arch"), py::arg("delta_f") = py::none());

  m.def(
      "sdr_loss",
      [](const std::string& text, bool fig_scale, const std::string& arch, std::optional<double> delta_f,
         const std::string& method, bool srdc, int bins) {
        const SdrLossRun r = run_sdr_loss(configuration(text, fig_scale), parse_architecture(arch), delta_f,
                                          parse_stap_method(method), srdc, bins);
        return py::make_tuple(r.curve.doppler, r.curve.loss_db, r.curve.normalized_db);
      },
      py::arg("config"), py::arg("fig_scale"), py::arg("arch"), py::arg("delta_f") = py::none(),
      py::arg("method") = "strap", py::arg("srdc") = false, py::arg("bins") = 200);

  m.def("count_notches", &count_notches, py::arg("loss_db"), py::arg("depth_db") = 10.0);
}
