#include "cfda/clutter.hpp"

#include <algorithm>

namespace cfda {

std::size_t ClutterModel::patch_count() const {
  std::size_t count = 0;
  for (const auto& ring : rings) count += ring.azimuths.size();
  return count;
}

ClutterModel build_clutter(const Scenario& sc, double cut_range, const ClutterOptions& opt) {
  if (opt.patches < 1) throw std::invalid_argument("clutter: I must be >= 1");
  if (opt.ambiguities < 0) throw std::invalid_argument("clutter: P must be >= 0");
  if (opt.cnr < 1.0) throw std::invalid_argument("clutter: CNR must be >= 0 dB (it includes the noise)");

  ClutterModel model;
  model.cnr = opt.cnr;
  model.cut_range = cut_range;
  model.cut_elevation = elevation_from_range(sc, cut_range);
  const double doppler_scale = 2.0 * sc.platform_velocity * sc.pri / sc.wavelength();

  for (int p = 0; p <= opt.ambiguities; ++p) {
    ClutterRing ring;
    ring.index = p;
    ring.range = cut_range + p * sc.unambiguous_range();
    ring.elevation = elevation_from_range(sc, ring.range);
    const double doppler_elevation = opt.ring_elevation_doppler ? ring.elevation : model.cut_elevation;
    const double weight = 1.0 / std::pow(ring.range / cut_range, 4);
    for (int i = 0; i < opt.patches; ++i) {
      const double az = -kPi + (i + 0.5) * kTwoPi / opt.patches;
      ring.azimuths.push_back(az);
      ring.dopplers.push_back(doppler_scale * std::cos(doppler_elevation) * std::cos(az + sc.yaw));
      ring.weights.push_back(weight);
    }
    model.rings.push_back(std::move(ring));
  }
  return model;
}

CMatrix clutter_columns(const SteeringModel& model, const ClutterModel& clutter) {
  CMatrix cols(model.dimension(), static_cast<Eigen::Index>(clutter.patch_count()));
  Eigen::Index c = 0;
  for (const auto& ring : clutter.rings) {
    for (std::size_t i = 0; i < ring.azimuths.size(); ++i, ++c) {
      cols.col(c) = model.response(ring.azimuths[i], ring.elevation, ring.dopplers[i], ring.range);
    }
  }
  return cols;
}

Eigen::VectorXd patch_powers(const SteeringModel& model, const ClutterModel& clutter) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(clutter.patch_count()));
  Eigen::Index c = 0;
  for (const auto& ring : clutter.rings) {
    for (double v : ring.weights) w(c++) = v;
  }
  const double noise = model.scenario().noise_power;
  const double norm2 = model.coefficient() * model.coefficient() * static_cast<double>(model.dimension());
  const double target_trace = (clutter.cnr - 1.0) * noise * static_cast<double>(model.dimension());
  return w * (target_trace / (norm2 * w.sum()));
}

CovarianceEstimate clutter_covariance(const CMatrix& columns, const Eigen::VectorXd& powers, double noise_power) {
  if (powers.size() != columns.cols()) {
    throw std::invalid_argument("clutter_covariance: power count differs from column count");
  }
  const CMatrix scaled = columns * powers.cwiseSqrt().asDiagonal();
  CMatrix r = CMatrix::Zero(columns.rows(), columns.rows());
  r.selfadjointView<Eigen::Lower>().rankUpdate(scaled);
  CMatrix full = r.selfadjointView<Eigen::Lower>();
  full.diagonal().array() += noise_power;
  return {HermitianMatrix(std::move(full)), CovarianceSource::clutter_noise, 0.0};
}

CVector srdc_vector(const Scenario& sc, double cut_range) {
  const CVector r = range_steering(sc, cut_range).conjugate();
  return kron(kron(r, CVector::Ones(sc.num_rx)), CVector::Ones(sc.num_pulses));
}

CVector apply_srdc(const CVector& x, const CVector& r) {
  if (x.size() != r.size()) throw std::invalid_argument("apply_srdc: length mismatch");
  return x.cwiseProduct(r);
}

CMatrix apply_srdc(const CMatrix& columns, const CVector& r) {
  if (columns.rows() != r.size()) throw std::invalid_argument("apply_srdc: length mismatch");
  return r.asDiagonal() * columns;
}

CovarianceEstimate apply_srdc(const CovarianceEstimate& cov, const CVector& r) {
  if (cov.matrix.dim() != r.size()) throw std::invalid_argument("apply_srdc: length mismatch");
  CMatrix m = r.asDiagonal() * cov.matrix.matrix() * r.conjugate().asDiagonal();
  return {HermitianMatrix(std::move(m)), cov.source, cov.diagonal_loading};
}

CVector strap_weights(const CVector& t, const CovarianceEstimate& rd) { return mvdr_weights(t, rd); }

CVector cut_target(const SteeringModel& model, const ClutterModel& clutter, double azimuth, double doppler) {
  return model.response(azimuth, clutter.cut_elevation, doppler, clutter.cut_range);
}

namespace {

double output_sdr(const CVector& w, const CVector& t, const CMatrix& rd, double signal_power) {
  return std::norm(w.dot(t)) * signal_power / w.dot(rd * w).real();
}

CovarianceEstimate assemble(const SteeringModel& model, const ClutterModel& clutter) {
  return clutter_covariance(clutter_columns(model, clutter), patch_powers(model, clutter),
                            model.scenario().noise_power);
}

}  // namespace

double sdr_direct(const SteeringModel& model, const ClutterModel& clutter, const CVector& t, double snr_in) {
  const CovarianceEstimate rd = assemble(model, clutter);
  const CVector w = strap_weights(t, rd);
  return output_sdr(w, t, rd.matrix.matrix(), snr_in * model.scenario().noise_power);
}

double sdr_closed_form(const SteeringModel& model, const ClutterModel& clutter, double target_azimuth,
                       double target_doppler, double snr_in) {
  const Scenario& sc = model.scenario();
  const double noise = sc.noise_power;
  const double gain2 = model.coefficient() * model.coefficient();
  const double g = gain2 * static_cast<double>(model.dimension());
  const double t_spatial = spatial_frequency(sc, target_azimuth, clutter.cut_elevation);
  const Eigen::VectorXd powers = patch_powers(model, clutter);

  double removed = 0.0;
  Eigen::Index c = 0;
  for (const auto& ring : clutter.rings) {
    const double range_offset = range_frequency(sc, ring.range) - range_frequency(sc, clutter.cut_range);
    for (std::size_t i = 0; i < ring.azimuths.size(); ++i, ++c) {
      const double spatial = spatial_frequency(sc, ring.azimuths[i], ring.elevation) - t_spatial;
      const double k_rx = dirichlet(sc.num_rx, spatial);
      const double k_dop = dirichlet(sc.num_pulses, ring.dopplers[i] - target_doppler);
      double k_tx = 1.0;
      double scale = 1.0;
      switch (model.architecture()) {
        case Architecture::pa:
          scale = gain2 * gain2;
          break;
        case Architecture::mimo:
          k_tx = dirichlet(sc.num_tx, spatial);
          break;
        case Architecture::fda_mimo:
          k_tx = dirichlet(sc.num_tx, spatial + range_offset);
          break;
        case Architecture::cfda:
          k_tx = dirichlet(sc.num_tx, range_offset);
          scale = gain2 * gain2;
          break;
      }
      const double overlap = scale * k_tx * k_tx * k_rx * k_rx * k_dop * k_dop;
      const double sigma = powers(c);
      removed += sigma * overlap / (noise + sigma * g);
    }
  }
  return snr_in * (g - removed);
}

std::string to_string(StapMethod method) {
  switch (method) {
    case StapMethod::strap: return "strap";
    case StapMethod::stap_3d: return "3d_stap";
    case StapMethod::dw_stap: return "dw_stap";
  }
  return "unknown";
}

StapMethod parse_stap_method(const std::string& name) {
  if (name == "strap") return StapMethod::strap;
  if (name == "3d_stap" || name == "3d-stap") return StapMethod::stap_3d;
  if (name == "dw_stap" || name == "dw-stap") return StapMethod::dw_stap;
  throw std::invalid_argument("unknown STAP method '" + name + "' (expected strap, 3d_stap or dw_stap)");
}

SdrLossCurve sdr_loss_curve(const SteeringModel& model, const ClutterModel& clutter, double target_azimuth,
                            const std::vector<double>& doppler_grid, StapMethod method, bool srdc,
                            double snr_in) {
  if (srdc && model.architecture() == Architecture::pa) {
    throw std::invalid_argument("sdr_loss_curve: SRDC needs a transmit dimension");
  }
  const Scenario& sc = model.scenario();
  const double signal_power = snr_in * sc.noise_power;

  CovarianceEstimate truth = assemble(model, clutter);
  CovarianceEstimate design = truth;
  if (method == StapMethod::dw_stap) {
    ClutterModel warped = clutter;
    for (auto& ring : warped.rings) ring.dopplers = clutter.rings.front().dopplers;
    design = clutter_covariance(clutter_columns(model, warped), patch_powers(model, clutter), sc.noise_power);
  }
  CVector r;
  if (srdc) {
    r = srdc_vector(sc, clutter.cut_range);
    truth = apply_srdc(truth, r);
    design = apply_srdc(design, r);
  }
  const HermitianSolver solver(design.matrix, design.diagonal_loading);
  const double sdr_in = snr_in / (1.0 + clutter.cnr);

  SdrLossCurve curve;
  curve.doppler = doppler_grid;
  const std::size_t count = doppler_grid.size();
  curve.sdr_out.resize(count);
  curve.loss_db.resize(count);
  curve.normalized_db.resize(count);
  parallel_for(count, [&](std::size_t i) {
    CVector t = cut_target(model, clutter, target_azimuth, doppler_grid[i]);
    if (srdc) t = apply_srdc(t, r);
    CVector w = solver.solve(t);
    w /= t.dot(w);
    const double sdr = output_sdr(w, t, truth.matrix.matrix(), signal_power);
    curve.sdr_out[i] = sdr;
    curve.loss_db[i] = db10(sdr / sdr_in);
    curve.normalized_db[i] = db10(sdr * sc.noise_power / (signal_power * t.squaredNorm()));
  });
  return curve;
}

int count_notches(const std::vector<double>& curve_db, double depth_db) {
  if (curve_db.empty()) return 0;
  const double limit = *std::max_element(curve_db.begin(), curve_db.end()) - depth_db;
  const std::size_t n = curve_db.size();
  int runs = 0;
  bool all_below = true;
  for (std::size_t i = 0; i < n; ++i) {
    const bool below = curve_db[i] < limit;
    const bool prev = curve_db[(i + n - 1) % n] < limit;
    all_below = all_below && below;
    if (below && !prev) ++runs;
  }
  return all_below ? 1 : runs;
}

Eigen::MatrixXd clutter_spectrum(const SteeringModel& model, const ClutterOptions& opt, double azimuth,
                                 const std::vector<double>& cut_ranges, const std::vector<double>& doppler_grid) {
  const Scenario& sc = model.scenario();
  Eigen::MatrixXd out(static_cast<Eigen::Index>(cut_ranges.size()), static_cast<Eigen::Index>(doppler_grid.size()));
  parallel_for(cut_ranges.size(), [&](std::size_t b) {
    const ClutterModel clutter = build_clutter(sc, cut_ranges[b], opt);
    const Eigen::VectorXd powers = patch_powers(model, clutter);
    std::vector<SteeringModel::Factors> patches;
    patches.reserve(clutter.patch_count());
    for (const auto& ring : clutter.rings) {
      for (std::size_t i = 0; i < ring.azimuths.size(); ++i) {
        patches.push_back(model.factors(ring.azimuths[i], ring.elevation, ring.dopplers[i], ring.range));
      }
    }
    for (std::size_t d = 0; d < doppler_grid.size(); ++d) {
      const auto s = model.factors(azimuth, clutter.cut_elevation, doppler_grid[d], clutter.cut_range);
      double s_norm2 = s.gain * s.gain * s.receive.squaredNorm() * s.doppler.squaredNorm();
      if (s.transmit.size()) s_norm2 *= s.transmit.squaredNorm();
      double power = 0.0;
      for (std::size_t w = 0; w < patches.size(); ++w) {
        const auto& u = patches[w];
        cdouble ip = s.gain * u.gain * s.receive.dot(u.receive) * s.doppler.dot(u.doppler);
        if (s.transmit.size()) ip *= s.transmit.dot(u.transmit);
        power += powers(static_cast<Eigen::Index>(w)) * std::norm(ip);
      }
      out(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(d)) = db10(power / s_norm2 + sc.noise_power);
    }
  });
  return out;
}

}  // namespace cfda
