#include "cfda/interference.hpp"

#include <algorithm>

namespace cfda {

JammerScene make_jammer_scene(const Scenario& sc, const PointEmitter& target, double jammer_range,
                              double snr_in, double inr) {
  if (!(jammer_range > 0.0)) throw std::invalid_argument("jammer range must be > 0");
  JammerScene scene;
  scene.target = target;
  scene.jammer = target;
  scene.jammer.range = jammer_range;
  scene.jammer.kind = EmitterKind::jammer;
  scene.jammer.doppler = doppler_frequency(sc, target);
  scene.snr_in = snr_in;
  scene.inr = inr;
  return scene;
}

Snapshot target_snapshot(const SteeringModel& model, const JammerScene& scene) {
  return ideal_snapshot(model, scene.target, 1.0);
}

Snapshot jammer_snapshot(const SteeringModel& model, const JammerScene& scene) {
  return ideal_snapshot(model, scene.jammer, 1.0);
}

CovarianceEstimate jamming_covariance(const SteeringModel& model, const JammerScene& scene) {
  const double noise = model.scenario().noise_power;
  const CVector j = jammer_snapshot(model, scene).data;
  HermitianMatrix r = HermitianMatrix::identity(j.size(), noise);
  r.add_outer(j, scene.inr * noise);
  return {std::move(r), CovarianceSource::jamming_noise, 0.0};
}

CovarianceEstimate sample_covariance(const std::vector<CVector>& snapshots, double loading) {
  if (snapshots.empty()) throw std::invalid_argument("sample_covariance: no snapshots");
  const Eigen::Index dim = snapshots.front().size();
  CMatrix acc = CMatrix::Zero(dim, dim);
  for (const auto& x : snapshots) acc.noalias() += x * x.adjoint();
  acc /= static_cast<double>(snapshots.size());
  return {HermitianMatrix(std::move(acc)), CovarianceSource::sample, loading};
}

CVector mvdr_weights(const CVector& t, const CovarianceEstimate& r) {
  const HermitianSolver solver(r.matrix, r.diagonal_loading);
  const CVector rt = solver.solve(t);
  return rt / t.dot(rt);
}

double sinr_closed_form(const SteeringModel& model, const JammerScene& scene) {
  const Scenario& sc = model.scenario();
  const double m = sc.num_tx;
  const double nk = sc.nk();
  const double dr = scene.jammer.range - scene.target.range;
  const double phi = dirichlet(sc.num_tx, 2.0 * dr * sc.frequency_offset / kSpeedOfLight);

  double gain = 0.0;
  double cross = 0.0;
  switch (model.architecture()) {
    case Architecture::pa:
      gain = m * m * nk;
      cross = gain * gain;
      break;
    case Architecture::mimo:
      gain = m * nk;
      cross = gain * gain;
      break;
    case Architecture::fda_mimo:
      gain = m * nk;
      cross = nk * nk * phi * phi;
      break;
    case Architecture::cfda: {
      const double e2 = model.coefficient() * model.coefficient();
      gain = e2 * m * nk;
      cross = e2 * e2 * nk * nk * phi * phi;
      break;
    }
  }
  return scene.snr_in * (gain - scene.inr * cross / (1.0 + scene.inr * gain));
}

double sinr_direct(const SteeringModel& model, const JammerScene& scene) {
  const CVector t = target_snapshot(model, scene).data;
  const CovarianceEstimate r = jamming_covariance(model, scene);
  const CVector w = mvdr_weights(t, r);
  const double signal = std::norm(w.dot(t)) * scene.snr_in * model.scenario().noise_power;
  const double disturbance = w.dot(r.matrix.matrix() * w).real();
  return signal / disturbance;
}

long long sra_count(const Scenario& sc) {
  return static_cast<long long>(std::floor(sc.frequency_offset * sc.pri + 1e-9));
}

std::vector<double> sra_ranges(const Scenario& sc, double target_range, double width) {
  std::vector<double> out;
  if (sc.frequency_offset <= 0.0) return out;
  const double spacing = kSpeedOfLight / (2.0 * sc.frequency_offset);
  const double half = width / 2.0;
  for (long long l = 1; l * spacing <= half * (1.0 + 1e-12); ++l) {
    const double below = target_range - l * spacing;
    if (below > 0.0) out.push_back(below);
    out.push_back(target_range + l * spacing);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CaponMap capon_map(const SteeringModel& model, const JammerScene& scene, const std::vector<double>& ranges,
                   const std::vector<double>& azimuths) {
  const double noise = model.scenario().noise_power;
  const CVector t = target_snapshot(model, scene).data;
  const CVector j = jammer_snapshot(model, scene).data;
  HermitianMatrix q = HermitianMatrix::identity(t.size(), noise);
  q.add_outer(t, scene.snr_in * noise);
  q.add_outer(j, scene.inr * noise);
  const HermitianSolver solver(q);

  const double doppler = doppler_frequency(model.scenario(), scene.target);
  CaponMap map;
  map.ranges = ranges;
  map.azimuths = azimuths;
  map.power_db.resize(static_cast<Eigen::Index>(ranges.size()), static_cast<Eigen::Index>(azimuths.size()));
  parallel_for(ranges.size(), [&](std::size_t r) {
    for (std::size_t a = 0; a < azimuths.size(); ++a) {
      const CVector s = model.response(azimuths[a], scene.target.elevation, doppler, ranges[r]);
      map.power_db(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(a)) =
          -db10(solver.inverse_quadratic(s));
    }
  });
  return map;
}

std::vector<MapPeak> capon_peaks(const CaponMap& map, double threshold_db, int merge_cells) {
  const Eigen::MatrixXd& p = map.power_db;
  std::vector<double> values(p.data(), p.data() + p.size());
  std::nth_element(values.begin(), values.begin() + values.size() / 2, values.end());
  const double floor_db = values[values.size() / 2] + threshold_db;

  std::vector<MapPeak> found;
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    for (Eigen::Index a = 0; a < p.cols(); ++a) {
      const double v = p(r, a);
      if (v <= floor_db) continue;
      bool is_max = true;
      for (Eigen::Index dr = -1; dr <= 1 && is_max; ++dr) {
        for (Eigen::Index da = -1; da <= 1; ++da) {
          const Eigen::Index rr = r + dr, aa = a + da;
          if ((dr == 0 && da == 0) || rr < 0 || aa < 0 || rr >= p.rows() || aa >= p.cols()) continue;
          if (p(rr, aa) > v) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) found.push_back({r, a, v});
    }
  }
  std::sort(found.begin(), found.end(), [](const MapPeak& x, const MapPeak& y) { return x.power_db > y.power_db; });
  std::vector<MapPeak> kept;
  for (const auto& cand : found) {
    const bool near = std::any_of(kept.begin(), kept.end(), [&](const MapPeak& k) {
      return std::abs(k.range_index - cand.range_index) <= merge_cells &&
             std::abs(k.azimuth_index - cand.azimuth_index) <= merge_cells;
    });
    if (!near) kept.push_back(cand);
  }
  return kept;
}

}  // namespace cfda
