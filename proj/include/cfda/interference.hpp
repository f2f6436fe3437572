#pragma once

#include <vector>

#include "cfda/steering.hpp"

namespace cfda {

enum class CovarianceSource { jamming_noise, clutter_noise, target_jamming, sample };

struct CovarianceEstimate {
  HermitianMatrix matrix;
  CovarianceSource source = CovarianceSource::jamming_noise;
  double diagonal_loading = 0.0;
};

/// Mainlobe jammer sharing the target's direction and Doppler at another range.
struct JammerScene {
  PointEmitter target;
  PointEmitter jammer;
  double snr_in = 10.0;   // linear, sigma_t^2 / sigma_n^2
  double inr = 1000.0;    // linear, sigma_j^2 / sigma_n^2
};

/// Jammer copies the target's angles and Doppler; only the range differs.
JammerScene make_jammer_scene(const Scenario& sc, const PointEmitter& target, double jammer_range,
                              double snr_in, double inr);

Snapshot target_snapshot(const SteeringModel& model, const JammerScene& scene);
Snapshot jammer_snapshot(const SteeringModel& model, const JammerScene& scene);

/// sigma_j^2 j j^H + sigma_n^2 I
CovarianceEstimate jamming_covariance(const SteeringModel& model, const JammerScene& scene);

/// Average of s s^H over the given snapshots.
CovarianceEstimate sample_covariance(const std::vector<CVector>& snapshots, double loading = 0.0);

/// R^{-1} t / (t^H R^{-1} t). Throws NotPositiveDefinite when R (plus its loading)
/// cannot be factored.
CVector mvdr_weights(const CVector& t, const CovarianceEstimate& r);

/// SNR [g - INR c / (1 + INR g)] with g = |t|^2 and c = |t^H j|^2 written through
/// the range Dirichlet kernel.
double sinr_closed_form(const SteeringModel& model, const JammerScene& scene);

/// |w^H t|^2 sigma_t^2 / (w^H R_{j+n} w) with MVDR weights from the assembled covariance.
double sinr_direct(const SteeringModel& model, const JammerScene& scene);

/// Number of secondary ambiguous ranges within one unambiguous interval: floor(delta_f T).
long long sra_count(const Scenario& sc);

/// R_t +- L c / (2 delta_f), L >= 1, inside [R_t - width/2, R_t + width/2]; ascending.
std::vector<double> sra_ranges(const Scenario& sc, double target_range, double width);

struct CaponMap {
  std::vector<double> ranges;
  std::vector<double> azimuths;
  Eigen::MatrixXd power_db;  // ranges x azimuths
};

/// 1 / (s^H Q^{-1} s) in dB, Q = sigma_t^2 t t^H + sigma_j^2 j j^H + sigma_n^2 I.
/// The scan vector keeps the target's elevation and Doppler.
CaponMap capon_map(const SteeringModel& model, const JammerScene& scene, const std::vector<double>& ranges,
                   const std::vector<double>& azimuths);

struct MapPeak {
  Eigen::Index range_index;
  Eigen::Index azimuth_index;
  double power_db;
};

/// Local maxima (8-neighbourhood) more than threshold_db above the map median,
/// strongest first. Maxima within merge_cells of a stronger one are dropped.
std::vector<MapPeak> capon_peaks(const CaponMap& map, double threshold_db, int merge_cells = 2);

}  // namespace cfda
