#pragma once

#include <string>
#include <vector>

#include "cfda/interference.hpp"

namespace cfda {

/// One equidistant clutter ring of I patches.
struct ClutterRing {
  int index = 0;  // ambiguity number p
  double range = 0.0;
  double elevation = 0.0;
  std::vector<double> azimuths;
  std::vector<double> dopplers;
  /// Relative patch powers before CNR scaling.
  std::vector<double> weights;
};

struct ClutterModel {
  std::vector<ClutterRing> rings;  // p = 0..P
  double cnr = 1e5;                 // linear, tr(R_d) / (sigma_n^2 MNK)
  double cut_range = 0.0;
  double cut_elevation = 0.0;

  std::size_t patch_count() const;
};

struct ClutterOptions {
  int patches = 60;
  int ambiguities = 3;
  double cnr = 1e5;
  /// Patch Doppler uses each ring's own elevation instead of the CUT elevation.
  bool ring_elevation_doppler = false;
};

/// Rings at R_t + p R_u with theta_p = arcsin(H / R_p); patch Doppler
/// 2 v_a T / lambda cos(theta) cos(phi_i + psi); ring power ~ 1 / R_p^4.
ClutterModel build_clutter(const Scenario& sc, double cut_range, const ClutterOptions& opt);

/// MNK x I(P+1) matrix of patch responses, ring-major.
CMatrix clutter_columns(const SteeringModel& model, const ClutterModel& clutter);

/// Per-column powers scaled so that tr(R_c + sigma_n^2 I) / (sigma_n^2 MNK) equals the CNR.
Eigen::VectorXd patch_powers(const SteeringModel& model, const ClutterModel& clutter);

/// R_c + sigma_n^2 I
CovarianceEstimate clutter_covariance(const CMatrix& columns, const Eigen::VectorXd& powers, double noise_power);

/// r ⊗ 1_N ⊗ 1_K with r_m = exp(j 2 pi m 2 R delta_f / c).
CVector srdc_vector(const Scenario& sc, double cut_range);
/// Hadamard product x ∘ r_c; for covariances D R D^H with D = diag(r_c).
CVector apply_srdc(const CVector& x, const CVector& r);
CMatrix apply_srdc(const CMatrix& columns, const CVector& r);
CovarianceEstimate apply_srdc(const CovarianceEstimate& cov, const CVector& r);

/// R_d^{-1} t / (t^H R_d^{-1} t)
CVector strap_weights(const CVector& t, const CovarianceEstimate& rd);

/// Target snapshot at the CUT with the given normalized Doppler.
CVector cut_target(const SteeringModel& model, const ClutterModel& clutter, double azimuth, double doppler);

/// sigma_t^2 t^H R_d^{-1} t evaluated through STRAP weights.
double sdr_direct(const SteeringModel& model, const ClutterModel& clutter, const CVector& t, double snr_in);

/// Rank-one-per-patch approximation with Dirichlet kernels, ignoring
/// cross-patch coupling.
double sdr_closed_form(const SteeringModel& model, const ClutterModel& clutter, double target_azimuth,
                       double target_doppler, double snr_in);

enum class StapMethod { strap, stap_3d, dw_stap };
std::string to_string(StapMethod method);
StapMethod parse_stap_method(const std::string& name);

struct SdrLossCurve {
  std::vector<double> doppler;
  std::vector<double> sdr_out;        // linear
  std::vector<double> loss_db;        // SDR_o / SDR_i
  std::vector<double> normalized_db;  // SDR_o / clutter-free output
};

/// SDR loss over a Doppler grid with SDR_i = SNR_in / (1 + CNR).
/// dw_stap computes weights from a covariance whose ring-p patches carry the
/// ring-0 Doppler of the same azimuth and scores them against the true R_d.
SdrLossCurve sdr_loss_curve(const SteeringModel& model, const ClutterModel& clutter, double target_azimuth,
                            const std::vector<double>& doppler_grid, StapMethod method, bool srdc,
                            double snr_in);

/// Contiguous runs (circular) of values more than depth_db below the maximum.
int count_notches(const std::vector<double>& curve_db, double depth_db);

/// Fourier clutter power seen by a target-direction scan vector, in dB:
/// (sum_w sigma_w |s^H u_w|^2) / |s|^2 + sigma_n^2, with the model rebuilt per CUT range.
Eigen::MatrixXd clutter_spectrum(const SteeringModel& model, const ClutterOptions& opt, double azimuth,
                                 const std::vector<double>& cut_ranges, const std::vector<double>& doppler_grid);

}  // namespace cfda
