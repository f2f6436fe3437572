#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace cfda {

using cdouble = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
/// Propagation speed used throughout (m/s).
inline constexpr double kSpeedOfLight = 3.0e8;

/// Raised when a matrix is not positive definite after diagonal loading.
class NotPositiveDefinite : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// e^{j*phase}
inline cdouble cis(double phase) { return {std::cos(phase), std::sin(phase)}; }

inline double db10(double linear) { return 10.0 * std::log10(linear); }
inline double from_db10(double db) { return std::pow(10.0, db / 10.0); }

/// Dense complex matrix with A = A^H enforced on construction.
///
/// The input may carry round-off asymmetry up to 1e-12 relative to its
/// largest entry; it is symmetrized as (A + A^H)/2. Anything larger throws.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(CMatrix a);

  static HermitianMatrix identity(Eigen::Index dim, double scale = 1.0);

  Eigen::Index dim() const { return a_.rows(); }
  const CMatrix& matrix() const { return a_; }
  double trace() const { return a_.diagonal().real().sum(); }

  /// Adds scale * v v^H.
  void add_outer(const CVector& v, double scale);
  void add_diagonal(double value);

  /// Ascending eigenvalues.
  Eigen::VectorXd eigenvalues() const;

 private:
  CMatrix a_;
};

/// Cholesky factorization of (A + loading I), reused across many solves.
class HermitianSolver {
 public:
  HermitianSolver(const HermitianMatrix& a, double loading = 0.0);

  /// x with (A + loading I) x = b; one step of iterative refinement.
  CVector solve(const CVector& b) const;
  /// b^H (A + loading I)^{-1} b
  double inverse_quadratic(const CVector& b) const;

  double loading() const { return loading_; }

 private:
  CMatrix loaded_;
  Eigen::LLT<CMatrix> llt_;
  double loading_ = 0.0;
};

CVector hermitian_solve(const HermitianMatrix& a, const CVector& b, double loading = 0.0);

/// Loading applied when a solve must be regularized: 1e-6 * tr(A) / dim.
double default_diagonal_loading(const HermitianMatrix& a);

/// sin(n pi x) / sin(pi x), continuous at integer x (value +-n there).
double dirichlet(int n, double x);

/// Linear convolution through zero-padded FFTs; length a.size() + b.size() - 1.
std::vector<cdouble> fft_convolve(std::span<const cdouble> a, std::span<const cdouble> b);

/// In-place DFT of any length. Inverse is unnormalized (matches FFTW).
void fft_inplace(std::vector<cdouble>& data, bool inverse);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

/// Runs fn(i) for i in [0, count) on a small thread pool. Each index is
/// visited exactly once; callers write results into per-index slots.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Kronecker product of column vectors.
CVector kron(const CVector& a, const CVector& b);

}  // namespace cfda
