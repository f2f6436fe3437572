#include "cfda/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include <fftw3.h>

namespace cfda {

HermitianMatrix::HermitianMatrix(CMatrix a) : a_(std::move(a)) {
  if (a_.rows() != a_.cols()) {
    throw std::invalid_argument("HermitianMatrix: matrix is not square");
  }
  const double scale = a_.cwiseAbs().maxCoeff();
  if (scale > 0.0) {
    const double asym = (a_ - a_.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale) {
      throw std::invalid_argument("HermitianMatrix: asymmetry " + std::to_string(asym / scale) +
                                  " exceeds 1e-12 relative");
    }
  }
  CMatrix sym = 0.5 * (a_ + a_.adjoint());
  a_ = std::move(sym);
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim, double scale) {
  return HermitianMatrix(CMatrix::Identity(dim, dim) * scale);
}

void HermitianMatrix::add_outer(const CVector& v, double scale) {
  a_.noalias() += scale * (v * v.adjoint());
}

void HermitianMatrix::add_diagonal(double value) {
  a_.diagonal().array() += value;
}

Eigen::VectorXd HermitianMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

HermitianSolver::HermitianSolver(const HermitianMatrix& a, double loading)
    : loaded_(a.matrix()), loading_(loading) {
  if (loading != 0.0) {
    loaded_.diagonal().array() += loading;
  }
  llt_.compute(loaded_);
  if (llt_.info() != Eigen::Success) {
    throw NotPositiveDefinite(
        "matrix is not positive definite; apply diagonal loading (e.g. 1e-6 * tr(A)/dim)");
  }
}

CVector HermitianSolver::solve(const CVector& b) const {
  CVector x = llt_.solve(b);
  const CVector r = b - loaded_ * x;
  x += llt_.solve(r);
  return x;
}

double HermitianSolver::inverse_quadratic(const CVector& b) const {
  return b.dot(solve(b)).real();
}

CVector hermitian_solve(const HermitianMatrix& a, const CVector& b, double loading) {
  return HermitianSolver(a, loading).solve(b);
}

double default_diagonal_loading(const HermitianMatrix& a) {
  return 1e-6 * a.trace() / static_cast<double>(a.dim());
}

double dirichlet(int n, double x) {
  const double den = std::sin(kPi * x);
  if (std::abs(den) < 1e-12) {
    // At integer k the limit is n cos(n pi k) / cos(pi k) = n (-1)^{k(n-1)}.
    const long long k = std::llround(x);
    const bool negative = ((k * (n - 1)) % 2) != 0;
    return negative ? -n : n;
  }
  return std::sin(n * kPi * x) / den;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

namespace {

struct PlanCache {
  std::mutex mutex;
  std::map<std::pair<int, int>, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard lock(mutex);
    auto it = plans.find({n, sign});
    if (it != plans.end()) return it->second;
    // The planner only needs scratch arrays with the same alignment as
    // those passed to fftw_execute_dft later (both come from fftw_alloc).
    fftw_complex* in = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
    plans.emplace(std::make_pair(n, sign), plan);
    return plan;
  }
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : size(n), data(fftw_alloc_complex(n)) {}
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  cdouble* as_complex() { return reinterpret_cast<cdouble*>(data); }

  std::size_t size;
  fftw_complex* data;
};

void execute(FftwBuffer& in, FftwBuffer& out, int sign) {
  fftw_plan plan = plan_cache().get(static_cast<int>(in.size), sign);
  fftw_execute_dft(plan, in.data, out.data);
}

}  // namespace

void fft_inplace(std::vector<cdouble>& data, bool inverse) {
  if (data.empty()) return;
  FftwBuffer in(data.size()), out(data.size());
  std::copy(data.begin(), data.end(), in.as_complex());
  execute(in, out, inverse ? FFTW_BACKWARD : FFTW_FORWARD);
  std::copy(out.as_complex(), out.as_complex() + data.size(), data.begin());
}

std::vector<cdouble> fft_convolve(std::span<const cdouble> a, std::span<const cdouble> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = next_pow2(out_len);

  FftwBuffer fa(n), fb(n), spec_a(n), spec_b(n);
  std::fill_n(fa.as_complex(), n, cdouble{});
  std::fill_n(fb.as_complex(), n, cdouble{});
  std::copy(a.begin(), a.end(), fa.as_complex());
  std::copy(b.begin(), b.end(), fb.as_complex());
  execute(fa, spec_a, FFTW_FORWARD);
  execute(fb, spec_b, FFTW_FORWARD);

  cdouble* sa = spec_a.as_complex();
  const cdouble* sb = spec_b.as_complex();
  for (std::size_t i = 0; i < n; ++i) sa[i] *= sb[i];
  execute(spec_a, fa, FFTW_BACKWARD);

  std::vector<cdouble> out(out_len);
  const double scale = 1.0 / static_cast<double>(n);
  const cdouble* res = fa.as_complex();
  for (std::size_t i = 0; i < out_len; ++i) out[i] = res[i] * scale;
  return out;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

}  // namespace cfda
