#include <doctest.h>

#include <random>

#include "cfda/interference.hpp"
#include "cfda/rxchain.hpp"

using namespace cfda;

namespace {

double parallel_residual(const CVector& a, const CVector& b) {
  const cdouble proj = b.dot(a) / b.squaredNorm();
  return (a - proj * b).norm() / a.norm();
}

JammerScene scene_for(const Scenario& sc, double dr, double inr = 1000.0) {
  const PointEmitter t = emitter_at(sc, 12e3, 0.0, 25.0, 10.0);
  return make_jammer_scene(sc, t, 12e3 + dr, 10.0, inr);
}

}  // namespace

TEST_SUITE("interference") {
  TEST_CASE("jammer snapshot geometry") {
    Scenario sc;
    const SteeringModel cf = make_model(sc, Architecture::cfda);
    const JammerScene same = scene_for(sc, 0.0);
    CHECK(parallel_residual(jammer_snapshot(cf, same).data, target_snapshot(cf, same).data) < 1e-12);

    const JammerScene apart = scene_for(sc, 500.0);
    CHECK(parallel_residual(jammer_snapshot(cf, apart).data, target_snapshot(cf, apart).data) > 0.1);
    CHECK(apart.jammer.doppler.value() == doctest::Approx(doppler_frequency(sc, apart.target)));
    CHECK(apart.jammer.azimuth == apart.target.azimuth);

    Scenario zero = sc;
    zero.frequency_offset = 0.0;
    const SteeringModel cf0 = make_model(zero, Architecture::cfda);
    CHECK(parallel_residual(jammer_snapshot(cf0, apart).data, target_snapshot(cf0, apart).data) < 1e-12);

    Scenario fm_sc = sc;
    fm_sc.frequency_offset = 1e6;
    const SteeringModel fm(fm_sc, Architecture::fda_mimo);
    const JammerScene sra = scene_for(fm_sc, kSpeedOfLight / (2.0 * fm_sc.frequency_offset));
    CHECK(parallel_residual(jammer_snapshot(fm, sra).data, target_snapshot(fm, sra).data) < 1e-9);
  }

  TEST_CASE("mvdr is distortionless for random pd covariances") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::Index n = 16;
      CMatrix x(n, n + 3);
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = {g(rng), g(rng)};
      const HermitianMatrix r(CMatrix(x * x.adjoint() + 0.1 * CMatrix::Identity(n, n)));
      CVector t(n);
      for (Eigen::Index i = 0; i < n; ++i) t(i) = {g(rng), g(rng)};
      const CVector w = mvdr_weights(t, {r, CovarianceSource::sample, 0.0});
      CHECK(std::abs(w.dot(t) - cdouble(1.0)) < 1e-12);
    }
  }

  TEST_CASE("white covariance gives the matched filter") {
    CVector t(4);
    t << 1.0, cdouble(0, 1), -2.0, 0.5;
    const CVector w = mvdr_weights(t, {HermitianMatrix::identity(4, 3.0), CovarianceSource::jamming_noise, 0.0});
    CHECK((w - t / t.squaredNorm()).norm() < 1e-14);
  }

  TEST_CASE("jammer is rejected by the c-fda beamformer") {
    Scenario sc;
    const SteeringModel cf = make_model(sc, Architecture::cfda);
    const JammerScene scene = scene_for(sc, 500.0);
    const CVector t = target_snapshot(cf, scene).data;
    const CVector j = jammer_snapshot(cf, scene).data;
    const CVector w = mvdr_weights(t, jamming_covariance(cf, scene));
    CHECK(std::norm(w.dot(j)) / std::norm(w.dot(t)) < 1e-3);
  }

  TEST_CASE("closed form sinr equals the direct solve") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (Architecture arch : {Architecture::pa, Architecture::mimo, Architecture::fda_mimo, Architecture::cfda}) {
      for (int trial = 0; trial < 8; ++trial) {
        Scenario sc;
        sc.frequency_offset = arch == Architecture::fda_mimo ? 1e6 * (0.5 + u(rng)) : 80e3 * u(rng);
        const SteeringModel model = make_model(sc, arch);
        const PointEmitter t = emitter_at(sc, 9e3 + 6e3 * u(rng), -0.5 + u(rng), 30.0 * u(rng), 1.0);
        const JammerScene scene =
            make_jammer_scene(sc, t, t.range - 1500.0 + 3000.0 * u(rng), from_db10(20.0 * u(rng)), from_db10(40.0 * u(rng)));
        CHECK(sinr_closed_form(model, scene) == doctest::Approx(sinr_direct(model, scene)).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("closed form limits") {
    Scenario sc;
    const SteeringModel cf = make_model(sc, Architecture::cfda);
    const double e2 = cf.coefficient() * cf.coefficient();
    const JammerScene quiet = scene_for(sc, 500.0, 0.0);
    CHECK(sinr_closed_form(cf, quiet) == doctest::Approx(e2 * sc.mnk() * quiet.snr_in));
    CHECK(sinr_direct(cf, quiet) == doctest::Approx(e2 * sc.mnk() * quiet.snr_in));

    const JammerScene overlapped = scene_for(sc, 0.0, 1e9);
    CHECK(sinr_closed_form(cf, overlapped) < 1e-3 * sinr_closed_form(cf, quiet));

    Scenario fm_sc = sc;
    fm_sc.frequency_offset = 1e6;
    const SteeringModel fm(fm_sc, Architecture::fda_mimo);
    const JammerScene sra = scene_for(fm_sc, 600.0);
    const JammerScene free = scene_for(fm_sc, 600.0, 0.0);
    CHECK(sinr_closed_form(fm, sra) < 1e-3 * sinr_closed_form(fm, free));
  }

  TEST_CASE("sinr is symmetric in the jammer offset and periodic for fda-mimo") {
    Scenario sc;
    sc.frequency_offset = 1e6;
    const SteeringModel fm(sc, Architecture::fda_mimo);
    const double period = kSpeedOfLight / (2.0 * sc.frequency_offset);
    for (double dr : {37.0, 90.0, 410.0}) {
      const double base = sinr_closed_form(fm, scene_for(sc, dr));
      CHECK(sinr_closed_form(fm, scene_for(sc, -dr)) == doctest::Approx(base).epsilon(1e-9));
      CHECK(sinr_closed_form(fm, scene_for(sc, dr + period)) == doctest::Approx(base).epsilon(1e-6));
    }
    for (Architecture arch : {Architecture::pa, Architecture::mimo}) {
      const SteeringModel m(sc, arch);
      CHECK(sinr_closed_form(m, scene_for(sc, 37.0)) == doctest::Approx(sinr_closed_form(m, scene_for(sc, 1300.0))));
    }
  }

  TEST_CASE("secondary range ambiguities") {
    Scenario sc;
    sc.frequency_offset = 1e6;
    CHECK(sra_count(sc) == 100);
    const auto r = sra_ranges(sc, 12e3, sc.unambiguous_range());
    REQUIRE(r.size() >= 2);
    for (std::size_t i = 1; i < r.size(); ++i) {
      const double step = r[i] - r[i - 1];
      CHECK((std::abs(step - 150.0) < 1e-6 || std::abs(step - 300.0) < 1e-6));
    }
    for (double x : r) CHECK(std::abs(x - 12e3) <= sc.unambiguous_range() / 2.0 + 1e-6);

    sc.frequency_offset = 50e3;
    CHECK(sra_count(sc) == 5);
    const auto s = sra_ranges(sc, 12e3, sc.unambiguous_range());
    CHECK(s.front() == doctest::Approx(6e3));
    CHECK(s.back() == doctest::Approx(18e3));
    for (double x : s) CHECK(std::abs(x - 12e3) > 1e3);

    sc.frequency_offset = 0.0;
    CHECK(sra_ranges(sc, 12e3, sc.unambiguous_range()).empty());
    CHECK(sra_count(sc) == 0);
  }

  TEST_CASE("capon map of a noise only scene is flat") {
    Scenario sc;
    const SteeringModel cf = make_model(sc, Architecture::cfda);
    JammerScene scene = scene_for(sc, 500.0, 0.0);
    scene.snr_in = 0.0;
    const CaponMap map = capon_map(cf, scene, {11.8e3, 12e3, 12.4e3}, {-0.3, 0.0, 0.2});
    CHECK(map.power_db.maxCoeff() - map.power_db.minCoeff() < 1e-9);
  }

  TEST_CASE("sample covariance of repeated snapshots") {
    CVector x(3);
    x << 1.0, cdouble(0, 2), -1.0;
    const CovarianceEstimate r = sample_covariance({x, -x}, 0.1);
    CHECK((r.matrix.matrix() - x * x.adjoint()).norm() < 1e-14);
    CHECK(r.diagonal_loading == 0.1);
    CHECK_THROWS_AS(sample_covariance({}), std::invalid_argument);
  }
}
