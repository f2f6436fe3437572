#include <doctest.h>

#include "cfda/steering.hpp"

using namespace cfda;

namespace {

bool all_unit_modulus(const CVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(std::abs(v(i)) - 1.0) > 1e-12) return false;
  }
  return true;
}

double parallel_residual(const CVector& a, const CVector& b) {
  const cdouble proj = b.dot(a) / b.squaredNorm();
  return (a - proj * b).norm() / a.norm();
}

}  // namespace

TEST_SUITE("steering") {
  TEST_CASE("index mapping round trip") {
    const int n = 3, k = 5;
    for (int m = 0; m < 4; ++m) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j) {
          const Eigen::Index flat = flat_index(m, i, j, n, k);
          CHECK(flat == (m * n + i) * k + j);
          const ChannelIndex back = unflatten(flat, n, k);
          CHECK(back.m == m);
          CHECK(back.n == i);
          CHECK(back.k == j);
        }
      }
    }
  }

  TEST_CASE("basic steering vectors") {
    Scenario sc;
    CHECK((tx_steering(sc, kPi / 2.0, 0.3) - CVector::Ones(4)).norm() < 1e-12);
    CHECK((rx_steering(sc, kPi / 2.0, 0.3) - CVector::Ones(4)).norm() < 1e-12);
    CHECK((doppler_steering(sc, 0.0) - CVector::Ones(4)).norm() == 0.0);
    CVector alternating(4);
    alternating << 1.0, -1.0, 1.0, -1.0;
    CHECK((doppler_steering(sc, 0.5) - alternating).norm() < 1e-12);

    const double el = elevation_from_range(sc, 12e3);
    const CVector a = tx_steering(sc, 0.0, el);
    const double f = spatial_frequency(sc, 0.0, el);
    CHECK(f == doctest::Approx(0.48412).epsilon(1e-4));
    for (int m = 0; m < 4; ++m) CHECK(std::abs(a(m) - cis(kTwoPi * m * f)) < 1e-12);

    const CVector r = rx_steering(sc, 0.4, el);
    for (int n = 1; n < 4; ++n) CHECK(std::abs(r(n) / r(n - 1) - r(1) / r(0)) < 1e-12);

    sc.num_tx = 1;
    sc.num_rx = 1;
    sc.num_pulses = 1;
    CHECK(tx_steering(sc, 0.1, 0.2)(0) == cdouble(1.0));
    CHECK(rx_steering(sc, 0.1, 0.2)(0) == cdouble(1.0));
    CHECK(doppler_steering(sc, 0.3)(0) == cdouble(1.0));
    CHECK(range_steering(sc, 9e3)(0) == cdouble(1.0));
  }

  TEST_CASE("range steering aliases at integer range frequency") {
    Scenario sc;
    CHECK(range_frequency(sc, 12e3) == doctest::Approx(-4.0));
    CHECK((range_steering(sc, 12e3) - CVector::Ones(4)).norm() < 1e-9);
    sc.frequency_offset = 0.0;
    CHECK((range_steering(sc, 7e3) - CVector::Ones(4)).norm() == 0.0);
  }

  TEST_CASE("architecture names round trip") {
    for (Architecture a : {Architecture::pa, Architecture::mimo, Architecture::fda_mimo, Architecture::cfda}) {
      CHECK(parse_architecture(to_string(a)) == a);
    }
    CHECK_THROWS_AS(parse_architecture("sonar"), std::invalid_argument);
  }

  TEST_CASE("model responses have the documented structure") {
    Scenario sc;
    const PointEmitter e = emitter_at(sc, 11e3, 0.2, 10.0, 1.0);
    const double dop = doppler_frequency(sc, e);
    const CVector ar = rx_steering(sc, e.azimuth, e.elevation);
    const CVector ad = doppler_steering(sc, dop);
    const CVector at = tx_steering(sc, e.azimuth, e.elevation);
    const CVector aR = range_steering(sc, e.range);

    const SteeringModel pa(sc, Architecture::pa);
    CHECK(pa.dimension() == 16);
    CHECK((pa.response(e) - 4.0 * kron(ar, ad)).norm() < 1e-12);
    for (Eigen::Index i = 0; i < 16; ++i) CHECK(std::abs(pa.response(e)(i)) == doctest::Approx(4.0));

    const SteeringModel mimo(sc, Architecture::mimo);
    CHECK((mimo.response(e) - kron(kron(at, ar), ad)).norm() < 1e-12);

    const SteeringModel fm(sc, Architecture::fda_mimo);
    CHECK((fm.response(e) - kron(kron(at.cwiseProduct(aR), ar), ad)).norm() < 1e-12);
    CHECK(all_unit_modulus(fm.response(e)));

    const SteeringModel cf(sc, Architecture::cfda, 2.5);
    CHECK((cf.response(e) - 2.5 * kron(kron(aR, ar), ad)).norm() < 1e-12);
    CHECK_THROWS_AS(SteeringModel(sc, Architecture::cfda), std::invalid_argument);

    const Snapshot s = ideal_snapshot(cf, e, cdouble(0, 2));
    CHECK((s.data - cdouble(0, 2) * cf.response(e)).norm() < 1e-12);
    CHECK(s.architecture == Architecture::cfda);
  }

  TEST_CASE("zero offset c-fda snapshot is M times 1 kron receive kron doppler") {
    Scenario sc;
    sc.frequency_offset = 0.0;
    const PointEmitter e = emitter_at(sc, 12e3, 0.1, 0.0, 1.0);
    const SteeringModel cf(sc, Architecture::cfda, sc.num_tx);
    const CVector expected =
        sc.num_tx * kron(kron(CVector::Ones(sc.num_tx), rx_steering(sc, e.azimuth, e.elevation)),
                         doppler_steering(sc, doppler_frequency(sc, e)));
    CHECK((cf.response(e) - expected).norm() < 1e-12);

    const SteeringModel fm(sc, Architecture::fda_mimo);
    PointEmitter broadside = e;
    broadside.azimuth = kPi / 2.0;
    broadside.doppler = 0.0;
    const CVector v = fm.response(broadside);
    CHECK((v - CVector::Constant(v.size(), v(0))).norm() < 1e-12);
  }

  TEST_CASE("fda-mimo responses repeat with the secondary range period") {
    Scenario sc;
    sc.frequency_offset = 1e6;
    const SteeringModel fm(sc, Architecture::fda_mimo);
    const double period = kSpeedOfLight / (2.0 * sc.frequency_offset);
    CHECK(period == doctest::Approx(150.0));
    const CVector a = fm.response(0.0, 0.25, 0.1, 12e3);
    const CVector b = fm.response(0.0, 0.25, 0.1, 12e3 + 4 * period);
    CHECK(parallel_residual(a, b) < 1e-9);
    const CVector c = fm.response(0.0, 0.25, 0.1, 12e3 + 0.5 * period);
    CHECK(parallel_residual(a, c) > 0.5);
  }
}
