#include <doctest.h>

#include "cfda/clutter.hpp"
#include "cfda/rxchain.hpp"

using namespace cfda;

namespace {

ClutterOptions options(int patches, int ambiguities, double cnr_db = 50.0) {
  ClutterOptions opt;
  opt.patches = patches;
  opt.ambiguities = ambiguities;
  opt.cnr = from_db10(cnr_db);
  return opt;
}

CovarianceEstimate assemble(const SteeringModel& model, const ClutterModel& clutter) {
  return clutter_covariance(clutter_columns(model, clutter), patch_powers(model, clutter),
                            model.scenario().noise_power);
}

}  // namespace

TEST_SUITE("clutter") {
  TEST_CASE("ring geometry and patch doppler") {
    const Scenario sc;
    const ClutterModel c = build_clutter(sc, 12e3, options(60, 3));
    REQUIRE(c.rings.size() == 4);
    CHECK(c.patch_count() == 240);
    for (const auto& ring : c.rings) {
      CHECK(ring.range == doctest::Approx(12e3 + ring.index * sc.unambiguous_range()));
      CHECK(ring.elevation == doctest::Approx(std::asin(sc.platform_height / ring.range)));
      CHECK(ring.weights[0] == doctest::Approx(std::pow(12e3 / ring.range, 4.0)));
    }
    // cos(phi + psi) is symmetric about phi = -psi.
    const auto& ring = c.rings[0];
    const double scale = 2.0 * sc.platform_velocity * sc.pri / sc.wavelength() * std::cos(c.cut_elevation);
    for (std::size_t i = 0; i < ring.azimuths.size(); ++i) {
      const double mirrored = -2.0 * sc.yaw - ring.azimuths[i];
      CHECK(ring.dopplers[i] == doctest::Approx(scale * std::cos(mirrored + sc.yaw)).epsilon(1e-12));
    }
  }

  TEST_CASE("table scale column count") {
    Scenario sc;
    sc.num_tx = sc.num_rx = sc.num_pulses = 8;
    sc.sample_rate = 100e6;
    const ClutterModel c = build_clutter(sc, 12e3, options(360, 5));
    const SteeringModel model = make_model(sc, Architecture::cfda);
    const CMatrix cols = clutter_columns(model, c);
    CHECK(cols.cols() == 2160);
    CHECK(cols.rows() == 512);
  }

  TEST_CASE("single patch column equals the ideal snapshot") {
    const Scenario sc;
    const ClutterModel c = build_clutter(sc, 12e3, options(1, 0));
    const SteeringModel model = make_model(sc, Architecture::cfda);
    PointEmitter patch;
    patch.azimuth = c.rings[0].azimuths[0];
    patch.elevation = c.rings[0].elevation;
    patch.range = c.rings[0].range;
    patch.doppler = c.rings[0].dopplers[0];
    CHECK((clutter_columns(model, c).col(0) - ideal_snapshot(model, patch, 1.0).data).norm() < 1e-12);
  }

  TEST_CASE("zero offset range block is all ones for every ring") {
    Scenario sc;
    sc.frequency_offset = 0.0;
    const ClutterModel c = build_clutter(sc, 12e3, options(8, 2));
    const SteeringModel model = make_model(sc, Architecture::cfda);
    const CMatrix cols = clutter_columns(model, c);
    const int nk = sc.nk();
    for (Eigen::Index j = 0; j < cols.cols(); ++j) {
      for (int m = 1; m < sc.num_tx; ++m) CHECK((cols.col(j).segment(m * nk, nk) - cols.col(j).head(nk)).norm() < 1e-12);
    }
    CHECK((srdc_vector(sc, 12e3) - CVector::Ones(sc.mnk())).norm() == 0.0);
  }

  TEST_CASE("srdc cancels the cut range phase exactly and leaves the ambiguous residual") {
    Scenario sc;
    sc.frequency_offset = 33e3;
    const ClutterModel c = build_clutter(sc, 12.34e3, options(12, 2));
    const SteeringModel model = make_model(sc, Architecture::cfda);
    const CVector r = srdc_vector(sc, c.cut_range);
    const CMatrix comp = apply_srdc(clutter_columns(model, c), r);
    const int nk = sc.nk();
    const double e = model.coefficient();
    Eigen::Index col = 0;
    for (const auto& ring : c.rings) {
      const double residual = 2.0 * ring.index * sc.unambiguous_range() * sc.frequency_offset / kSpeedOfLight;
      for (std::size_t i = 0; i < ring.azimuths.size(); ++i, ++col) {
        const CVector rx = kron(rx_steering(sc, ring.azimuths[i], ring.elevation), doppler_steering(sc, ring.dopplers[i]));
        for (int m = 0; m < sc.num_tx; ++m) {
          const CVector block = comp.col(col).segment(m * nk, nk);
          const cdouble expected = ring.index == 0 ? cdouble(1.0) : cis(-kTwoPi * m * residual);
          CHECK((block - e * expected * rx).cwiseAbs().maxCoeff() < 1e-9);
          if (ring.index == 0) {
            for (int q = 0; q < nk; ++q) CHECK(std::abs(block(q) / (e * rx(q)) - 1.0) < 1e-12);
          }
        }
      }
    }
    const CVector t = apply_srdc(cut_target(model, c, 0.0, 0.1), r);
    for (int m = 1; m < sc.num_tx; ++m) CHECK((t.segment(m * nk, nk) - t.head(nk)).norm() < 1e-9);
  }

  TEST_CASE("clutter covariance is hermitian psd, low rank and reproduces the cnr") {
    for (Architecture arch : {Architecture::pa, Architecture::fda_mimo, Architecture::cfda}) {
      Scenario sc;
      if (arch == Architecture::fda_mimo) sc.frequency_offset = 1e6;
      const ClutterModel c = build_clutter(sc, 12e3, options(10, 1, 40.0));
      const SteeringModel model = make_model(sc, arch);
      const CovarianceEstimate rd = assemble(model, c);
      const CMatrix& m = rd.matrix.matrix();
      CHECK((m - m.adjoint()).norm() == 0.0);
      const Eigen::VectorXd ev = rd.matrix.eigenvalues();
      CHECK(ev.minCoeff() >= sc.noise_power * (1.0 - 1e-9));
      const double cnr = rd.matrix.trace() / (sc.noise_power * static_cast<double>(model.dimension()));
      CHECK(cnr == doctest::Approx(from_db10(40.0)).epsilon(0.01));
      int above = 0;
      for (Eigen::Index i = 0; i < ev.size(); ++i) above += ev(i) > sc.noise_power * (1.0 + 1e-6);
      CHECK(above <= static_cast<int>(c.patch_count()));
    }
    const CMatrix cols = CMatrix::Ones(4, 3);
    const CovarianceEstimate zero = clutter_covariance(cols, Eigen::VectorXd::Zero(3), 2.0);
    CHECK((zero.matrix.matrix() - 2.0 * CMatrix::Identity(4, 4)).norm() == 0.0);
  }

  TEST_CASE("strap weights are distortionless and reject an ambiguous patch") {
    Scenario sc;
    const SteeringModel model = make_model(sc, Architecture::cfda);
    ClutterModel c = build_clutter(sc, 12e3, options(1, 1, 40.0));
    // Keep only the ambiguous ring, placed on the target's direction and Doppler.
    c.rings.erase(c.rings.begin());
    c.rings[0].azimuths = {0.0};
    c.rings[0].dopplers = {0.1};
    const CVector t = cut_target(model, c, 0.0, 0.1);
    const CovarianceEstimate rd = assemble(model, c);
    const CVector w = strap_weights(t, rd);
    CHECK(std::abs(w.dot(t) - cdouble(1.0)) < 1e-12);
    const CVector u = clutter_columns(model, c).col(0);
    CHECK(db10(std::norm(w.dot(u)) / u.squaredNorm() * t.squaredNorm()) < -20.0);

    const CovarianceEstimate white{HermitianMatrix::identity(t.size()), CovarianceSource::clutter_noise, 0.0};
    CHECK((strap_weights(t, white) - t / t.squaredNorm()).norm() < 1e-14);
  }

  TEST_CASE("clutter free sdr is the array gain") {
    const Scenario sc;
    const SteeringModel model = make_model(sc, Architecture::cfda);
    const ClutterModel c = build_clutter(sc, 12e3, options(8, 1, 0.0));
    const double e2 = model.coefficient() * model.coefficient();
    const CVector t = cut_target(model, c, 0.0, 0.2);
    CHECK(sdr_direct(model, c, t, 10.0) == doctest::Approx(10.0 * e2 * sc.mnk()));
    CHECK(sdr_closed_form(model, c, 0.0, 0.2, 10.0) == doctest::Approx(10.0 * e2 * sc.mnk()));
  }

  TEST_CASE("closed form agrees with the direct solve for a sparse strong clutter scene") {
    Scenario sc;
    sc.num_tx = sc.num_rx = sc.num_pulses = 6;
    for (Architecture arch : {Architecture::pa, Architecture::fda_mimo, Architecture::cfda}) {
      Scenario s = sc;
      if (arch == Architecture::fda_mimo) s.frequency_offset = 1e6;
      const SteeringModel model = make_model(s, arch);
      ClutterModel c = build_clutter(s, 12e3, options(3, 0, 30.0));
      for (double dop : {0.2, 0.3, 0.45}) {
        const CVector t = cut_target(model, c, 0.0, dop);
        const double direct = sdr_direct(model, c, t, 10.0);
        const double closed = sdr_closed_form(model, c, 0.0, dop, 10.0);
        CHECK(closed == doctest::Approx(direct).epsilon(0.10));
      }
      // On the patch itself the per-patch sum over-counts and undershoots the direct value.
      const CVector on_patch = cut_target(model, c, 0.0, 0.0);
      CHECK(sdr_closed_form(model, c, 0.0, 0.0, 10.0) < sdr_direct(model, c, on_patch, 10.0));
    }
  }

  TEST_CASE("sdr does not grow with patch power") {
    const Scenario sc;
    const SteeringModel model = make_model(sc, Architecture::cfda);
    const ClutterModel c = build_clutter(sc, 12e3, options(6, 1, 40.0));
    const CMatrix cols = clutter_columns(model, c);
    Eigen::VectorXd powers = patch_powers(model, c);
    const CVector t = cut_target(model, c, 0.0, 0.15);
    auto sdr = [&] {
      const CovarianceEstimate rd = clutter_covariance(cols, powers, sc.noise_power);
      const CVector w = strap_weights(t, rd);
      return std::norm(w.dot(t)) / w.dot(rd.matrix.matrix() * w).real();
    };
    double previous = sdr();
    for (int step = 0; step < 4; ++step) {
      powers(2) = powers(2) * 4.0 + 1.0;
      const double now = sdr();
      CHECK(now <= previous * (1.0 + 1e-9));
      previous = now;
    }
  }

  TEST_CASE("global clutter phase does not change the output") {
    const Scenario sc;
    const SteeringModel model = make_model(sc, Architecture::cfda);
    const ClutterModel c = build_clutter(sc, 12e3, options(6, 1, 40.0));
    const CMatrix cols = clutter_columns(model, c);
    const Eigen::VectorXd powers = patch_powers(model, c);
    const CovarianceEstimate a = clutter_covariance(cols, powers, 1.0);
    const CovarianceEstimate b = clutter_covariance(cols * cis(0.7), powers, 1.0);
    CHECK((a.matrix.matrix() - b.matrix.matrix()).norm() <= 1e-9 * a.matrix.matrix().norm());
  }

  TEST_CASE("fda-mimo rings alias onto the cut when delta_f T is an integer") {
    Scenario sc;
    const ClutterOptions opt = options(30, 3, 50.0);
    for (double df : {1e6, 1.005e6}) {
      sc.frequency_offset = df;
      const ClutterModel c = build_clutter(sc, 12e3, opt);
      for (const auto& ring : c.rings) {
        const double offset = range_frequency(sc, ring.range) - range_frequency(sc, c.cut_range);
        const double frac = std::abs(offset - std::round(offset));
        if (df == 1e6) CHECK(frac < 1e-6);
        if (df != 1e6 && ring.index % 2 == 1) CHECK(frac == doctest::Approx(0.5));
      }
    }
    // With aliasing every ambiguous ring lands on the cut ring's clutter ridge.
    sc.frequency_offset = 1e6;
    const SteeringModel aliased(sc, Architecture::fda_mimo);
    Scenario half = sc;
    half.frequency_offset = 1.005e6;
    const SteeringModel spread(half, Architecture::fda_mimo);
    const double sdr_aliased = sdr_closed_form(aliased, build_clutter(sc, 12e3, opt), 0.0, 0.0, 10.0);
    const double sdr_spread = sdr_closed_form(spread, build_clutter(half, 12e3, opt), 0.0, 0.0, 10.0);
    CHECK(sdr_aliased < sdr_spread);
  }

  TEST_CASE("notch counting") {
    CHECK(count_notches({0, 0, -20, -20, 0, 0, -15, 0}, 10.0) == 2);
    CHECK(count_notches({-20, 0, 0, 0, -20}, 10.0) == 1);
    CHECK(count_notches({0, -5, 0}, 10.0) == 0);
    CHECK(count_notches({}, 10.0) == 0);
  }

  TEST_CASE("sdr loss curves are bounded by the clutter free output") {
    const Scenario sc;
    const SteeringModel model = make_model(sc, Architecture::cfda);
    const ClutterModel c = build_clutter(sc, 12e3, options(30, 2, 40.0));
    std::vector<double> grid;
    for (int i = 0; i < 40; ++i) grid.push_back(-0.5 + i / 40.0);
    for (StapMethod method : {StapMethod::strap, StapMethod::stap_3d, StapMethod::dw_stap}) {
      for (bool srdc : {false, true}) {
        const SdrLossCurve curve = sdr_loss_curve(model, c, 0.0, grid, method, srdc, 10.0);
        REQUIRE(curve.normalized_db.size() == grid.size());
        for (double v : curve.normalized_db) CHECK(v <= 1e-9);
        const double sdr_in = 10.0 / (1.0 + c.cnr);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          CHECK(curve.loss_db[i] == doctest::Approx(db10(curve.sdr_out[i] / sdr_in)));
        }
      }
    }
    CHECK(parse_stap_method(to_string(StapMethod::dw_stap)) == StapMethod::dw_stap);
    CHECK_THROWS_AS(parse_stap_method("fancy"), std::invalid_argument);
  }

  TEST_CASE("clutter spectrum peaks on the clutter ridge") {
    const Scenario sc;
    const SteeringModel model = make_model(sc, Architecture::cfda);
    std::vector<double> grid;
    for (int i = 0; i < 32; ++i) grid.push_back(-0.5 + i / 32.0);
    const Eigen::MatrixXd s = clutter_spectrum(model, options(60, 2), 0.0, {12e3}, grid);
    // Broadside look with psi = 90 degrees puts the mainlobe clutter at zero Doppler.
    Eigen::Index best = 0;
    s.row(0).maxCoeff(&best);
    CHECK(std::abs(grid[static_cast<std::size_t>(best)]) < 0.05);
    CHECK(s.minCoeff() >= db10(sc.noise_power) - 1e-9);
  }
}
