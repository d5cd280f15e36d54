#include <cmath>

#include "doctest.h"
#include "fdtdlab/experiments.hpp"
#include "fdtdlab/io.hpp"

using namespace fdtdlab;

TEST_CASE("analytic delayed Gaussian") {
  SourceSpec src;
  const double d = 3.95;
  // peak arrives at t = d/c + 0.7/c
  CHECK(analytic_gaussian_at_probe(src, d, (d + 0.7) / c0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // before the wavefront the causal field is zero; the non-causal tail value
  // it replaces is below 1e-19 for d >= 1 m
  CHECK(analytic_gaussian_at_probe(src, 1.0, 0.0) == 0.0);
  CHECK(std::exp(-16.0 * (0.7 + 1.0) * (0.7 + 1.0)) < 1e-19);
  // zero distance reduces to the source waveform
  CHECK(analytic_gaussian_at_probe(src, 0.0, 1e-9) ==
        doctest::Approx(src.waveform(1e-9)).epsilon(1e-12));
}

TEST_CASE("1-D propagation error ordering, second order") {
  const std::vector<double> svals = {0.5, 0.7, 1.0};
  const auto rows = exp_1d_propagation(Scheme::fdtd22, svals);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].l2 > rows[1].l2);
  CHECK(rows[1].l2 > rows[2].l2);
  CHECK(rows[2].l2 < 1e-10);
  CHECK(rows[2].linf < 1e-10);
}

TEST_CASE("representative frequency of the broadband pulse") {
  SourceSpec src;  // q = 16
  CHECK(representative_frequency(src) ==
        doctest::Approx(c0 * std::sqrt(16.0 / pi) / pi).epsilon(1e-12));
  CHECK(representative_frequency(src) == doctest::Approx(2.1535e8).epsilon(1e-4));
}

TEST_CASE("tracked 2-D modes are the lowest nondegenerate ones") {
  const auto tm = lowest_nondegenerate_modes_2d(ModeFamily::tm, 1.0, 2.0, 3);
  REQUIRE(tm.size() == 3);
  CHECK(tm[0].mode.m == 1);
  CHECK(tm[0].mode.n == 1);
  CHECK(tm[1].mode.m == 1);
  CHECK(tm[1].mode.n == 2);
  CHECK(tm[2].mode.m == 1);
  CHECK(tm[2].mode.n == 3);
  // TM22 and TM14 collide at (c/2) sqrt(5): neither may be tracked
  for (const auto& m : tm) CHECK(!(m.mode.m == 2 && m.mode.n == 2));

  const auto te = lowest_nondegenerate_modes_2d(ModeFamily::te, 1.0, 2.0, 3);
  REQUIRE(te.size() == 3);
  // TE10/TE02 are degenerate, so the list skips straight to TE11
  CHECK(te[0].mode.m == 0);
  CHECK(te[0].mode.n == 1);
  CHECK(te[1].mode.m == 1);
  CHECK(te[1].mode.n == 1);
  CHECK(te[2].mode.m == 1);
  CHECK(te[2].mode.n == 2);
}

TEST_CASE("cube mode groups carry their degeneracy") {
  const auto groups = lowest_mode_groups_3d({1.0, 1.0, 1.0}, 3);
  REQUIRE(groups.size() == 3);
  CHECK(groups[0].f_ref_hz == doctest::Approx(c0 / 2.0 * std::sqrt(2.0)).epsilon(1e-9));
  CHECK(groups[0].degeneracy == 3);  // TE011, TE101, TM110
  CHECK(groups[1].f_ref_hz == doctest::Approx(c0 / 2.0 * std::sqrt(3.0)).epsilon(1e-9));
  CHECK(groups[1].degeneracy == 2);  // TE111, TM111
  CHECK(groups[2].f_ref_hz == doctest::Approx(c0 / 2.0 * std::sqrt(5.0)).epsilon(1e-9));
}

TEST_CASE("2-D cavity pipeline extracts the tracked modes") {
  // reduced duration: enough resolution to match every mode within 5%
  CavityConfig cfg;
  cfg.steps_base = 16384;
  const std::vector<double> svals = {0.5, 1.0};
  const auto rows = exp_cavity_2d(Scheme::fdtd22, Polarization::tm, svals, cfg);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    CHECK(r.matched);
    CHECK(r.rel_error < 5e-3);
  }
  // determinism: identical call gives identical measured frequencies
  const auto again = exp_cavity_2d(Scheme::fdtd22, Polarization::tm, svals, cfg);
  for (size_t i = 0; i < rows.size(); ++i)
    CHECK(rows[i].f_meas_hz == again[i].f_meas_hz);
}

TEST_CASE("2-D TE cavity pipeline works as well") {
  CavityConfig cfg;
  cfg.steps_base = 16384;
  const std::vector<double> svals = {0.8};
  const auto rows = exp_cavity_2d(Scheme::fdtd24, Polarization::te, svals, cfg);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.matched);
    CHECK(r.rel_error < 5e-3);
  }
}

TEST_CASE("3-D cavity pipeline matches the degenerate groups") {
  CavityConfig cfg;
  cfg.steps_base = 8192;
  const std::vector<double> svals = {1.0};
  const auto rows = exp_cavity_3d(Scheme::fdtd22, svals, cfg);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.matched);
    CHECK(r.rel_error < 5e-3);
  }
  CHECK(rows[0].mode.degeneracy == 3);
  CHECK(rows[1].mode.degeneracy == 2);
}

TEST_CASE("dispersion map slices") {
  const GridSpec g = GridSpec::uniform(3, 6e-3);
  const WaveSpec w = WaveSpec::from_frequency(5e9, g);
  const std::vector<double> svals = {0.4, 0.8};

  // theta = 90 deg slice: vp <= 1 and periodic in phi with period pi/2
  const auto slice = dispersion_map(Scheme::fdtd22, g, w, svals, pi / 2.0,
                                    std::nullopt, 1, 41);
  REQUIRE(slice.size() == 2 * 41);
  for (const auto& r : slice) {
    CHECK(r.status == SolveStatus::ok);
    CHECK(r.vp_ratio <= 1.0 + 1e-10);
  }
  // phi grid has 41 points over [0, 2 pi]; a quarter period is 10 steps
  for (int j = 0; j + 10 < 41; ++j)
    CHECK(slice[j].vp_ratio == doctest::Approx(slice[j + 10].vp_ratio).epsilon(1e-9));

  // full surfaces at two Courant numbers never intersect (second order)
  const auto surf = dispersion_map(Scheme::fdtd22, g, w, svals, std::nullopt,
                                   std::nullopt, 13, 25);
  const size_t per_s = 13 * 25;
  REQUIRE(surf.size() == 2 * per_s);
  for (size_t i = 0; i < per_s; ++i)
    CHECK(surf[i].vp_ratio <= surf[i + per_s].vp_ratio + 1e-9);

  // fourth order: vp crosses 1 as S grows along the theta = 90 slice
  const std::vector<double> s24 = {0.05, 1.0};
  const auto s24rows = dispersion_map(Scheme::fdtd24, g, w, s24, pi / 2.0,
                                      std::nullopt, 1, 41);
  bool below_at_small = true, above_at_large = false;
  for (size_t j = 0; j < 41; ++j) {
    if (s24rows[j].vp_ratio >= 1.0) below_at_small = false;
    if (s24rows[41 + j].vp_ratio > 1.0) above_at_large = true;
  }
  CHECK(below_at_small);
  CHECK(above_at_large);
}

TEST_CASE("probe series csv format") {
  const std::vector<double> t = {1e-9, 2e-9};
  const std::vector<double> v = {0.5, -0.25};
  const std::string csv = probe_series_csv(t, v);
  CHECK(csv ==
        "t_seconds,value\n1.0000000000000001e-09,0.5\n"
        "2.0000000000000001e-09,-0.25\n");
}
