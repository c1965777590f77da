#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "dislo/evolution.hpp"
#include "dislo/ops.hpp"

using namespace dislo;

namespace {

std::shared_ptr<const Chart> cart_box(double half, int n) {
  const double h = 2.0 * half / (n - 1);
  return std::make_shared<Chart>(Chart::cartesian(
      GridSpec{{n, n, n}, {-half, -half, -half}, {h, h, h}}));
}

Field identity_distortion(const Chart& chart) {
  Field f(Signature::distortion(), chart.grid());
  for (std::size_t n = 0; n < f.node_count(); ++n)
    f.set_mat(n, Mat3::identity());
  return f;
}

Mat3 test_pattern() {
  Mat3 m{};
  m.a[0][1] = 0.3;
  m.a[1][2] = -0.1;
  m.a[2][2] = 0.2;
  return m;
}

}  // namespace

TEST_CASE("one step with a constant current is exact") {
  const auto chart = cart_box(1.0, 6);
  const Field that0 = identity_distortion(*chart);
  const Mat3 m = test_pattern();
  const Driver j = [m](double, const Chart&, Field& out) {
    for (std::size_t n = 0; n < out.node_count(); ++n) out.set_mat(n, m);
  };
  const double dt = 0.125;
  const Field next = step_distortion(that0, 0.0, dt, j, {}, *chart);
  for (std::size_t n = 0; n < next.node_count(); ++n)
    CHECK(max_abs(next.mat(n) - (Mat3::identity() + (-dt) * m)) < 1e-15);
}

TEST_CASE("time integration is fourth-order for a smooth driver") {
  const auto chart = cart_box(1.0, 6);
  const Mat3 m = test_pattern();
  const Driver j = [m](double t, const Chart&, Field& out) {
    for (std::size_t n = 0; n < out.node_count(); ++n)
      out.set_mat(n, std::sin(t) * m);
  };
  // Exact solution: That(t) = I + (cos t - 1) m.
  const double t_end = 0.8;
  auto final_error = [&](int steps) {
    Field that = identity_distortion(*chart);
    const double dt = t_end / steps;
    for (int s = 0; s < steps; ++s)
      that = step_distortion(that, s * dt, dt, j, {}, *chart);
    const Mat3 want = Mat3::identity() + (std::cos(t_end) - 1.0) * m;
    double worst = 0.0;
    for (std::size_t n = 0; n < that.node_count(); ++n)
      worst = std::max(worst, max_abs(that.mat(n) - want));
    return worst;
  };
  const double e1 = final_error(4);
  const double e2 = final_error(8);
  CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.2));
}

TEST_CASE("the determinant floor stops collapsing distortions loudly") {
  const auto chart = cart_box(1.0, 6);
  const Field that0 = identity_distortion(*chart);
  const Driver j = [](double, const Chart&, Field& out) {
    for (std::size_t n = 0; n < out.node_count(); ++n)
      out.set_mat(n, 5.0 * Mat3::identity());
  };
  // One step of size 0.2 drives That to exactly zero.
  CHECK_THROWS_WITH_AS(
      (void)step_distortion(that0, 0.0, 0.2, j, {}, *chart, 1e-6),
      doctest::Contains("floor"), Error);
}

TEST_CASE("a driverless scenario reports identically zero residuals") {
  Scenario sc;
  sc.chart = cart_box(1.0, 8);
  sc.that0 = identity_distortion(*sc.chart);
  sc.t_end = 1.0;
  sc.dt = 0.1;
  sc.output_every = 4;
  const ConservationReport rep = run_scenario(sc);
  REQUIRE(rep.rows.size() == 4);  // steps 0, 4, 8 and the final 10
  CHECK(rep.rows.front().time_stencil == 'f');
  CHECK(rep.rows[1].time_stencil == 'c');
  CHECK(rep.rows.back().time_stencil == 'b');
  CHECK(rep.rows.back().time == doctest::Approx(1.0));
  for (const ConservationRow& r : rep.rows) {
    CHECK(r.div_l2 == 0.0);
    CHECK(r.cons_l2 == 0.0);
  }
}

TEST_CASE("scenario validation") {
  Scenario sc;
  sc.chart = cart_box(1.0, 8);
  sc.that0 = identity_distortion(*sc.chart);
  sc.dt = -1.0;
  CHECK_THROWS_AS((void)run_scenario(sc), ConfigError);
  sc.dt = 0.1;
  Probe p;
  p.name = "outside";
  p.contour = Contour::circle({0, 0, 0}, 1.5, {0, 0, 1});
  sc.probes.push_back(p);
  CHECK_THROWS_WITH_AS((void)run_scenario(sc), doctest::Contains("outside"),
                       ConfigError);
}

TEST_CASE("screw creation ramp endpoints and rates") {
  const auto chart = cart_box(1.0, 8);
  CoreSpec core;
  core.burgers = {0, 0, 1};
  core.core_radius = 0.2;
  const ScrewCreation sc = ScrewCreation::make(core, *chart, 2.0);
  CHECK(sc.ramp(-1.0) == 0.0);
  CHECK(sc.ramp(0.0) == 0.0);
  CHECK(sc.ramp(1.0) == doctest::Approx(0.5));
  CHECK(sc.ramp(2.0) == 1.0);
  CHECK(sc.ramp(5.0) == 1.0);
  CHECK(sc.ramp_rate(0.0) == 0.0);
  CHECK(sc.ramp_rate(2.0) == 0.0);
  CHECK(sc.ramp_rate(1.0) == doctest::Approx(M_PI / 4.0));
}

TEST_CASE("screw creation run grows the circuit along the ramp") {
  const auto chart = cart_box(1.0, 32);
  CoreSpec core;
  core.burgers = {0, 0, 1};
  core.core_radius = 0.15;
  const ScrewCreation creation = ScrewCreation::make(core, *chart, 1.0);

  Scenario sc;
  sc.chart = chart;
  sc.that0 = identity_distortion(*chart);
  sc.current = creation.current_driver();
  sc.t_end = 0.5;
  sc.dt = 0.025;
  sc.output_every = 10;
  Probe p;
  p.name = "loop";
  p.contour = Contour::circle({0, 0, 0}, 0.6, {0, 0, 1});
  sc.probes.push_back(p);

  const ConservationReport rep = run_scenario(sc);
  REQUIRE(rep.rows.size() == 3);
  // At t = 0.5 exactly half the Burgers vector has been created, and the
  // circuit growth rate matches the analytic ramp rate.
  const ConservationRow& last = rep.rows.back();
  CHECK(last.probe_circuit[0][2] ==
        doctest::Approx(creation.ramp(0.5)).epsilon(5e-3));
  CHECK(last.probe_rate[0][2] ==
        doctest::Approx(creation.ramp_rate(0.5)).epsilon(5e-3));
  CHECK(std::abs(rep.rows.front().probe_circuit[0][2]) < 1e-12);
}

TEST_CASE("scenario dumps report and field snapshots when asked") {
  const std::string dir = "test_out_evolution";
  std::filesystem::remove_all(dir);
  Scenario sc;
  sc.chart = cart_box(1.0, 6);
  sc.that0 = identity_distortion(*sc.chart);
  sc.t_end = 0.2;
  sc.dt = 0.1;
  sc.output_every = 1;
  sc.output_dir = dir;
  (void)run_scenario(sc);
  CHECK(std::filesystem::exists(dir + "/conservation.csv"));
  CHECK(std::filesystem::exists(dir + "/that_0.vtk"));
  CHECK(std::filesystem::exists(dir + "/rho_2.vtk"));
  std::filesystem::remove_all(dir);
}
