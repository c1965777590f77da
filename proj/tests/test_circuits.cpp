#include "doctest.h"

#include <cmath>

#include "dislo/chart.hpp"
#include "dislo/circuits.hpp"

using namespace dislo;

namespace {

Chart unit_cart(int n = 9) {
  const double h = 2.0 / (n - 1);
  return Chart::cartesian(GridSpec{{n, n, n}, {-1, -1, -1}, {h, h, h}});
}

Field planar_rotation_field(const GridSpec& g) {
  // Burgers component 3 carries (-y2, y1, 0); its circuit around a closed
  // planar polygon is exactly twice the enclosed polygon area.
  Field f(Signature::distortion(), g);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const auto ijk = g.unindex(n);
    const Vec3 y = g.coord(ijk[0], ijk[1], ijk[2]);
    Mat3 m{};
    m.a[2][0] = -y[1];
    m.a[2][1] = y[0];
    f.set_mat(n, m);
  }
  return f;
}

}  // namespace

TEST_CASE("contour builders: counts, perimeters, validation") {
  const Contour circ = Contour::circle({0, 0, 0}, 0.5, {0, 0, 1}, 64);
  CHECK(circ.points.size() == 64);
  CHECK(circ.length() == doctest::Approx(2 * M_PI * 0.5).epsilon(2e-3));

  const Contour rect = Contour::rectangle({0, 0, 0}, 0.3, 0.2, {0, 0, 1}, 8);
  CHECK(rect.points.size() == 32);
  CHECK(rect.length() == doctest::Approx(4 * (0.3 + 0.2)).epsilon(1e-12));

  const Contour ell = Contour::ellipse({0, 0, 0}, 0.4, 0.4, {0, 0, 1}, 32);
  CHECK(ell.length() == doctest::Approx(2 * M_PI * 0.4).epsilon(1e-2));

  CHECK_THROWS_AS((void)Contour::from_points({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}),
                  ConfigError);
  std::vector<Vec3> dup(9, Vec3{0, 0, 0});
  CHECK_THROWS_AS((void)Contour::from_points(dup), ConfigError);
}

TEST_CASE("resampling keeps the shape, reversal flips orientation") {
  const Contour circ = Contour::circle({0.1, -0.2, 0}, 0.5, {0, 0, 1}, 48);
  const Contour fine = circ.resampled(256);
  CHECK(fine.points.size() == 256);
  CHECK(fine.length() == doctest::Approx(circ.length()).epsilon(1e-3));
  for (const Vec3& p : fine.points)
    CHECK(std::hypot(p[0] - 0.1, p[1] + 0.2) ==
          doctest::Approx(0.5).epsilon(3e-3));

  const Contour rev = circ.reversed();
  CHECK(rev.points.size() == circ.points.size());
  CHECK(rev.points.front() == circ.points.back());
}

TEST_CASE("circuit of a linear field equals twice the polygon area") {
  const Chart c = unit_cart();
  const Field f = planar_rotation_field(c.grid());
  const int n = 96;
  const double r = 0.6;
  const Contour circ = Contour::circle({0, 0, 0}, r, {0, 0, 1}, n);
  // Trapezoid segments are exact on linear integrands, so the discrete
  // circuit equals 2 * (inscribed polygon area) to rounding.
  const double poly_area = 0.5 * n * r * r * std::sin(2 * M_PI / n);
  const BurgersVector b = circuit_integral(f, circ, c, n);
  CHECK(b[0] == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(b[1] == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(b[2] == doctest::Approx(2.0 * poly_area).epsilon(1e-12));
}

TEST_CASE("reversing a contour negates the circuit bit for bit") {
  const Chart c = unit_cart();
  const Field f = planar_rotation_field(c.grid());
  const Contour circ = Contour::circle({0.05, 0.1, 0}, 0.55, {0, 0, 1}, 64);
  const BurgersVector fwd = circuit_integral(f, circ, c, 64);
  const BurgersVector bwd = circuit_integral(f, circ.reversed(), c, 64);
  for (int i = 0; i < 3; ++i) CHECK(bwd[i] == -fwd[i]);
}

TEST_CASE("circuit of a constant field around a closed contour vanishes") {
  const Chart c = unit_cart();
  Field f(Signature::distortion(), c.grid());
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.a[i][j] = 1.0 + 0.3 * i - 0.7 * j;
  for (std::size_t n = 0; n < f.node_count(); ++n) f.set_mat(n, m);
  const BurgersVector b =
      circuit_integral(f, Contour::circle({0, 0, 0}, 0.7, {0, 0, 1}), c, 128);
  CHECK(max_abs(b) < 1e-13);
}

TEST_CASE("circuit integration is linear in the field") {
  const Chart c = unit_cart();
  const Field f = planar_rotation_field(c.grid());
  Field g(Signature::distortion(), c.grid());
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m.a[i][j] = std::sin(0.2 * n + i + 2 * j);
    g.set_mat(n, m);
  }
  Field combo(Signature::distortion(), c.grid());
  for (std::size_t n = 0; n < combo.node_count(); ++n)
    combo.set_mat(n, 2.0 * f.mat(n) + (-0.5) * g.mat(n));
  const Contour circ = Contour::circle({0, 0, 0}, 0.5, {0, 0, 1}, 64);
  const BurgersVector bc = circuit_integral(combo, circ, c, 64);
  const BurgersVector bf = circuit_integral(f, circ, c, 64);
  const BurgersVector bg = circuit_integral(g, circ, c, 64);
  for (int i = 0; i < 3; ++i)
    CHECK(bc[i] == doctest::Approx(2.0 * bf[i] - 0.5 * bg[i]).epsilon(1e-12));
}

TEST_CASE("contours outside the grid are rejected with the point") {
  const Chart c = unit_cart();
  const Field f = planar_rotation_field(c.grid());
  const Contour circ = Contour::circle({0, 0, 0}, 1.2, {0, 0, 1});
  CHECK_THROWS_WITH_AS((void)circuit_integral(f, circ, c, 64),
                       doctest::Contains("leaves the grid"), Error);
}

TEST_CASE("flux of a constant density through a disk is density times area") {
  const Chart c = unit_cart();
  Field rho(Signature::distortion(), c.grid());
  Mat3 m{};
  m.a[0][2] = 2.0;  // Burgers 1 along the body z direction
  m.a[1][2] = -0.5;
  for (std::size_t n = 0; n < rho.node_count(); ++n) rho.set_mat(n, m);
  const double r = 0.6;
  const SurfacePatch disk = SurfacePatch::disk({0, 0, 0}, r, {0, 0, 1}, 24);
  const BurgersVector b = surface_flux(rho, disk, c);
  const double area = M_PI * r * r;
  CHECK(b[0] == doctest::Approx(2.0 * area).epsilon(1e-3));
  CHECK(b[1] == doctest::Approx(-0.5 * area).epsilon(1e-3));
  CHECK(std::abs(b[2]) < 1e-12);
}

TEST_CASE("disk boundary follows the right-hand rule around the axis") {
  const SurfacePatch disk = SurfacePatch::disk({0, 0, 0}, 0.5, {0, 0, 1}, 8);
  const std::size_t n = disk.boundary.points.size();
  REQUIRE(n >= 8);
  double twice_area = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const Vec3& a = disk.boundary.points[s];
    const Vec3& b = disk.boundary.points[(s + 1) % n];
    twice_area += a[0] * b[1] - b[0] * a[1];
  }
  // Positive signed area in the xy-plane: counterclockwise seen from +z.
  CHECK(twice_area > 0.0);
  CHECK(0.5 * twice_area == doctest::Approx(M_PI * 0.25).epsilon(1e-2));
}

TEST_CASE("flux rate is the negated closed current integral") {
  const Chart c = unit_cart();
  const Field j = planar_rotation_field(c.grid());
  const Contour circ = Contour::circle({0, 0, 0}, 0.5, {0, 0, 1}, 64);
  const BurgersVector ci = circuit_integral(j, circ, c, 64);
  const BurgersVector fr = flux_rate(j, circ, c, 64);
  for (int i = 0; i < 3; ++i) CHECK(fr[i] == -ci[i]);
}

TEST_CASE("kirchhoff residual") {
  CHECK(kirchhoff_residual({3, 0, 1}, {1, 0, 1}, {2, 0, 0}) ==
        doctest::Approx(0.0));
  CHECK(kirchhoff_residual({3, 0, 0}, {1, 0, 0}, {1, 0, 0}) ==
        doctest::Approx(1.0));
}
