#include "doctest.h"

#include <cmath>

#include "dislo/chart.hpp"
#include "dislo/interp.hpp"
#include "dislo/ops.hpp"

using namespace dislo;

namespace {

GridSpec cart_grid(int n = 8) {
  const double h = 2.0 / (n - 1);
  return GridSpec{{n, n, n}, {-1, -1, -1}, {h, h, h}};
}

}  // namespace

TEST_CASE("partial derivative is exact on linear fields, boundaries included") {
  const GridSpec g = cart_grid();
  const Chart c = Chart::cartesian(g);
  Field f(Signature::scalar(), g);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const Vec3 y = g.coord(g.unindex(n)[0], g.unindex(n)[1], g.unindex(n)[2]);
    f.at(n, 0) = 2.0 + 3.0 * y[0] - y[1] + 0.5 * y[2];
  }
  const Field df = partial_derivative(f, c);
  REQUIRE(df.sig() == Signature::body_covector());
  // Centered interior and one-sided boundary stencils are both exact on
  // degree-1 polynomials, so every node must match.
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    CHECK(df.at(n, 0) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(df.at(n, 1) == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(df.at(n, 2) == doctest::Approx(0.5).epsilon(1e-13));
  }
}

TEST_CASE("rot of a hand-computed field on a Cartesian chart") {
  const GridSpec g = cart_grid();
  const Chart c = Chart::cartesian(g);
  // Burgers component 3 carries the planar rotation covector (-y2, y1, 0);
  // its curl is the constant 2 along the third body direction.
  Field x(Signature::distortion(), g);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const auto ijk = g.unindex(n);
    const Vec3 y = g.coord(ijk[0], ijk[1], ijk[2]);
    Mat3 m{};
    m.a[2][0] = -y[1];
    m.a[2][1] = y[0];
    x.set_mat(n, m);
  }
  const Field r = rot_distortion(x, c);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    Mat3 want{};
    want.a[2][2] = 2.0;
    CHECK(max_abs(r.mat(n) - want) < 1e-12);
  }
}

TEST_CASE("covariant derivative reduces to the partial one on flat charts") {
  const GridSpec g = cart_grid();
  const Chart c = Chart::cartesian(g);
  Field f(Signature::distortion(), g);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const auto ijk = g.unindex(n);
    const Vec3 y = g.coord(ijk[0], ijk[1], ijk[2]);
    Mat3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        m.a[i][j] = std::sin(y[0] + 0.5 * i) * std::cos(y[1] - 0.3 * j) + y[2];
    f.set_mat(n, m);
  }
  const Field cd = covariant_derivative(f, c);
  const Field pd = partial_derivative(f, c);
  REQUIRE(cd.sig() == pd.sig());
  for (std::size_t n = 0; n < g.node_count(); ++n)
    for (int comp = 0; comp < cd.ncomp(); ++comp)
      CHECK(cd.at(n, comp) == doctest::Approx(pd.at(n, comp)).epsilon(1e-13));
}

TEST_CASE("Burgers slots never receive connection terms") {
  // On a cylindrical chart the connection is nonzero, but a field carrying
  // only a Burgers index must still differentiate componentwise.
  GridSpec g{{8, 8, 8}, {0.5, 0.0, -0.5}, {0.1, 0.1, 0.1}};
  const Chart c = Chart::cylindrical(g);
  Field w(Signature::burgers_vector(), g);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const auto ijk = g.unindex(n);
    const Vec3 y = g.coord(ijk[0], ijk[1], ijk[2]);
    w.set_vec(n, {y[0] * y[1], std::sin(y[2]), y[0] - y[1]});
  }
  const Field cd = covariant_derivative(w, c);
  const Field pd = partial_derivative(w, c);
  for (std::size_t n = 0; n < g.node_count(); ++n)
    for (int comp = 0; comp < cd.ncomp(); ++comp)
      CHECK(cd.at(n, comp) == pd.at(n, comp));
  // grad_potential is the same object with the derivative slot relabelled.
  const Field gp = grad_potential(w, c);
  REQUIRE(gp.sig() == Signature::distortion());
  for (std::size_t n = 0; n < g.node_count(); ++n)
    for (int comp = 0; comp < 9; ++comp)
      CHECK(gp.at(n, comp) == doctest::Approx(pd.at(n, comp)).epsilon(1e-14));
}

TEST_CASE("differential operators are linear to rounding") {
  GridSpec g{{8, 8, 8}, {0.5, 0.0, -0.5}, {0.1, 0.1, 0.1}};
  const Chart c = Chart::cylindrical(g);
  Field x(Signature::distortion(), g), y(Signature::distortion(), g);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    Mat3 mx, my;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        mx.a[i][j] = std::sin(0.17 * n + i - j);
        my.a[i][j] = std::cos(0.11 * n + 2 * i + j);
      }
    x.set_mat(n, mx);
    y.set_mat(n, my);
  }
  const Field lhs = rot_distortion(axpby(2.0, x, -0.5, y), c);
  const Field rhs = axpby(2.0, rot_distortion(x, c), -0.5, rot_distortion(y, c));
  for (std::size_t n = 0; n < g.node_count(); ++n)
    CHECK(max_abs(lhs.mat(n) - rhs.mat(n)) < 1e-10);
}

TEST_CASE("pointwise inverse round trip and the determinant floor") {
  const GridSpec g = cart_grid(6);
  const Chart c = Chart::cartesian(g);
  Field that(Signature::distortion(), g);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    Mat3 m = Mat3::identity();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m.a[i][j] += 0.2 * std::sin(0.3 * n + 3 * i + j);
    that.set_mat(n, m);
  }
  const Field shat = invert_pointwise(that, c);
  REQUIRE(shat.sig() == Signature::inverse_distortion());
  for (std::size_t n = 0; n < g.node_count(); ++n)
    CHECK(max_abs(shat_mat(shat, n) * that_mat(that, n) - Mat3::identity()) <
          1e-13);

  // Degenerate node is reported with its grid location.
  that.set_mat(g.index(2, 1, 3), Mat3{});
  CHECK_THROWS_WITH_AS((void)invert_pointwise(that, c),
                       doctest::Contains("(2,1,3)"), Error);
}

TEST_CASE("divergence of a linear density is exact") {
  const GridSpec g = cart_grid();
  const Chart c = Chart::cartesian(g);
  Field rho(Signature::distortion(), g);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const auto ijk = g.unindex(n);
    const Vec3 y = g.coord(ijk[0], ijk[1], ijk[2]);
    Mat3 m{};
    // rho^1_j = (2 y1, -y2, 3 y3): divergence 2 - 1 + 3 = 4.
    m.a[0][0] = 2.0 * y[0];
    m.a[0][1] = -y[1];
    m.a[0][2] = 3.0 * y[2];
    rho.set_mat(n, m);
  }
  const Field d = div_burgers_density(rho, c);
  REQUIRE(d.sig() == Signature::burgers_vector());
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    CHECK(d.at(n, 0) == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(d.at(n, 1) == doctest::Approx(0.0).epsilon(1e-13));
  }
}

TEST_CASE("trilinear sampling is exact on trilinear data and guards the grid") {
  const GridSpec g = cart_grid(6);
  Field f(Signature::scalar(), g);
  auto tri = [](const Vec3& y) {
    return 1.0 + 2.0 * y[0] - y[1] + 0.5 * y[2] + y[0] * y[1] -
           0.25 * y[1] * y[2] + y[0] * y[1] * y[2];
  };
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const auto ijk = g.unindex(n);
    f.at(n, 0) = tri(g.coord(ijk[0], ijk[1], ijk[2]));
  }
  const Vec3 probe{0.137, -0.52, 0.811};
  double out;
  sample_field(f, probe, {&out, 1});
  CHECK(out == doctest::Approx(tri(probe)).epsilon(1e-13));
  CHECK_THROWS_AS(sample_field(f, {1.5, 0, 0}, {&out, 1}), Error);
}
