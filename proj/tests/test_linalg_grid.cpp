#include "doctest.h"

#include <cmath>

#include "dislo/field.hpp"
#include "dislo/grid.hpp"
#include "dislo/linalg3.hpp"

using namespace dislo;

TEST_CASE("mat3 inverse and determinant") {
  Mat3 m;
  m.a = {{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}}};
  CHECK(det(m) == doctest::Approx(2 * (12 - 1) - 1 * 4).epsilon(1e-14));
  const Mat3 r = m * inverse(m);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(r.a[i][j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
  Mat3 singular{};
  singular.a[0][0] = 1.0;
  CHECK_THROWS_AS((void)inverse(singular), Error);
}

TEST_CASE("rotation matrices are orthonormal with unit determinant") {
  for (int axis = 0; axis < 3; ++axis) {
    const Mat3 r = Mat3::rotation(axis, 0.73);
    const Mat3 should_be_id = transpose(r) * r;
    CHECK(max_abs(should_be_id - Mat3::identity()) < 1e-14);
    CHECK(det(r) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("levi-civita symbol") {
  CHECK(levi_civita(0, 1, 2) == 1);
  CHECK(levi_civita(1, 0, 2) == -1);
  CHECK(levi_civita(2, 0, 1) == 1);
  CHECK(levi_civita(0, 0, 2) == 0);
  int sum = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) sum += levi_civita(i, j, k);
  CHECK(sum == 0);
}

TEST_CASE("positive definiteness via leading minors") {
  CHECK(is_positive_definite(Mat3::diag(1, 2, 3)));
  CHECK_FALSE(is_positive_definite(Mat3::diag(1, -2, 3)));
  Mat3 m = Mat3::identity();
  m.a[0][1] = m.a[1][0] = 0.99;
  CHECK(is_positive_definite(m));
  m.a[0][1] = m.a[1][0] = 1.01;
  CHECK_FALSE(is_positive_definite(m));
}

TEST_CASE("grid index round trip and coordinates") {
  GridSpec g{{5, 6, 7}, {-1.0, 0.0, 2.0}, {0.5, 0.25, 0.1}};
  g.validate();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 7; ++k) {
        const std::size_t n = g.index(i, j, k);
        const auto back = g.unindex(n);
        CHECK(back[0] == i);
        CHECK(back[1] == j);
        CHECK(back[2] == k);
      }
  const Vec3 c = g.coord(2, 3, 4);
  CHECK(c[0] == doctest::Approx(0.0));
  CHECK(c[1] == doctest::Approx(0.75));
  CHECK(c[2] == doctest::Approx(2.4));
}

TEST_CASE("grid containment with cell margins") {
  GridSpec g{{5, 5, 5}, {0, 0, 0}, {1, 1, 1}};
  CHECK(g.contains({0, 0, 0}));
  CHECK(g.contains({4, 4, 4}));
  CHECK_FALSE(g.contains({4.01, 0, 0}));
  CHECK_FALSE(g.contains({0.5, 0.5, 0.5}, 1));
  CHECK(g.contains({1.5, 1.5, 1.5}, 1));
}

TEST_CASE("grid validation rejects tiny extents and bad spacing") {
  GridSpec small{{3, 5, 5}, {0, 0, 0}, {1, 1, 1}};
  CHECK_THROWS_AS(small.validate(), ConfigError);
  GridSpec bad{{5, 5, 5}, {0, 0, 0}, {1, 0.0, 1}};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("field norms over the shrunk interior") {
  GridSpec g{{6, 6, 6}, {0, 0, 0}, {1, 1, 1}};
  Field f(Signature::scalar(), g);
  for (std::size_t n = 0; n < f.node_count(); ++n) f.at(n, 0) = 2.0;
  // Mark the boundary with junk that the shrunk norm must ignore.
  f.at(g.index(0, 0, 0), 0) = 1e9;
  const Norms nm = field_norms(f, 2);
  CHECK(nm.l2 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(nm.max == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("check_finite names the offending node") {
  GridSpec g{{4, 4, 4}, {0, 0, 0}, {1, 1, 1}};
  Field f(Signature::scalar(), g);
  f.at(g.index(1, 2, 3), 0) = std::nan("");
  CHECK_THROWS_WITH_AS(f.check_finite("probe field"),
                       doctest::Contains("(1,2,3)"), Error);
}
