#ifndef DISLO_LINALG3_HPP_
#define DISLO_LINALG3_HPP_

#include <algorithm>
#include <array>
#include <cmath>

#include "dislo/error.hpp"

namespace dislo {

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double s, const Vec3& a) {
  return {s * a[0], s * a[1], s * a[2]};
}
inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline double max_abs(const Vec3& a) {
  return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

inline Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  if (n == 0.0) throw Error("cannot normalize zero vector");
  return (1.0 / n) * a;
}

// Plain 3x3 matrix; a[row][col].
struct Mat3 {
  std::array<std::array<double, 3>, 3> a{};

  double& operator()(int r, int c) { return a[r][c]; }
  double operator()(int r, int c) const { return a[r][c]; }

  static Mat3 identity() {
    Mat3 m;
    m.a[0][0] = m.a[1][1] = m.a[2][2] = 1.0;
    return m;
  }
  static Mat3 diag(double d0, double d1, double d2) {
    Mat3 m;
    m.a[0][0] = d0;
    m.a[1][1] = d1;
    m.a[2][2] = d2;
    return m;
  }
  // Rotation by angle about a coordinate axis (0, 1 or 2).
  static Mat3 rotation(int axis, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    const int u = (axis + 1) % 3, v = (axis + 2) % 3;
    Mat3 m;
    m.a[axis][axis] = 1.0;
    m.a[u][u] = c;
    m.a[u][v] = -s;
    m.a[v][u] = s;
    m.a[v][v] = c;
    return m;
  }
};

inline Mat3 operator+(const Mat3& x, const Mat3& y) {
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m.a[r][c] = x.a[r][c] + y.a[r][c];
  return m;
}
inline Mat3 operator-(const Mat3& x, const Mat3& y) {
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m.a[r][c] = x.a[r][c] - y.a[r][c];
  return m;
}
inline Mat3 operator*(double s, const Mat3& x) {
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m.a[r][c] = s * x.a[r][c];
  return m;
}
inline Mat3 operator*(const Mat3& x, const Mat3& y) {
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += x.a[r][k] * y.a[k][c];
      m.a[r][c] = s;
    }
  return m;
}
inline Vec3 operator*(const Mat3& x, const Vec3& v) {
  Vec3 out{};
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 3; ++k) out[r] += x.a[r][k] * v[k];
  return out;
}

inline Mat3 transpose(const Mat3& x) {
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m.a[r][c] = x.a[c][r];
  return m;
}

inline double det(const Mat3& x) {
  return x.a[0][0] * (x.a[1][1] * x.a[2][2] - x.a[1][2] * x.a[2][1]) -
         x.a[0][1] * (x.a[1][0] * x.a[2][2] - x.a[1][2] * x.a[2][0]) +
         x.a[0][2] * (x.a[1][0] * x.a[2][1] - x.a[1][1] * x.a[2][0]);
}

inline Mat3 inverse(const Mat3& x) {
  const double d = det(x);
  if (d == 0.0) throw Error("singular 3x3 matrix");
  const double id = 1.0 / d;
  Mat3 m;
  m.a[0][0] = id * (x.a[1][1] * x.a[2][2] - x.a[1][2] * x.a[2][1]);
  m.a[0][1] = id * (x.a[0][2] * x.a[2][1] - x.a[0][1] * x.a[2][2]);
  m.a[0][2] = id * (x.a[0][1] * x.a[1][2] - x.a[0][2] * x.a[1][1]);
  m.a[1][0] = id * (x.a[1][2] * x.a[2][0] - x.a[1][0] * x.a[2][2]);
  m.a[1][1] = id * (x.a[0][0] * x.a[2][2] - x.a[0][2] * x.a[2][0]);
  m.a[1][2] = id * (x.a[0][2] * x.a[1][0] - x.a[0][0] * x.a[1][2]);
  m.a[2][0] = id * (x.a[1][0] * x.a[2][1] - x.a[1][1] * x.a[2][0]);
  m.a[2][1] = id * (x.a[0][1] * x.a[2][0] - x.a[0][0] * x.a[2][1]);
  m.a[2][2] = id * (x.a[0][0] * x.a[1][1] - x.a[0][1] * x.a[1][0]);
  return m;
}

inline double frobenius_norm(const Mat3& x) {
  double s = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) s += x.a[r][c] * x.a[r][c];
  return std::sqrt(s);
}

inline double max_abs(const Mat3& x) {
  double m = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m = std::max(m, std::abs(x.a[r][c]));
  return m;
}

inline bool is_symmetric(const Mat3& x, double tol = 0.0) {
  for (int r = 0; r < 3; ++r)
    for (int c = r + 1; c < 3; ++c)
      if (std::abs(x.a[r][c] - x.a[c][r]) > tol) return false;
  return true;
}

// Positive definiteness via leading principal minors.
inline bool is_positive_definite(const Mat3& x) {
  const double m1 = x.a[0][0];
  const double m2 = x.a[0][0] * x.a[1][1] - x.a[0][1] * x.a[1][0];
  const double m3 = det(x);
  return m1 > 0.0 && m2 > 0.0 && m3 > 0.0;
}

// Levi-Civita symbol.
inline int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  if ((i == 0 && j == 1 && k == 2) || (i == 1 && j == 2 && k == 0) ||
      (i == 2 && j == 0 && k == 1))
    return 1;
  return -1;
}

}  // namespace dislo

#endif  // DISLO_LINALG3_HPP_
