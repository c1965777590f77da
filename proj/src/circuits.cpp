#include "dislo/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dislo/error.hpp"
#include "dislo/interp.hpp"

namespace dislo {

namespace {

// Orthonormal frame (e1, e2, n) with n along axis.
void plane_frame(const Vec3& axis, Vec3& e1, Vec3& e2, Vec3& n) {
  n = normalized(axis);
  const Vec3 seed = std::abs(n[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  e1 = normalized(seed - dot(seed, n) * n);
  e2 = cross(n, e1);
}

void check_inside(const GridSpec& g, const Vec3& p) {
  if (!g.contains(p, 1))
    throw Error("contour point (" + std::to_string(p[0]) + "," +
                std::to_string(p[1]) + "," + std::to_string(p[2]) +
                ") leaves the grid (one-cell margin required)");
}

// Line integral sum of M(y)^i_j dy^j over the closed polygon through `pts`.
// Per-segment trapezoid; segment contributions are accumulated in an
// orientation-independent order so that reversing the contour negates the
// result bit-for-bit.
BurgersVector polygon_integral(const Field& f, const std::vector<Vec3>& pts,
                               const Chart& chart) {
  const std::size_t n = pts.size();
  std::vector<Mat3> vals(n);
  for (std::size_t s = 0; s < n; ++s) {
    check_inside(chart.grid(), pts[s]);
    vals[s] = sample_mat(f, pts[s]);
  }
  struct Term {
    Vec3 mid;
    Vec3 contrib;
  };
  std::vector<Term> terms(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t t = (s + 1) % n;
    const Vec3 dy = pts[t] - pts[s];
    const Mat3 avg = 0.5 * (vals[s] + vals[t]);
    terms[s].mid = 0.5 * (pts[s] + pts[t]);
    terms[s].contrib = avg * dy;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Vec3& u = terms[a].mid;
    const Vec3& v = terms[b].mid;
    if (u[0] != v[0]) return u[0] < v[0];
    if (u[1] != v[1]) return u[1] < v[1];
    return u[2] < v[2];
  });
  BurgersVector b{};
  for (std::size_t s : order) b = b + terms[s].contrib;
  return b;
}

}  // namespace

Contour Contour::from_points(std::vector<Vec3> pts) {
  if (pts.size() < 8)
    throw ConfigError("contour needs at least 8 points");
  for (std::size_t s = 0; s < pts.size(); ++s) {
    const Vec3 d = pts[(s + 1) % pts.size()] - pts[s];
    if (norm(d) == 0.0)
      throw ConfigError("contour has duplicated consecutive points");
  }
  Contour c;
  c.points = std::move(pts);
  return c;
}

Contour Contour::circle(const Vec3& center, double radius, const Vec3& axis,
                        int n) {
  return ellipse(center, radius, radius, axis, n);
}

Contour Contour::ellipse(const Vec3& center, double a, double b,
                         const Vec3& axis, int n) {
  if (n < 8) throw ConfigError("contour needs at least 8 points");
  Vec3 e1, e2, nn;
  plane_frame(axis, e1, e2, nn);
  std::vector<Vec3> pts(n);
  for (int s = 0; s < n; ++s) {
    const double ang = 2.0 * M_PI * s / n;
    pts[s] = center + (a * std::cos(ang)) * e1 + (b * std::sin(ang)) * e2;
  }
  return from_points(std::move(pts));
}

Contour Contour::rectangle(const Vec3& center, double half1, double half2,
                           const Vec3& axis, int per_side) {
  if (per_side < 2) throw ConfigError("rectangle needs at least 2 points per side");
  Vec3 e1, e2, nn;
  plane_frame(axis, e1, e2, nn);
  std::vector<Vec3> pts;
  pts.reserve(4 * per_side);
  const Vec3 c0 = center - half1 * e1 - half2 * e2;
  const Vec3 c1 = center + half1 * e1 - half2 * e2;
  const Vec3 c2 = center + half1 * e1 + half2 * e2;
  const Vec3 c3 = center - half1 * e1 + half2 * e2;
  const Vec3 corners[4] = {c0, c1, c2, c3};
  for (int side = 0; side < 4; ++side) {
    const Vec3& a = corners[side];
    const Vec3& b = corners[(side + 1) % 4];
    for (int s = 0; s < per_side; ++s) {
      const double u = static_cast<double>(s) / per_side;
      pts.push_back(a + u * (b - a));
    }
  }
  return from_points(std::move(pts));
}

double Contour::length() const {
  double L = 0.0;
  for (std::size_t s = 0; s < points.size(); ++s)
    L += norm(points[(s + 1) % points.size()] - points[s]);
  return L;
}

Contour Contour::resampled(int n) const {
  if (n < 8) throw ConfigError("contour resampling needs at least 8 samples");
  const std::size_t np = points.size();
  std::vector<double> cum(np + 1, 0.0);
  for (std::size_t s = 0; s < np; ++s)
    cum[s + 1] = cum[s] + norm(points[(s + 1) % np] - points[s]);
  const double L = cum[np];
  std::vector<Vec3> out(n);
  std::size_t seg = 0;
  for (int s = 0; s < n; ++s) {
    const double target = L * s / n;
    while (seg + 1 < np && cum[seg + 1] < target) ++seg;
    const double seg_len = cum[seg + 1] - cum[seg];
    const double u = seg_len > 0.0 ? (target - cum[seg]) / seg_len : 0.0;
    const Vec3& a = points[seg];
    const Vec3& b = points[(seg + 1) % np];
    out[s] = a + u * (b - a);
  }
  Contour c;
  c.points = std::move(out);
  return c;
}

Contour Contour::reversed() const {
  Contour c;
  c.points.assign(points.rbegin(), points.rend());
  return c;
}

SurfacePatch SurfacePatch::disk(const Vec3& center, double radius,
                                const Vec3& axis, int rings) {
  if (rings < 2) throw ConfigError("disk needs at least 2 rings");
  Vec3 e1, e2, n;
  plane_frame(axis, e1, e2, n);
  const int nang = std::max(16, 4 * rings);
  SurfacePatch sp;
  sp.vertices.push_back(center);
  for (int m = 1; m <= rings; ++m) {
    const double r = radius * m / rings;
    for (int s = 0; s < nang; ++s) {
      const double ang = 2.0 * M_PI * s / nang;
      sp.vertices.push_back(center + (r * std::cos(ang)) * e1 +
                            (r * std::sin(ang)) * e2);
    }
  }
  auto vid = [&](int m, int s) { return 1 + (m - 1) * nang + (s % nang); };
  // Counterclockwise winding about the axis -> normals along +axis.
  for (int s = 0; s < nang; ++s)
    sp.triangles.push_back({0, vid(1, s), vid(1, s + 1)});
  for (int m = 1; m < rings; ++m)
    for (int s = 0; s < nang; ++s) {
      sp.triangles.push_back({vid(m, s), vid(m + 1, s), vid(m + 1, s + 1)});
      sp.triangles.push_back({vid(m, s), vid(m + 1, s + 1), vid(m, s + 1)});
    }
  std::vector<Vec3> bpts(nang);
  for (int s = 0; s < nang; ++s) bpts[s] = sp.vertices[vid(rings, s)];
  sp.boundary = Contour::from_points(std::move(bpts));
  return sp;
}

BurgersVector circuit_integral(const Field& that, const Contour& contour,
                               const Chart& chart, int samples) {
  if (that.sig() != Signature::distortion())
    throw Error("circuit_integral expects a distortion field");
  const Contour c = static_cast<int>(contour.points.size()) == samples
                        ? contour
                        : contour.resampled(samples);
  return polygon_integral(that, c.points, chart);
}

BurgersVector surface_flux(const Field& rho, const SurfacePatch& surface,
                           const Chart& chart) {
  if (rho.sig() != Signature::distortion())
    throw Error("surface_flux expects signature (burgers=1, body_cov=1)");
  BurgersVector b{};
  for (const auto& tri : surface.triangles) {
    const Vec3& a = surface.vertices[tri[0]];
    const Vec3& p = surface.vertices[tri[1]];
    const Vec3& q = surface.vertices[tri[2]];
    const Vec3 e1 = p - a;
    const Vec3 e2 = q - a;
    if (0.5 * norm(cross(e1, e2)) < 1e-14)
      throw Error("degenerate triangle in surface patch (area below 1e-14)");
    const Vec3 centroid = (1.0 / 3.0) * (a + p + q);
    check_inside(chart.grid(), centroid);
    const Mat3 g = chart.metric_interp(centroid);
    const Mat3 gi = inverse(g);
    const double w = std::sqrt(det(g));
    // Covariant surface element dS_m = 1/2 omega_mkl e1^k e2^l.
    Vec3 ds{};
    for (int m = 0; m < 3; ++m)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          ds[m] += 0.5 * w * levi_civita(m, k, l) * e1[k] * e2[l];
    const Mat3 r = sample_mat(rho, centroid);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m) b[i] += r.a[i][j] * gi.a[j][m] * ds[m];
  }
  return b;
}

BurgersVector flux_rate(const Field& current, const Contour& contour,
                        const Chart& chart, int samples) {
  const BurgersVector b = circuit_integral(current, contour, chart, samples);
  return {-b[0], -b[1], -b[2]};
}

double kirchhoff_residual(const BurgersVector& b1, const BurgersVector& b2,
                          const BurgersVector& b3) {
  return norm(b1 - b2 - b3);
}

}  // namespace dislo
