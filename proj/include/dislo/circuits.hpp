#ifndef DISLO_CIRCUITS_HPP_
#define DISLO_CIRCUITS_HPP_

#include <vector>

#include "dislo/chart.hpp"
#include "dislo/field.hpp"

namespace dislo {

using BurgersVector = Vec3;

// Closed polyline in chart coordinates; the last point connects back to the
// first (no duplicated endpoint). Orientation is the point order.
struct Contour {
  std::vector<Vec3> points;

  static Contour from_points(std::vector<Vec3> pts);
  static Contour circle(const Vec3& center, double radius, const Vec3& axis,
                        int n = 64);
  static Contour ellipse(const Vec3& center, double a, double b,
                         const Vec3& axis, int n = 64);
  static Contour rectangle(const Vec3& center, double half1, double half2,
                           const Vec3& axis, int per_side = 16);

  // Uniform chart-coordinate arc-length resampling to n points.
  Contour resampled(int n) const;
  Contour reversed() const;
  double length() const;
};

// Triangulated surface with consistent winding; boundary is the induced
// closed contour.
struct SurfacePatch {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  Contour boundary;

  // Disk of the given radius about `center`, normal along `axis` (right-hand
  // rule ties the boundary orientation to the normal).
  static SurfacePatch disk(const Vec3& center, double radius, const Vec3& axis,
                           int rings = 32);
};

// Line integral of T-hat along the contour (trilinear interpolation +
// composite trapezoid); the Burgers vector of the enclosed dislocations.
BurgersVector circuit_integral(const Field& that, const Contour& contour,
                               const Chart& chart, int samples = 512);

// Flux of the Burgers-vector density through the surface (per-triangle
// midpoint rule with the metric surface measure).
BurgersVector surface_flux(const Field& rho, const SurfacePatch& surface,
                           const Chart& chart);

// db/dt = -closed line integral of the Burgers current.
BurgersVector flux_rate(const Field& current, const Contour& contour,
                        const Chart& chart, int samples = 512);

// ||b1 - b2 - b3|| in the Burgers-space Euclidean norm.
double kirchhoff_residual(const BurgersVector& b1, const BurgersVector& b2,
                          const BurgersVector& b3);

}  // namespace dislo

#endif  // DISLO_CIRCUITS_HPP_
