#ifndef DISLO_CHART_HPP_
#define DISLO_CHART_HPP_

#include <array>
#include <string>
#include <vector>

#include "dislo/expr.hpp"
#include "dislo/field.hpp"
#include "dislo/grid.hpp"

namespace dislo {

enum class ChartKind { kCartesian, kCylindrical, kCustom };

// Constant metric of the Burgers space. Cartesian coordinates are fixed
// there, so the components never vary over the domain.
struct BurgersMetric {
  Mat3 components = Mat3::identity();

  void validate() const {
    if (!is_symmetric(components, 1e-14) || !is_positive_definite(components))
      throw ConfigError("Burgers-space metric must be symmetric positive-definite");
  }
};

// Christoffel symbols of the Levi-Civita connection of a sampled metric,
// via 2nd-order finite differences of the metric components. The returned
// field has layout (q,k,j) row-major per node, symmetric in (k,j).
Field christoffel_of_metric(const Field& metric);

// Curvilinear coordinate chart on a structured grid: metric, inverse metric,
// Christoffel symbols and sqrt(det g) precomputed per node. Immutable after
// construction.
class Chart {
 public:
  static Chart cartesian(const GridSpec& grid);
  // Coordinates (r, phi, z) with metric diag(1, r^2, 1); the grid must keep
  // r = y1 >= r_min away from the axis.
  static Chart cylindrical(const GridSpec& grid, double r_min = 0.25);
  // Metric given by six expressions in y1,y2,y3 for the upper triangle
  // (g11, g12, g13, g22, g23, g33).
  static Chart custom(const GridSpec& grid,
                      const std::array<std::string, 6>& metric_exprs);

  ChartKind kind() const { return kind_; }
  const GridSpec& grid() const { return grid_; }
  const Field& metric() const { return metric_; }
  const Field& metric_inv() const { return metric_inv_; }
  const Field& christoffel() const { return christoffel_; }

  Mat3 metric_at(std::size_t n) const { return metric_.mat(n); }
  Mat3 metric_inv_at(std::size_t n) const { return metric_inv_.mat(n); }
  double sqrt_det(std::size_t n) const { return sqrt_det_[n]; }

  double gamma(std::size_t n, int q, int k, int j) const {
    return christoffel_.at(n, (q * 3 + k) * 3 + j);
  }
  // Volume tensor omega_kqp = sqrt(det g) * epsilon_kqp.
  double volume(std::size_t n, int k, int q, int p) const {
    return sqrt_det_[n] * levi_civita(k, q, p);
  }

  // Trilinear interpolation of the metric at an arbitrary chart point;
  // points outside the grid extrapolate from the nearest cell.
  Mat3 metric_interp(const Vec3& y) const;

  // Embedding into Cartesian physical space; available for the cartesian
  // and cylindrical kinds (used by analytic fixtures and covariance tests).
  bool has_embedding() const { return kind_ != ChartKind::kCustom; }
  Vec3 embed(const Vec3& y) const;
  Mat3 embed_jacobian(const Vec3& y) const;  // dx/dy
  // Inverse of embed(); for the cylindrical chart the angle branch is chosen
  // inside the grid's angular window.
  Vec3 unembed(const Vec3& x) const;

 private:
  Chart() = default;
  void build();

  ChartKind kind_ = ChartKind::kCartesian;
  GridSpec grid_{{4, 4, 4}, {0, 0, 0}, {1, 1, 1}};
  Field metric_, metric_inv_, christoffel_;
  std::vector<double> sqrt_det_;
};

// The volume tensor as an explicit rank-3 field (layout (k,q,p) per node).
Field volume_tensor(const Chart& chart);

// Raise (lower) the given covariant (contravariant) body slot with the
// chart metric. `slot` counts body slots only, in signature order.
Field raise_index(const Field& f, int slot, const Chart& chart);
Field lower_index(const Field& f, int slot, const Chart& chart);

}  // namespace dislo

#endif  // DISLO_CHART_HPP_
