#ifndef DISLO_GRID_HPP_
#define DISLO_GRID_HPP_

#include <array>
#include <cstddef>
#include <string>

#include "dislo/error.hpp"
#include "dislo/linalg3.hpp"

namespace dislo {

// Structured rectilinear grid in chart coordinates. Node (i,j,k) sits at
// origin + (i*h1, j*h2, k*h3); the first coordinate direction is slowest
// in the linear node index.
struct GridSpec {
  std::array<int, 3> dims{};
  std::array<double, 3> origin{};
  std::array<double, 3> spacing{};

  void validate() const {
    for (int d = 0; d < 3; ++d) {
      if (dims[d] < 4)
        throw ConfigError("grid extent along axis " + std::to_string(d + 1) +
                          " is " + std::to_string(dims[d]) +
                          "; at least 4 required for the stencil");
      if (!(spacing[d] > 0.0))
        throw ConfigError("grid spacing along axis " + std::to_string(d + 1) +
                          " must be positive");
    }
  }

  std::size_t node_count() const {
    return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
  }

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dims[1] + j) * dims[2] + k;
  }

  std::array<int, 3> unindex(std::size_t n) const {
    const int k = static_cast<int>(n % dims[2]);
    const int j = static_cast<int>((n / dims[2]) % dims[1]);
    const int i = static_cast<int>(n / (static_cast<std::size_t>(dims[1]) * dims[2]));
    return {i, j, k};
  }

  Vec3 coord(int i, int j, int k) const {
    return {origin[0] + i * spacing[0], origin[1] + j * spacing[1],
            origin[2] + k * spacing[2]};
  }
  Vec3 coord(const std::array<int, 3>& ijk) const {
    return coord(ijk[0], ijk[1], ijk[2]);
  }

  Vec3 upper_corner() const {
    return {origin[0] + (dims[0] - 1) * spacing[0],
            origin[1] + (dims[1] - 1) * spacing[1],
            origin[2] + (dims[2] - 1) * spacing[2]};
  }

  bool contains(const Vec3& y, int cell_margin = 0) const {
    for (int d = 0; d < 3; ++d) {
      const double lo = origin[d] + cell_margin * spacing[d];
      const double hi = origin[d] + (dims[d] - 1 - cell_margin) * spacing[d];
      if (y[d] < lo || y[d] > hi) return false;
    }
    return true;
  }

  bool operator==(const GridSpec&) const = default;
};

inline std::string node_location(const GridSpec& g, std::size_t n) {
  const auto ijk = g.unindex(n);
  const Vec3 y = g.coord(ijk);
  return "node (" + std::to_string(ijk[0]) + "," + std::to_string(ijk[1]) +
         "," + std::to_string(ijk[2]) + ") at y=(" + std::to_string(y[0]) +
         "," + std::to_string(y[1]) + "," + std::to_string(y[2]) + ")";
}

}  // namespace dislo

#endif  // DISLO_GRID_HPP_
