#ifndef DISLO_DETAIL_STENCIL_HPP_
#define DISLO_DETAIL_STENCIL_HPP_

#include <array>

#include "dislo/field.hpp"

namespace dislo::detail {

// 2nd-order partial derivative of component c along `axis`: centered in the
// interior, one-sided at the two boundary layers.
inline double dcomp(const Field& f, int c, int i, int j, int k, int axis) {
  const GridSpec& g = f.grid();
  const double inv2h = 0.5 / g.spacing[axis];
  std::array<int, 3> a{i, j, k};
  const int n = g.dims[axis];
  const int p = a[axis];
  auto val = [&](int q) {
    std::array<int, 3> b = a;
    b[axis] = q;
    return f.at(g.index(b[0], b[1], b[2]), c);
  };
  if (p == 0) return inv2h * (-3.0 * val(0) + 4.0 * val(1) - val(2));
  if (p == n - 1)
    return inv2h * (3.0 * val(n - 1) - 4.0 * val(n - 2) + val(n - 3));
  return inv2h * (val(p + 1) - val(p - 1));
}

// Decode a linear component index into its index tuple (slowest first).
inline void decode(int comp, int rank, int* idx) {
  for (int s = rank - 1; s >= 0; --s) {
    idx[s] = comp % 3;
    comp /= 3;
  }
}

inline int encode(const int* idx, int rank) {
  int c = 0;
  for (int s = 0; s < rank; ++s) c = c * 3 + idx[s];
  return c;
}

}  // namespace dislo::detail

#endif  // DISLO_DETAIL_STENCIL_HPP_
