#include "dislo/interp.hpp"

#include <cmath>

#include "dislo/error.hpp"

namespace dislo {

void sample_field(const Field& f, const Vec3& y, std::span<double> out) {
  const GridSpec& g = f.grid();
  if (!g.contains(y))
    throw Error("sample point (" + std::to_string(y[0]) + "," +
                std::to_string(y[1]) + "," + std::to_string(y[2]) +
                ") leaves the grid");
  std::array<int, 3> cell;
  std::array<double, 3> fr;
  for (int d = 0; d < 3; ++d) {
    const double u = (y[d] - g.origin[d]) / g.spacing[d];
    int c = static_cast<int>(std::floor(u));
    c = std::max(0, std::min(c, g.dims[d] - 2));
    cell[d] = c;
    fr[d] = u - c;
  }
  const int nc = f.ncomp();
  for (int c = 0; c < nc; ++c) out[c] = 0.0;
  for (int di = 0; di < 2; ++di)
    for (int dj = 0; dj < 2; ++dj)
      for (int dk = 0; dk < 2; ++dk) {
        const double w = (di ? fr[0] : 1.0 - fr[0]) *
                         (dj ? fr[1] : 1.0 - fr[1]) *
                         (dk ? fr[2] : 1.0 - fr[2]);
        const double* p =
            f.node(g.index(cell[0] + di, cell[1] + dj, cell[2] + dk));
        for (int c = 0; c < nc; ++c) out[c] += w * p[c];
      }
}

Mat3 sample_mat(const Field& f, const Vec3& y) {
  double buf[9];
  sample_field(f, y, std::span<double>(buf, 9));
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m.a[r][c] = buf[3 * r + c];
  return m;
}

Vec3 sample_vec(const Field& f, const Vec3& y) {
  double buf[3];
  sample_field(f, y, std::span<double>(buf, 3));
  return {buf[0], buf[1], buf[2]};
}

}  // namespace dislo
