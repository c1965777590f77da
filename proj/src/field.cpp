#include "dislo/field.hpp"

#include <cmath>

#include "dislo/error.hpp"

namespace dislo {

void Field::check_finite(const char* what) const {
  const int nc = ncomp();
  for (std::size_t n = 0; n < node_count(); ++n) {
    const double* p = node(n);
    for (int c = 0; c < nc; ++c) {
      if (!std::isfinite(p[c]))
        throw Error(std::string(what) + ": non-finite component " +
                    std::to_string(c) + " at " + node_location(grid_, n));
    }
  }
}

Norms field_norms(const Field& f, int shrink) {
  const GridSpec& g = f.grid();
  const int nc = f.ncomp();
  double sum = 0.0, mx = 0.0;
  std::size_t count = 0;
  for (int i = shrink; i < g.dims[0] - shrink; ++i)
    for (int j = shrink; j < g.dims[1] - shrink; ++j)
      for (int k = shrink; k < g.dims[2] - shrink; ++k) {
        const double* p = f.node(g.index(i, j, k));
        for (int c = 0; c < nc; ++c) {
          const double v = p[c];
          sum += v * v;
          mx = std::max(mx, std::abs(v));
          ++count;
        }
      }
  Norms n;
  n.max = mx;
  n.l2 = count ? std::sqrt(sum / static_cast<double>(count)) : 0.0;
  return n;
}

}  // namespace dislo
