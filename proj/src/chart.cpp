#include "dislo/chart.hpp"

#include <cmath>

#include "dislo/detail/stencil.hpp"
#include "dislo/error.hpp"

namespace dislo {

Field christoffel_of_metric(const Field& metric) {
  if (metric.sig() != Signature::body_cov2())
    throw Error("christoffel_of_metric expects a 2-covariant body field");
  const GridSpec& g = metric.grid();
  Field gamma(Signature{{Slot::kBodyContra, Slot::kBodyCov, Slot::kBodyCov}, 0}, g);

  for (int i = 0; i < g.dims[0]; ++i)
    for (int j = 0; j < g.dims[1]; ++j)
      for (int k = 0; k < g.dims[2]; ++k) {
        const std::size_t n = g.index(i, j, k);
        const Mat3 gm = metric.mat(n);
        if (!is_positive_definite(gm))
          throw Error("metric not positive-definite at " + node_location(g, n));
        const Mat3 gi = inverse(gm);
        // dg[a][m][b] = d g_mb / d y^a
        double dg[3][3][3];
        for (int a = 0; a < 3; ++a)
          for (int m = 0; m < 3; ++m)
            for (int b = 0; b < 3; ++b)
              dg[a][m][b] = detail::dcomp(metric, 3 * m + b, i, j, k, a);
        double* out = gamma.node(n);
        for (int q = 0; q < 3; ++q)
          for (int kk = 0; kk < 3; ++kk)
            for (int jj = 0; jj < 3; ++jj) {
              double s = 0.0;
              for (int m = 0; m < 3; ++m)
                s += gi.a[q][m] *
                     (dg[kk][m][jj] + dg[jj][m][kk] - dg[m][kk][jj]);
              out[(q * 3 + kk) * 3 + jj] = 0.5 * s;
            }
      }
  gamma.check_finite("christoffel_of_metric");
  return gamma;
}

void Chart::build() {
  grid_.validate();
  metric_inv_ = Field(Signature{{Slot::kBodyContra, Slot::kBodyContra}, 0}, grid_);
  sqrt_det_.resize(grid_.node_count());
  for (std::size_t n = 0; n < grid_.node_count(); ++n) {
    const Mat3 gm = metric_.mat(n);
    if (!is_symmetric(gm, 1e-13))
      throw Error("metric not symmetric at " + node_location(grid_, n));
    if (!is_positive_definite(gm))
      throw Error("metric not positive-definite at " + node_location(grid_, n));
    metric_inv_.set_mat(n, inverse(gm));
    sqrt_det_[n] = std::sqrt(det(gm));
  }
  christoffel_ = christoffel_of_metric(metric_);
}

Chart Chart::cartesian(const GridSpec& grid) {
  Chart c;
  c.kind_ = ChartKind::kCartesian;
  c.grid_ = grid;
  c.metric_ = Field(Signature::body_cov2(), grid);
  for (std::size_t n = 0; n < grid.node_count(); ++n)
    c.metric_.set_mat(n, Mat3::identity());
  c.build();
  return c;
}

Chart Chart::cylindrical(const GridSpec& grid, double r_min) {
  if (grid.origin[0] < r_min)
    throw ConfigError("cylindrical chart requires y1 >= " + std::to_string(r_min) +
                      " (axis excluded)");
  Chart c;
  c.kind_ = ChartKind::kCylindrical;
  c.grid_ = grid;
  c.metric_ = Field(Signature::body_cov2(), grid);
  for (int i = 0; i < grid.dims[0]; ++i)
    for (int j = 0; j < grid.dims[1]; ++j)
      for (int k = 0; k < grid.dims[2]; ++k) {
        const double r = grid.coord(i, j, k)[0];
        c.metric_.set_mat(grid.index(i, j, k), Mat3::diag(1.0, r * r, 1.0));
      }
  c.build();
  return c;
}

Chart Chart::custom(const GridSpec& grid,
                    const std::array<std::string, 6>& metric_exprs) {
  Chart c;
  c.kind_ = ChartKind::kCustom;
  c.grid_ = grid;
  c.metric_ = Field(Signature::body_cov2(), grid);
  std::array<Expr, 6> exprs;
  for (int e = 0; e < 6; ++e) exprs[e] = Expr::parse(metric_exprs[e]);
  // Upper-triangle order g11, g12, g13, g22, g23, g33.
  const int rows[6] = {0, 0, 0, 1, 1, 2};
  const int cols[6] = {0, 1, 2, 1, 2, 2};
  for (int i = 0; i < grid.dims[0]; ++i)
    for (int j = 0; j < grid.dims[1]; ++j)
      for (int k = 0; k < grid.dims[2]; ++k) {
        const Vec3 y = grid.coord(i, j, k);
        Mat3 gm;
        for (int e = 0; e < 6; ++e) {
          const double v = exprs[e].eval(y);
          gm.a[rows[e]][cols[e]] = v;
          gm.a[cols[e]][rows[e]] = v;
        }
        c.metric_.set_mat(grid.index(i, j, k), gm);
      }
  c.build();
  return c;
}

Mat3 Chart::metric_interp(const Vec3& y) const {
  // Points slightly outside the grid (displaced boundary nodes) fall back to
  // trilinear extrapolation from the nearest cell: exact for constant
  // metrics and second-order for smooth ones, so boundary displacement does
  // not poison the interior norms.
  std::array<int, 3> cell;
  std::array<double, 3> f;
  for (int d = 0; d < 3; ++d) {
    const double u = (y[d] - grid_.origin[d]) / grid_.spacing[d];
    int c = static_cast<int>(std::floor(u));
    c = std::max(0, std::min(c, grid_.dims[d] - 2));
    cell[d] = c;
    f[d] = u - c;
  }
  Mat3 out{};
  for (int di = 0; di < 2; ++di)
    for (int dj = 0; dj < 2; ++dj)
      for (int dk = 0; dk < 2; ++dk) {
        const double w = (di ? f[0] : 1.0 - f[0]) * (dj ? f[1] : 1.0 - f[1]) *
                         (dk ? f[2] : 1.0 - f[2]);
        const Mat3 gm =
            metric_.mat(grid_.index(cell[0] + di, cell[1] + dj, cell[2] + dk));
        out = out + w * gm;
      }
  return out;
}

Vec3 Chart::embed(const Vec3& y) const {
  switch (kind_) {
    case ChartKind::kCartesian:
      return y;
    case ChartKind::kCylindrical:
      return {y[0] * std::cos(y[1]), y[0] * std::sin(y[1]), y[2]};
    case ChartKind::kCustom:
      break;
  }
  throw Error("chart has no embedding into physical space");
}

Mat3 Chart::embed_jacobian(const Vec3& y) const {
  switch (kind_) {
    case ChartKind::kCartesian:
      return Mat3::identity();
    case ChartKind::kCylindrical: {
      const double c = std::cos(y[1]), s = std::sin(y[1]);
      Mat3 m;
      m.a[0][0] = c;
      m.a[0][1] = -y[0] * s;
      m.a[1][0] = s;
      m.a[1][1] = y[0] * c;
      m.a[2][2] = 1.0;
      return m;
    }
    case ChartKind::kCustom:
      break;
  }
  throw Error("chart has no embedding into physical space");
}

Vec3 Chart::unembed(const Vec3& x) const {
  switch (kind_) {
    case ChartKind::kCartesian:
      return x;
    case ChartKind::kCylindrical: {
      const double r = std::hypot(x[0], x[1]);
      double phi = std::atan2(x[1], x[0]);
      // Pick the 2*pi branch closest to the grid's angular window.
      const double lo = grid_.origin[1];
      const double hi = grid_.origin[1] + (grid_.dims[1] - 1) * grid_.spacing[1];
      const double mid = 0.5 * (lo + hi);
      phi += 2.0 * M_PI * std::round((mid - phi) / (2.0 * M_PI));
      return {r, phi, x[2]};
    }
    case ChartKind::kCustom:
      break;
  }
  throw Error("chart has no embedding into physical space");
}

Field volume_tensor(const Chart& chart) {
  Field omega(
      Signature{{Slot::kBodyCov, Slot::kBodyCov, Slot::kBodyCov}, 0},
      chart.grid());
  for (std::size_t n = 0; n < chart.grid().node_count(); ++n) {
    double* p = omega.node(n);
    for (int k = 0; k < 3; ++k)
      for (int q = 0; q < 3; ++q)
        for (int r = 0; r < 3; ++r) p[(k * 3 + q) * 3 + r] = chart.volume(n, k, q, r);
  }
  return omega;
}

namespace {

Field contract_slot(const Field& f, int slot, const Chart& chart, bool raise) {
  const Signature& sig = f.sig();
  const int nbody = static_cast<int>(sig.body.size());
  if (slot < 0 || slot >= nbody)
    throw Error("index slot " + std::to_string(slot) +
                " out of range (field has " + std::to_string(nbody) +
                " body slots; Burgers slots are never raised or lowered)");
  const Slot want = raise ? Slot::kBodyCov : Slot::kBodyContra;
  if (sig.body[slot] != want)
    throw Error(raise ? "raise_index: slot is already contravariant"
                      : "lower_index: slot is already covariant");
  if (f.grid() != chart.grid())
    throw Error("field grid does not match chart grid");

  Signature out_sig = sig;
  out_sig.body[slot] = raise ? Slot::kBodyContra : Slot::kBodyCov;
  Field out(out_sig, f.grid());

  const int rank = sig.rank();
  const int nc = sig.ncomp();
  // Position of this body slot within the full tuple (Burgers slots first).
  const int pos = sig.burgers + slot;
  int idx[4];
  for (std::size_t n = 0; n < f.node_count(); ++n) {
    const Mat3 gm = raise ? chart.metric_inv_at(n) : chart.metric_at(n);
    const double* in = f.node(n);
    double* o = out.node(n);
    for (int c = 0; c < nc; ++c) {
      detail::decode(c, rank, idx);
      const int a = idx[pos];
      double s = 0.0;
      for (int b = 0; b < 3; ++b) {
        idx[pos] = b;
        s += gm.a[a][b] * in[detail::encode(idx, rank)];
      }
      o[c] = s;
    }
  }
  return out;
}

}  // namespace

Field raise_index(const Field& f, int slot, const Chart& chart) {
  return contract_slot(f, slot, chart, true);
}

Field lower_index(const Field& f, int slot, const Chart& chart) {
  return contract_slot(f, slot, chart, false);
}

}  // namespace dislo
