#include "dislo/ops.hpp"

#include <cmath>

#include "dislo/detail/stencil.hpp"
#include "dislo/error.hpp"

namespace dislo {

namespace {

void require_grid(const Field& f, const Chart& chart) {
  if (f.grid() != chart.grid())
    throw Error("field grid does not match chart grid");
}

}  // namespace

Field partial_derivative(const Field& f, const Chart& chart) {
  require_grid(f, chart);
  Signature out_sig = f.sig();
  out_sig.body.push_back(Slot::kBodyCov);
  Field out(out_sig, f.grid());
  const GridSpec& g = f.grid();
  const int nc = f.ncomp();
  for (int i = 0; i < g.dims[0]; ++i)
    for (int j = 0; j < g.dims[1]; ++j)
      for (int k = 0; k < g.dims[2]; ++k) {
        double* o = out.node(g.index(i, j, k));
        for (int c = 0; c < nc; ++c)
          for (int r = 0; r < 3; ++r)
            o[c * 3 + r] = detail::dcomp(f, c, i, j, k, r);
      }
  return out;
}

Field covariant_derivative(const Field& f, const Chart& chart) {
  Field out = partial_derivative(f, chart);
  const Signature& sig = f.sig();
  const int nbody = static_cast<int>(sig.body.size());
  if (nbody == 0) return out;  // only Burgers slots: plain partials

  const GridSpec& g = f.grid();
  const int rank = sig.rank();
  const int nc = sig.ncomp();
  int idx[4];
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const double* in = f.node(n);
    double* o = out.node(n);
    for (int c = 0; c < nc; ++c) {
      detail::decode(c, rank, idx);
      for (int r = 0; r < 3; ++r) {
        double corr = 0.0;
        for (int s = 0; s < nbody; ++s) {
          const int pos = sig.burgers + s;
          const int a = idx[pos];
          if (sig.body[s] == Slot::kBodyCov) {
            // -Gamma^q_{r a} f(...a->q...)
            for (int q = 0; q < 3; ++q) {
              idx[pos] = q;
              corr -= chart.gamma(n, q, r, a) * in[detail::encode(idx, rank)];
            }
          } else {
            // +Gamma^a_{r q} f(...a->q...)
            for (int q = 0; q < 3; ++q) {
              idx[pos] = q;
              corr += chart.gamma(n, a, r, q) * in[detail::encode(idx, rank)];
            }
          }
          idx[pos] = a;
        }
        o[c * 3 + r] += corr;
      }
    }
  }
  return out;
}

Field div_burgers_density(const Field& rho, const Chart& chart) {
  if (rho.sig() != Signature::distortion())
    throw Error("div_burgers_density expects signature (burgers=1, body_cov=1)");
  const Field d = covariant_derivative(rho, chart);  // layout (i, j, k)
  Field out(Signature::burgers_vector(), rho.grid());
  for (std::size_t n = 0; n < rho.node_count(); ++n) {
    const Mat3 gi = chart.metric_inv_at(n);
    const double* p = d.node(n);
    double* o = out.node(n);
    for (int i = 0; i < 3; ++i) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) s += gi.a[k][j] * p[(i * 3 + j) * 3 + k];
      o[i] = s;
    }
  }
  return out;
}

Field rot_distortion(const Field& x, const Chart& chart) {
  if (x.sig() != Signature::distortion())
    throw Error("rot_distortion expects signature (burgers=1, body_cov=1)");
  const Field d = covariant_derivative(x, chart);  // layout (i, m, r)
  Field out(Signature::distortion(), x.grid());
  for (std::size_t n = 0; n < x.node_count(); ++n) {
    const Mat3 gi = chart.metric_inv_at(n);
    const double w = chart.sqrt_det(n);
    // B[k][r][m] = omega_kqp g^qr g^pm
    double B[3][3][3] = {};
    for (int k = 0; k < 3; ++k)
      for (int q = 0; q < 3; ++q)
        for (int p = 0; p < 3; ++p) {
          const int e = levi_civita(k, q, p);
          if (e == 0) continue;
          for (int r = 0; r < 3; ++r)
            for (int m = 0; m < 3; ++m)
              B[k][r][m] += w * e * gi.a[q][r] * gi.a[p][m];
        }
    const double* p = d.node(n);
    double* o = out.node(n);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) {
        double s = 0.0;
        for (int r = 0; r < 3; ++r)
          for (int m = 0; m < 3; ++m) s += B[k][r][m] * p[(i * 3 + m) * 3 + r];
        o[i * 3 + k] = s;
      }
  }
  return out;
}

Field grad_potential(const Field& w, const Chart& chart) {
  if (w.sig() != Signature::burgers_vector())
    throw Error("grad_potential expects signature (burgers=1, body=none)");
  Field out = partial_derivative(w, chart);
  return out;
}

Field invert_pointwise(const Field& that, const Chart& chart,
                       double det_floor) {
  if (that.sig() != Signature::distortion())
    throw Error("invert_pointwise expects a distortion field");
  require_grid(that, chart);
  Field out(Signature::inverse_distortion(), that.grid());
  for (std::size_t n = 0; n < that.node_count(); ++n) {
    const Mat3 t = that.mat(n);
    const double d = det(t);
    if (std::abs(d) < det_floor)
      throw Error("degenerate distortion (|det| = " + std::to_string(std::abs(d)) +
                  " below floor) at " + node_location(that.grid(), n));
    set_shat_mat(out, n, inverse(t));
  }
  return out;
}

Field axpby(double a, const Field& x, double b, const Field& y) {
  if (x.sig() != y.sig() || x.grid() != y.grid())
    throw Error("axpby: shape mismatch");
  Field out(x.sig(), x.grid());
  auto od = out.data();
  auto xd = x.data();
  auto yd = y.data();
  for (std::size_t i = 0; i < od.size(); ++i) od[i] = a * xd[i] + b * yd[i];
  return out;
}

}  // namespace dislo
