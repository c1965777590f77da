#include "dislo/kinematics.hpp"

#include <cmath>

#include "dislo/detail/stencil.hpp"
#include "dislo/error.hpp"
#include "dislo/interp.hpp"

namespace dislo {

MotionState sample_motion_state(const ManufacturedMotion& motion, double t,
                                const Chart& chart) {
  if (!chart.has_embedding())
    throw Error("manufactured motions need a chart with a physical embedding");
  const GridSpec& g = chart.grid();
  MotionState st;
  st.time = t;
  st.displacement = Field(Signature::body_vector(), g);
  st.velocity = Field(Signature::body_vector(), g);
  st.that = Field(Signature::distortion(), g);
  st.shat = Field(Signature::inverse_distortion(), g);
  st.current = Field(Signature::distortion(), g);
  st.potential = Field(Signature::burgers_vector(), g);
  st.ttilde = Field(Signature::body_mixed(), g);

  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const Vec3 y = g.coord(g.unindex(n));
    const Vec3 x = chart.embed(y);
    const Mat3 jac = chart.embed_jacobian(y);
    const Mat3 jac_inv = inverse(jac);

    const Vec3 xt = motion.inverse_map(t, x);
    const Vec3 yt = chart.unembed(xt);
    st.displacement.set_vec(n, yt);
    st.velocity.set_vec(n, jac_inv * motion.velocity(t, x));
    const Mat3 that_chart = motion.that(t, x) * jac;
    st.that.set_mat(n, that_chart);
    set_shat_mat(st.shat, n, inverse(that_chart));
    st.current.set_mat(n, motion.current(t, x) * jac);
    st.potential.set_vec(n, motion.potential(t, x));
    // Ttilde^i_j = d ytilde^i / d y^j via the chain rule through the
    // embeddings of both configurations.
    const Mat3 jac_at_image = chart.embed_jacobian(yt);
    st.ttilde.set_mat(n, inverse(jac_at_image) * motion.ttilde(t, x) * jac);
  }
  return st;
}

std::pair<Field, Field> jacobians_of_motion(const MotionState& state,
                                            const Chart& chart) {
  const GridSpec& g = chart.grid();
  if (state.displacement.grid() != g)
    throw Error("motion state not sampled on this chart");
  Field ttilde(Signature::body_mixed(), g);
  Field stilde(Signature::body_mixed(), g);
  for (int i = 0; i < g.dims[0]; ++i)
    for (int j = 0; j < g.dims[1]; ++j)
      for (int k = 0; k < g.dims[2]; ++k) {
        const std::size_t n = g.index(i, j, k);
        Mat3 tt;
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c)
            tt.a[r][c] = detail::dcomp(state.displacement, r, i, j, k, c);
        if (det(tt) == 0.0)
          throw Error("singular displacement Jacobian at " + node_location(g, n));
        ttilde.set_mat(n, tt);
        stilde.set_mat(n, inverse(tt));
      }
  return {std::move(ttilde), std::move(stilde)};
}

Field total_deformation(const MotionState& state, const Chart& chart) {
  const GridSpec& g = chart.grid();
  const Field& tt = state.ttilde;
  Field out(Signature::body_cov2(), g);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const Vec3 yt = state.displacement.vec(n);
    const Mat3 gm = chart.metric_interp(yt);
    const Mat3 t = tt.mat(n);
    out.set_mat(n, transpose(t) * gm * t);
  }
  return out;
}

Field elastic_deformation(const Field& that, const BurgersMetric& burgers_metric) {
  if (that.sig() != Signature::distortion())
    throw Error("elastic_deformation expects a distortion field");
  Field out(Signature::body_cov2(), that.grid());
  for (std::size_t n = 0; n < that.node_count(); ++n) {
    const Mat3 t = that.mat(n);
    out.set_mat(n, transpose(t) * burgers_metric.components * t);
  }
  return out;
}

Field plastic_deformation(const Field& shat, const Field& t_compatible) {
  if (shat.sig() != Signature::inverse_distortion() ||
      t_compatible.sig() != Signature::distortion())
    throw Error("plastic_deformation expects (Shat, compatible T)");
  Field out(Signature::body_mixed(), shat.grid());
  for (std::size_t n = 0; n < shat.node_count(); ++n)
    out.set_mat(n, shat_mat(shat, n) * t_compatible.mat(n));
  return out;
}

Field compatible_distortion(const Field& ttilde, const Mat3& tstar) {
  if (ttilde.sig() != Signature::body_mixed())
    throw Error("compatible_distortion expects the Jacobian field Ttilde");
  Field out(Signature::distortion(), ttilde.grid());
  for (std::size_t n = 0; n < ttilde.node_count(); ++n)
    out.set_mat(n, tstar * ttilde.mat(n));
  return out;
}

DeformationSet make_deformations(const Field& that, const Field& ttilde,
                                 const Mat3& tstar,
                                 const BurgersMetric& burgers_metric,
                                 const Chart& chart) {
  (void)chart;
  DeformationSet set;
  const Field t_comp = compatible_distortion(ttilde, tstar);
  set.total = elastic_deformation(t_comp, burgers_metric);  // G = T^T gstar T
  set.elastic = elastic_deformation(that, burgers_metric);
  Field shat(Signature::inverse_distortion(), that.grid());
  for (std::size_t n = 0; n < that.node_count(); ++n)
    set_shat_mat(shat, n, inverse(that.mat(n)));
  set.plastic = plastic_deformation(shat, t_comp);
  return set;
}

Field theta_tensor(const MotionState& state, const Chart& chart,
                   bool explicit_christoffel_path) {
  const GridSpec& g = chart.grid();
  const Field dv = explicit_christoffel_path
                       ? partial_derivative(state.velocity, chart)
                       : covariant_derivative(state.velocity, chart);
  const Field dw = grad_potential(state.potential, chart);
  const Field dt = explicit_christoffel_path
                       ? partial_derivative(state.that, chart)
                       : covariant_derivative(state.that, chart);
  Field theta(Signature::body_mixed(), g);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const Mat3 sh = shat_mat(state.shat, n);
    const Mat3 jj = state.current.mat(n);
    const Vec3 v = state.velocity.vec(n);
    const double* pdv = dv.node(n);   // (k, r)
    const double* pdw = dw.node(n);   // (q, r)
    const double* pdt = dt.node(n);   // (q, r, p)
    Mat3 th;
    for (int k = 0; k < 3; ++k)
      for (int r = 0; r < 3; ++r) {
        double s = pdv[k * 3 + r];
        for (int q = 0; q < 3; ++q) {
          s -= sh.a[k][q] * (jj.a[q][r] + pdw[q * 3 + r]);
          for (int p = 0; p < 3; ++p)
            s += v[p] * sh.a[k][q] * pdt[(q * 3 + r) * 3 + p];
        }
        th.a[k][r] = s;
      }
    if (explicit_christoffel_path) {
      // Add the connection terms of the covariant form one by one; they
      // cancel pairwise because Shat * That = identity.
      const Mat3 tm = state.that.mat(n);
      for (int k = 0; k < 3; ++k)
        for (int r = 0; r < 3; ++r) {
          double corr = 0.0;
          for (int p = 0; p < 3; ++p) corr += chart.gamma(n, k, r, p) * v[p];
          for (int q = 0; q < 3; ++q)
            for (int p = 0; p < 3; ++p)
              for (int mm = 0; mm < 3; ++mm)
                corr -= v[p] * shat_mat(state.shat, n).a[k][q] *
                        chart.gamma(n, mm, r, p) * tm.a[q][mm];
          th.a[k][r] += corr;
        }
    }
    theta.set_mat(n, th);
  }
  return theta;
}

double isometry_residual(const Mat3& tstar, const BurgersMetric& burgers_metric,
                         const Chart& chart) {
  double worst = 0.0;
  for (std::size_t n = 0; n < chart.grid().node_count(); ++n) {
    const Mat3 lhs = chart.metric_at(n);
    const Mat3 rhs = transpose(tstar) * burgers_metric.components * tstar;
    worst = std::max(worst, max_abs(lhs - rhs));
  }
  return worst;
}

namespace {

Field plastic_of_state(const MotionState& st) {
  const Field t_comp = compatible_distortion(st.ttilde, st.tstar);
  return plastic_deformation(st.shat, t_comp);
}

}  // namespace

Norms evolution_residual(std::span<const MotionState, 3> states,
                         EvolutionEq which, const Chart& chart) {
  const double dt1 = states[1].time - states[0].time;
  const double dt2 = states[2].time - states[1].time;
  if (!(dt1 > 0.0) || std::abs(dt1 - dt2) > 1e-12 * dt1)
    throw Error("evolution_residual requires equally spaced snapshots");
  const double inv2dt = 0.5 / dt1;
  const MotionState& mid = states[1];
  const GridSpec& g = chart.grid();

  Field tensor_prev, tensor_mid, tensor_next;
  switch (which) {
    case EvolutionEq::kTotal:
      tensor_prev = total_deformation(states[0], chart);
      tensor_mid = total_deformation(states[1], chart);
      tensor_next = total_deformation(states[2], chart);
      break;
    case EvolutionEq::kElastic:
      tensor_prev = elastic_deformation(states[0].that, states[0].burgers_metric);
      tensor_mid = elastic_deformation(states[1].that, states[1].burgers_metric);
      tensor_next = elastic_deformation(states[2].that, states[2].burgers_metric);
      break;
    case EvolutionEq::kPlastic:
      tensor_prev = plastic_of_state(states[0]);
      tensor_mid = plastic_of_state(states[1]);
      tensor_next = plastic_of_state(states[2]);
      break;
  }

  const Field dv = covariant_derivative(mid.velocity, chart);  // (k, r)
  const Field dten = covariant_derivative(tensor_mid, chart);  // (a, b, r)
  Field theta;
  if (which != EvolutionEq::kTotal) theta = theta_tensor(mid, chart);

  Field res(tensor_mid.sig(), g);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const Vec3 v = mid.velocity.vec(n);
    const double* pdv = dv.node(n);
    const double* pdt = dten.node(n);
    const Mat3 ten = tensor_mid.mat(n);
    Mat3 r;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double s = inv2dt * (tensor_next.at(n, a * 3 + b) -
                             tensor_prev.at(n, a * 3 + b));
        for (int k = 0; k < 3; ++k) s += v[k] * pdt[(a * 3 + b) * 3 + k];
        r.a[a][b] = s;
      }
    switch (which) {
      case EvolutionEq::kTotal:
        // + G_kj nabla_i v^k + G_ik nabla_j v^k
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k)
              s += ten.a[k][j] * pdv[k * 3 + i] + ten.a[i][k] * pdv[k * 3 + j];
            r.a[i][j] += s;
          }
        break;
      case EvolutionEq::kElastic: {
        const Mat3 th = theta.mat(n);
        for (int k = 0; k < 3; ++k)
          for (int q = 0; q < 3; ++q) {
            double s = 0.0;
            for (int rr = 0; rr < 3; ++rr)
              s += pdv[rr * 3 + k] * ten.a[rr][q] + ten.a[k][rr] * pdv[rr * 3 + q] -
                   th.a[rr][k] * ten.a[rr][q] - ten.a[k][rr] * th.a[rr][q];
            r.a[k][q] += s;
          }
        break;
      }
      case EvolutionEq::kPlastic: {
        const Mat3 th = theta.mat(n);
        for (int k = 0; k < 3; ++k)
          for (int i = 0; i < 3; ++i) {
            double s = 0.0;
            for (int rr = 0; rr < 3; ++rr)
              s += -ten.a[rr][i] * pdv[k * 3 + rr] + pdv[rr * 3 + i] * ten.a[k][rr] +
                   th.a[k][rr] * ten.a[rr][i];
            r.a[k][i] += s;
          }
        break;
      }
    }
    res.set_mat(n, r);
  }
  return field_norms(res, 2);
}

}  // namespace dislo
