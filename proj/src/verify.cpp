#include "dislo/verify.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include "dislo/interp.hpp"
#include "dislo/io.hpp"
#include "dislo/ops.hpp"

namespace dislo {

namespace {

GridSpec cube_grid(int n, double lo, double hi) {
  const double h = (hi - lo) / (n - 1);
  return GridSpec{{n, n, n}, {lo, lo, lo}, {h, h, h}};
}

Chart annulus_chart(int n) {
  // r in [0.6, 1.6], phi in [0.2, 1.2], z in [-0.5, 0.5].
  GridSpec g{{n, n, n},
             {0.6, 0.2, -0.5},
             {1.0 / (n - 1), 1.0 / (n - 1), 1.0 / (n - 1)}};
  return Chart::cylindrical(g, 0.25);
}

// Dense smooth test tensor; every component nonzero and coupled.
Mat3 smooth9(const Vec3& y) {
  Mat3 m;
  m.a[0][0] = std::sin(y[0]) * std::cos(y[1]);
  m.a[0][1] = std::cos(y[1]) * std::sin(y[2]);
  m.a[0][2] = std::sin(y[0] + y[2]);
  m.a[1][0] = std::cos(y[0]) * std::sin(y[1]);
  m.a[1][1] = std::sin(y[1]) * std::cos(y[2]);
  m.a[1][2] = std::cos(y[2] + y[0]);
  m.a[2][0] = std::sin(y[1] + y[2]);
  m.a[2][1] = std::cos(y[0] + y[1]);
  m.a[2][2] = std::sin(y[2]) * std::cos(y[0]);
  return m;
}

Vec3 smooth3(const Vec3& y) {
  return {std::sin(y[0] + y[1]), std::cos(y[1]) * std::sin(y[2]),
          std::sin(y[2]) * std::cos(y[0])};
}

Field sampled_distortion(const Chart& chart) {
  Field f(Signature::distortion(), chart.grid());
  const GridSpec& g = chart.grid();
  for (std::size_t n = 0; n < g.node_count(); ++n)
    f.set_mat(n, smooth9(g.coord(g.unindex(n))));
  return f;
}

Field sampled_potential(const Chart& chart) {
  Field f(Signature::burgers_vector(), chart.grid());
  const GridSpec& g = chart.grid();
  for (std::size_t n = 0; n < g.node_count(); ++n)
    f.set_vec(n, smooth3(g.coord(g.unindex(n))));
  return f;
}

void push_row(std::vector<StudyRow>& rows, const std::string& test, int level,
              double h, double dt, const Norms& norms) {
  rows.push_back({test, level, h, dt, norms.l2, norms.max,
                  std::numeric_limits<double>::quiet_NaN(), false, 0.0});
}

}  // namespace

double observed_order(double coarse, double fine) {
  if (fine <= 0.0) return coarse > 0.0 ? 99.0 : 0.0;
  if (coarse <= 0.0) return 0.0;
  return std::log2(coarse / fine);
}

void append_orders(std::vector<StudyRow>& rows) {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].exact) continue;
    for (std::size_t p = 0; p < r; ++p) {
      if (rows[p].test != rows[r].test || rows[p].level != rows[r].level - 1)
        continue;
      // Normalize by the actual refinement ratio: grids refine by the cell
      // count (n-1), which is close to but not exactly 2.
      double ratio = 2.0;
      if (rows[r].h > 0.0 && rows[p].h > rows[r].h)
        ratio = rows[p].h / rows[r].h;
      else if (rows[r].dt > 0.0 && rows[p].dt > rows[r].dt)
        ratio = rows[p].dt / rows[r].dt;
      rows[r].order =
          observed_order(rows[p].l2, rows[r].l2) / std::log2(ratio);
    }
  }
}

std::vector<StudyRow> study_identities(int levels, int base_n) {
  std::vector<StudyRow> rows;

  // Convergence rows: compositions whose discrete stencils do not cancel
  // algebraically because the metric varies between the two applications.
  for (int l = 0; l < levels; ++l) {
    const int n = base_n << l;
    const Chart cyl = annulus_chart(n);
    const double h = cyl.grid().spacing[0];
    const Field x = sampled_distortion(cyl);
    push_row(rows, "div_rot_cylindrical", l, h, 0.0,
             field_norms(div_burgers_density(rot_distortion(x, cyl), cyl), 2));
    // Curl of an analytically sampled compatible distortion (the embedding
    // gradient) vanishes in the continuum.
    const GridSpec& g = cyl.grid();
    Field compat(Signature::distortion(), g);
    for (std::size_t node = 0; node < g.node_count(); ++node)
      compat.set_mat(node, cyl.embed_jacobian(g.coord(g.unindex(node))));
    push_row(rows, "rot_compatible_cylindrical", l, h, 0.0,
             field_norms(rot_distortion(compat, cyl), 2));
  }
  append_orders(rows);

  // Exact rows: these compositions cancel nodewise for the discrete
  // operators themselves (commuting one-dimensional stencils, antisymmetric
  // contraction against symmetric connection terms, and Christoffels built
  // from the very same metric differences), so anything above rounding is a
  // bug.
  const Chart cart = Chart::cartesian(cube_grid(base_n, -1.0, 1.0));
  const Chart cyl = annulus_chart(base_n);
  const auto exact_row = [&rows](const std::string& test, const Norms& norms) {
    rows.push_back({test, 0, 0.0, 0.0, norms.l2, norms.max, 0.0, true, 1e-11});
  };
  exact_row("div_rot_cartesian_exact",
            field_norms(
                div_burgers_density(
                    rot_distortion(sampled_distortion(cart), cart), cart),
                0));
  exact_row("rot_grad_cartesian_exact",
            field_norms(
                rot_distortion(grad_potential(sampled_potential(cart), cart),
                               cart),
                0));
  exact_row("rot_grad_cylindrical_exact",
            field_norms(
                rot_distortion(grad_potential(sampled_potential(cyl), cyl),
                               cyl),
                0));
  exact_row("metric_compat_cylindrical_exact",
            field_norms(covariant_derivative(cyl.metric(), cyl), 0));
  rows.push_back({"theta_connection_cancellation", 0, 0.0, 0.0, 0.0,
                  theta_cancellation_residual(), 0.0, true, 1e-11});
  return rows;
}

double decomposition_worst(int n_states, unsigned seed, int n) {
  const Chart chart = Chart::cartesian(cube_grid(n, -1.0, 1.0));
  const GridSpec& g = chart.grid();
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int s = 0; s < n_states; ++s) {
    Field that(Signature::distortion(), g);
    Field ttilde(Signature::body_mixed(), g);
    for (std::size_t node = 0; node < g.node_count(); ++node) {
      Mat3 a = Mat3::identity();
      Mat3 b = Mat3::identity();
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
          a.a[r][c] += 0.2 * u(rng);
          b.a[r][c] += 0.2 * u(rng);
        }
      that.set_mat(node, a);
      ttilde.set_mat(node, b);
    }
    Mat3 tstar = Mat3::identity();
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) tstar.a[r][c] += 0.2 * u(rng);
    Mat3 amix = Mat3::identity();
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) amix.a[r][c] += 0.3 * u(rng);
    BurgersMetric gstar;
    gstar.components = transpose(amix) * amix + 0.1 * Mat3::identity();
    gstar.validate();

    const DeformationSet set =
        make_deformations(that, ttilde, tstar, gstar, chart);
    for (std::size_t node = 0; node < g.node_count(); ++node) {
      const Mat3 gc = set.plastic.mat(node);
      const Mat3 recomposed =
          transpose(gc) * set.elastic.mat(node) * gc;
      const Mat3 total = set.total.mat(node);
      const double scale = std::max(1.0, max_abs(total));
      worst = std::max(worst, max_abs(total - recomposed) / scale);
    }
  }
  return worst;
}

std::vector<StudyRow> study_evolution(std::string_view motion_name, int levels,
                                      int base_n, double base_dt, double t0) {
  const ManufacturedMotion motion = manufactured_motion(motion_name);
  std::vector<StudyRow> rows;
  for (int l = 0; l < levels; ++l) {
    const int n = base_n << l;
    const double dt = base_dt / (1 << l);
    // The grid is wider than the measured region so the displaced points
    // stay inside for the metric interpolation.
    const Chart chart = Chart::cartesian(cube_grid(n, -1.3, 1.3));
    const MotionState prev = sample_motion_state(motion, t0 - dt, chart);
    const MotionState mid = sample_motion_state(motion, t0, chart);
    const MotionState next = sample_motion_state(motion, t0 + dt, chart);
    const std::array<MotionState, 3> states{prev, mid, next};
    const std::span<const MotionState, 3> span(states);
    const double h = chart.grid().spacing[0];
    push_row(rows, std::string("evolution_total_") + motion.name, l, h, dt,
             evolution_residual(span, EvolutionEq::kTotal, chart));
    push_row(rows, std::string("evolution_elastic_") + motion.name, l, h, dt,
             evolution_residual(span, EvolutionEq::kElastic, chart));
    push_row(rows, std::string("evolution_plastic_") + motion.name, l, h, dt,
             evolution_residual(span, EvolutionEq::kPlastic, chart));
  }
  append_orders(rows);
  return rows;
}

std::vector<StudyRow> study_conservation(int levels, int base_n,
                                         double base_dt, double t_end,
                                         double t_ramp, int output_every) {
  std::vector<StudyRow> rows;
  for (int l = 0; l < levels; ++l) {
    const int n = base_n << l;
    const double dt = base_dt / (1 << l);
    // Cylindrical wedge beside the core line: on a Cartesian chart div(rot)
    // cancels algebraically, so only a varying metric makes the divergence
    // residual a real discretization quantity.
    GridSpec wedge{{n, n, n},
                   {0.4, 0.2, -0.5},
                   {1.0 / (n - 1), 1.0 / (n - 1), 1.0 / (n - 1)}};
    auto chart =
        std::make_shared<const Chart>(Chart::cylindrical(wedge, 0.25));
    // Tilted off-axis core: an axis-aligned line gives chart components
    // depending on r alone, for which div(rot) again cancels exactly.
    CoreSpec core;
    core.line_point = {0.9, 0.6, 0.0};
    core.line_direction = normalized({0.15, -0.1, 1.0});
    core.burgers = {0, 0, 1};
    core.core_radius = 0.35;
    const ScrewCreation creation = ScrewCreation::make(core, *chart, t_ramp);

    Scenario scenario;
    scenario.chart = chart;
    scenario.that0 = Field(Signature::distortion(), chart->grid());
    for (std::size_t node = 0; node < scenario.that0.node_count(); ++node) {
      const Vec3 y = chart->grid().coord(chart->grid().unindex(node));
      scenario.that0.set_mat(node, chart->embed_jacobian(y));
    }
    scenario.current = creation.current_driver();
    scenario.t_end = t_end;
    scenario.dt = dt;
    // Fixed step count between outputs: the snapshot spacing halves with dt,
    // so the centered time difference refines along with the grid.
    scenario.output_every = output_every;
    const ConservationReport report = run_scenario(scenario);

    // Measure at the centered output row nearest t_end / 2.
    const ConservationRow* pick = nullptr;
    for (const ConservationRow& row : report.rows)
      if (row.time_stencil == 'c' &&
          (!pick || std::abs(row.time - 0.5 * t_end) <
                        std::abs(pick->time - 0.5 * t_end)))
        pick = &row;
    if (!pick) throw Error("conservation study produced no centered rows");
    const double h = chart->grid().spacing[0];
    push_row(rows, "conservation_divergence", l, h, dt,
             Norms{pick->div_l2, pick->div_max});
    push_row(rows, "conservation_density", l, h, dt,
             Norms{pick->cons_l2, pick->cons_max});
  }
  append_orders(rows);
  return rows;
}

std::vector<StudyRow> study_elastic_theta(int levels, int base_n, double t0) {
  const ManufacturedMotion motion = manufactured_motion("elastic_convection");
  std::vector<StudyRow> rows;
  for (int l = 0; l < levels; ++l) {
    const int n = base_n << l;
    const Chart chart = Chart::cartesian(cube_grid(n, -1.3, 1.3));
    const MotionState state = sample_motion_state(motion, t0, chart);
    push_row(rows, "theta_elastic_limit", l, chart.grid().spacing[0], 0.0,
             field_norms(theta_tensor(state, chart), 2));
  }
  append_orders(rows);
  return rows;
}

double elastic_plastic_drift(int n, double dt, int steps) {
  const ManufacturedMotion motion = manufactured_motion("elastic_convection");
  const Chart chart = Chart::cartesian(cube_grid(n, -1.3, 1.3));
  const Driver w_driver = driver_from_motion_potential(motion);

  Field that = sample_motion_state(motion, 0.0, chart).that;
  for (int s = 0; s < steps; ++s)
    that = step_distortion(that, s * dt, dt, Driver{}, w_driver, chart);

  const MotionState end = sample_motion_state(motion, steps * dt, chart);
  const Field t_comp = compatible_distortion(end.ttilde, Mat3::identity());
  const Field shat = invert_pointwise(that, chart);
  const Field plastic = plastic_deformation(shat, t_comp);
  Field drift(Signature::body_mixed(), chart.grid());
  for (std::size_t node = 0; node < plastic.node_count(); ++node)
    drift.set_mat(node, plastic.mat(node) - Mat3::identity());
  return field_norms(drift, 2).max;
}

double theta_cancellation_residual(int n) {
  const Chart chart = annulus_chart(n);
  const MotionState state =
      sample_motion_state(manufactured_motion("shear_with_current"), 0.4, chart);
  const Field covariant = theta_tensor(state, chart, false);
  const Field explicit_path = theta_tensor(state, chart, true);
  return field_norms(axpby(1.0, covariant, -1.0, explicit_path), 0).max;
}

std::vector<StudyRow> study_theta_covariance(int levels, int base_n) {
  const ManufacturedMotion motion = manufactured_motion("shear_with_current");
  const double t0 = 0.4;
  std::vector<StudyRow> rows;
  for (int l = 0; l < levels; ++l) {
    const int n = base_n << l;
    // Same physical annular wedge seen through two charts.
    GridSpec cyl_grid{{n, n, n},
                      {0.6, 0.2, -0.4},
                      {0.8 / (n - 1), 1.0 / (n - 1), 0.8 / (n - 1)}};
    const Chart cyl = Chart::cylindrical(cyl_grid, 0.25);
    GridSpec cart_grid{{2 * n, 2 * n, n},
                       {0.0, 0.0, -0.5},
                       {1.5 / (2 * n - 1), 1.45 / (2 * n - 1), 1.0 / (n - 1)}};
    const Chart cart = Chart::cartesian(cart_grid);

    const Field theta_cyl =
        theta_tensor(sample_motion_state(motion, t0, cyl), cyl);
    const Field theta_cart =
        theta_tensor(sample_motion_state(motion, t0, cart), cart);

    double worst = 0.0, sum2 = 0.0;
    std::size_t count = 0;
    const GridSpec& g = cyl.grid();
    for (int i = 3; i < g.dims[0] - 3; ++i)
      for (int j = 3; j < g.dims[1] - 3; ++j)
        for (int k = 3; k < g.dims[2] - 3; ++k) {
          const Vec3 y = g.coord(i, j, k);
          const Vec3 x = cyl.embed(y);
          if (!cart.grid().contains(x, 2)) continue;
          const Mat3 jac = cyl.embed_jacobian(y);
          const Mat3 pulled =
              inverse(jac) * sample_mat(theta_cart, x) * jac;
          const Mat3 diff = theta_cyl.mat(g.index(i, j, k)) - pulled;
          worst = std::max(worst, max_abs(diff));
          sum2 += frobenius_norm(diff) * frobenius_norm(diff);
          count += 9;
        }
    if (count == 0) throw Error("theta covariance study compared no nodes");
    push_row(rows, "theta_chart_covariance", l, g.spacing[0], 0.0,
             Norms{std::sqrt(sum2 / count), worst});
  }
  append_orders(rows);
  return rows;
}

std::vector<StudyRow> study_inverse_derivative(int levels, double base_dt) {
  const ManufacturedMotion motion = manufactured_motion("shear_with_current");
  const Chart chart = Chart::cartesian(cube_grid(12, -1.0, 1.0));
  const GridSpec& g = chart.grid();
  const double t0 = 0.4;
  std::vector<StudyRow> rows;
  for (int l = 0; l < levels; ++l) {
    const double dt = base_dt / (1 << l);
    const MotionState prev = sample_motion_state(motion, t0 - dt, chart);
    const MotionState mid = sample_motion_state(motion, t0, chart);
    const MotionState next = sample_motion_state(motion, t0 + dt, chart);
    double worst = 0.0, sum2 = 0.0;
    for (std::size_t node = 0; node < g.node_count(); ++node) {
      const Vec3 y = g.coord(g.unindex(node));
      const Mat3 tdot =
          motion.that_dot(t0, chart.embed(y)) * chart.embed_jacobian(y);
      const Mat3 sh = shat_mat(mid.shat, node);
      const Mat3 fd = (0.5 / dt) * (shat_mat(next.shat, node) -
                                    shat_mat(prev.shat, node));
      const Mat3 res = fd + sh * tdot * sh;
      worst = std::max(worst, max_abs(res));
      sum2 += frobenius_norm(res) * frobenius_norm(res);
    }
    push_row(rows, "inverse_derivative", l, 0.0, dt,
             Norms{std::sqrt(sum2 / (9.0 * g.node_count())), worst});
  }
  append_orders(rows);
  return rows;
}

void write_study_csv(const std::string& path,
                     const std::vector<StudyRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << "test,level,h,dt,l2,max,order,exact,tol\n";
  for (const StudyRow& r : rows)
    out << r.test << "," << r.level << "," << format_g17(r.h) << ","
        << format_g17(r.dt) << "," << format_g17(r.l2) << ","
        << format_g17(r.max) << "," << format_g17(r.order) << ","
        << (r.exact ? 1 : 0) << "," << format_g17(r.tol) << "\n";
  if (!out) throw Error("write failed for '" + path + "'");
}

bool study_passes(const std::vector<StudyRow>& rows, double tol_scale,
                  double min_order) {
  bool ok = true;
  for (const StudyRow& r : rows) {
    if (r.exact)
      ok = ok && r.max <= r.tol * tol_scale;
    else if (std::isfinite(r.order))
      ok = ok && r.order >= min_order;
  }
  return ok;
}

}  // namespace dislo
