#include "dislo/evolution.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "dislo/error.hpp"
#include "dislo/io.hpp"
#include "dislo/ops.hpp"

namespace dislo {

void Scenario::validate() const {
  if (!chart) throw ConfigError("scenario has no chart");
  if (!(dt > 0.0)) throw ConfigError("scenario requires dt > 0");
  if (t_end < dt) throw ConfigError("scenario requires t_end >= dt");
  if (output_every < 1) throw ConfigError("output cadence must be >= 1");
  if (that0.sig() != Signature::distortion() || that0.grid() != chart->grid())
    throw ConfigError("initial distortion does not match the chart grid");
  for (const Probe& p : probes) {
    if (p.kind == Probe::Kind::kContour) {
      for (const Vec3& q : p.contour.points)
        if (!chart->grid().contains(q, 1))
          throw ConfigError("probe '" + p.name + "' leaves the grid");
    } else {
      for (const Vec3& q : p.surface.vertices)
        if (!chart->grid().contains(q, 1))
          throw ConfigError("probe '" + p.name + "' leaves the grid");
    }
  }
}

namespace {

// RHS of dThat/dt: -j(t) - grad w(t).
Field eval_rhs(double t, const Driver& j, const Driver& w, const Chart& chart) {
  Field rhs(Signature::distortion(), chart.grid());
  if (j) {
    Field jf(Signature::distortion(), chart.grid());
    j(t, chart, jf);
    rhs = axpby(1.0, rhs, -1.0, jf);
  }
  if (w) {
    Field wf(Signature::burgers_vector(), chart.grid());
    w(t, chart, wf);
    rhs = axpby(1.0, rhs, -1.0, grad_potential(wf, chart));
  }
  return rhs;
}

}  // namespace

Field step_distortion(const Field& that, double t, double dt, const Driver& j,
                      const Driver& w, const Chart& chart, double det_floor) {
  // Classical RK4; the right-hand side does not depend on That, so the two
  // middle stages coincide and the scheme reduces to Simpson quadrature.
  const Field k1 = eval_rhs(t, j, w, chart);
  const Field k2 = eval_rhs(t + 0.5 * dt, j, w, chart);
  const Field k4 = eval_rhs(t + dt, j, w, chart);
  Field incr = axpby(1.0, k1, 4.0, k2);
  incr = axpby(1.0, incr, 1.0, k4);
  Field next = axpby(1.0, that, dt / 6.0, incr);
  next.check_finite("step_distortion");
  for (std::size_t n = 0; n < next.node_count(); ++n) {
    if (std::abs(det(next.mat(n))) < det_floor)
      throw Error("distortion determinant crossed the floor at t=" +
                  std::to_string(t + dt) + ", " +
                  node_location(chart.grid(), n));
  }
  return next;
}

Field derived_density(const Field& that, const Chart& chart) {
  return rot_distortion(that, chart);
}

ConservationReport run_scenario(const Scenario& scenario) {
  scenario.validate();
  const Chart& chart = *scenario.chart;
  const long steps = std::lround(scenario.t_end / scenario.dt);

  ConservationReport report;
  for (const Probe& p : scenario.probes)
    (p.kind == Probe::Kind::kContour ? report.contour_probe_names
                                     : report.disk_probe_names)
        .push_back(p.name);

  const bool dump = !scenario.output_dir.empty();
  if (dump) std::filesystem::create_directories(scenario.output_dir);

  struct Snapshot {
    double time;
    Field rho;
    Field rot_j;
  };
  std::vector<Snapshot> snaps;
  std::vector<ConservationRow> rows;

  auto record_output = [&](long step, const Field& that) {
    const double t = step * scenario.dt;
    Field rho = derived_density(that, chart);
    Field jf(Signature::distortion(), chart.grid());
    if (scenario.current) scenario.current(t, chart, jf);
    Field rot_j = rot_distortion(jf, chart);

    ConservationRow row;
    row.time = t;
    const Norms div_norms = field_norms(div_burgers_density(rho, chart), 2);
    row.div_l2 = div_norms.l2;
    row.div_max = div_norms.max;
    for (const Probe& p : scenario.probes) {
      if (p.kind == Probe::Kind::kContour) {
        row.probe_circuit.push_back(
            circuit_integral(that, p.contour, chart, p.samples));
        row.probe_rate.push_back(flux_rate(jf, p.contour, chart, p.samples));
      } else {
        row.probe_flux.push_back(surface_flux(rho, p.surface, chart));
      }
    }
    rows.push_back(std::move(row));
    snaps.push_back({t, std::move(rho), std::move(rot_j)});

    if (dump) {
      const std::string tag = std::to_string(snaps.size() - 1);
      write_vtk(scenario.output_dir + "/that_" + tag + ".vtk", that, "that");
      write_vtk(scenario.output_dir + "/rho_" + tag + ".vtk", snaps.back().rho,
                "rho");
    }
  };

  auto finalize = [&]() {
    // drho/dt via differences of the stored output snapshots: centered in
    // the interior, one-sided at the ends.
    const std::size_t m = snaps.size();
    for (std::size_t s = 0; s < m; ++s) {
      Field dname(Signature::distortion(), chart.grid());
      if (m == 1) {
        rows[s].time_stencil = 'c';
      } else if (s == 0) {
        const double idt = 1.0 / (snaps[1].time - snaps[0].time);
        dname = axpby(idt, snaps[1].rho, -idt, snaps[0].rho);
        rows[s].time_stencil = 'f';
      } else if (s + 1 == m) {
        const double idt = 1.0 / (snaps[s].time - snaps[s - 1].time);
        dname = axpby(idt, snaps[s].rho, -idt, snaps[s - 1].rho);
        rows[s].time_stencil = 'b';
      } else {
        const double idt = 0.5 / (snaps[s + 1].time - snaps[s].time);
        dname = axpby(idt, snaps[s + 1].rho, -idt, snaps[s - 1].rho);
        rows[s].time_stencil = 'c';
      }
      const Field cons = axpby(1.0, dname, 1.0, snaps[s].rot_j);
      const Norms nrm = field_norms(cons, 2);
      rows[s].cons_l2 = nrm.l2;
      rows[s].cons_max = nrm.max;
    }
    report.rows = std::move(rows);
    if (dump)
      write_report_csv(scenario.output_dir + "/conservation.csv", report);
  };

  Field that = scenario.that0;
  record_output(0, that);
  try {
    for (long step = 0; step < steps; ++step) {
      const double t = step * scenario.dt;
      that = step_distortion(that, t, scenario.dt, scenario.current,
                             scenario.potential, chart, scenario.det_floor);
      if ((step + 1) % scenario.output_every == 0 || step + 1 == steps)
        record_output(step + 1, that);
    }
  } catch (const Error&) {
    finalize();  // flush the partial report before propagating
    throw;
  }
  finalize();
  return report;
}

void write_report_csv(const std::string& path, const ConservationReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << "time,stencil,div_l2,div_max,cons_l2,cons_max";
  for (const std::string& n : report.contour_probe_names)
    out << "," << n << "_b1," << n << "_b2," << n << "_b3," << n << "_rate1,"
        << n << "_rate2," << n << "_rate3";
  for (const std::string& n : report.disk_probe_names)
    out << "," << n << "_flux1," << n << "_flux2," << n << "_flux3";
  out << "\n";
  for (const ConservationRow& r : report.rows) {
    out << format_g17(r.time) << "," << r.time_stencil << ","
        << format_g17(r.div_l2) << "," << format_g17(r.div_max) << ","
        << format_g17(r.cons_l2) << "," << format_g17(r.cons_max);
    for (std::size_t p = 0; p < r.probe_circuit.size(); ++p) {
      for (int c = 0; c < 3; ++c) out << "," << format_g17(r.probe_circuit[p][c]);
      for (int c = 0; c < 3; ++c) out << "," << format_g17(r.probe_rate[p][c]);
    }
    for (const BurgersVector& b : r.probe_flux)
      for (int c = 0; c < 3; ++c) out << "," << format_g17(b[c]);
    out << "\n";
  }
  if (!out) throw Error("write failed for '" + path + "'");
}

Driver driver_from_motion_current(const ManufacturedMotion& motion) {
  return [motion](double t, const Chart& chart, Field& out) {
    const GridSpec& g = chart.grid();
    for (std::size_t n = 0; n < g.node_count(); ++n) {
      const Vec3 y = g.coord(g.unindex(n));
      out.set_mat(n, motion.current(t, chart.embed(y)) *
                         chart.embed_jacobian(y));
    }
  };
}

Driver driver_from_motion_potential(const ManufacturedMotion& motion) {
  return [motion](double t, const Chart& chart, Field& out) {
    const GridSpec& g = chart.grid();
    for (std::size_t n = 0; n < g.node_count(); ++n) {
      const Vec3 y = g.coord(g.unindex(n));
      out.set_vec(n, motion.potential(t, chart.embed(y)));
    }
  };
}

ScrewCreation ScrewCreation::make(const CoreSpec& core, const Chart& chart,
                                  double t_ramp) {
  ScrewCreation sc;
  sc.t_ramp = t_ramp;
  const Field full = screw_distortion(core, chart);
  Field ident(Signature::distortion(), chart.grid());
  for (std::size_t n = 0; n < ident.node_count(); ++n) {
    // Background is the compatible embedding gradient, not the raw identity.
    const Vec3 y = chart.grid().coord(chart.grid().unindex(n));
    ident.set_mat(n, chart.embed_jacobian(y));
  }
  sc.defect = axpby(1.0, full, -1.0, ident);
  return sc;
}

double ScrewCreation::ramp(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= t_ramp) return 1.0;
  return 0.5 * (1.0 - std::cos(M_PI * t / t_ramp));
}

double ScrewCreation::ramp_rate(double t) const {
  if (t <= 0.0 || t >= t_ramp) return 0.0;
  return 0.5 * M_PI / t_ramp * std::sin(M_PI * t / t_ramp);
}

Driver ScrewCreation::current_driver() const {
  // dThat/dt = A'(t) * defect, realized as j = -A'(t) * defect with w = 0.
  const Field defect = this->defect;
  const double t_ramp = this->t_ramp;
  return [defect, t_ramp](double t, const Chart&, Field& out) {
    double rate = 0.0;
    if (t > 0.0 && t < t_ramp)
      rate = 0.5 * M_PI / t_ramp * std::sin(M_PI * t / t_ramp);
    out = axpby(-rate, defect, 0.0, out);
  };
}

}  // namespace dislo
