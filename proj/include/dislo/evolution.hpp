#ifndef DISLO_EVOLUTION_HPP_
#define DISLO_EVOLUTION_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dislo/chart.hpp"
#include "dislo/circuits.hpp"
#include "dislo/field.hpp"
#include "dislo/fixtures.hpp"

namespace dislo {

// Fills a grid field with a driver (j or w) at the given time. A default
// (empty) driver means zero.
using Driver = std::function<void(double, const Chart&, Field&)>;

struct Probe {
  enum class Kind { kContour, kDisk };
  Kind kind = Kind::kContour;
  std::string name;
  Contour contour;        // for kContour
  SurfacePatch surface;   // for kDisk
  int samples = 512;
};

struct Scenario {
  std::shared_ptr<const Chart> chart;
  Field that0;
  Driver current;    // j(t, y)
  Driver potential;  // w(t, y)
  double t_end = 1.0;
  double dt = 1e-2;
  int output_every = 10;
  std::vector<Probe> probes;
  std::string output_dir;  // empty: no dumps
  double det_floor = 1e-6;

  void validate() const;
};

struct ConservationRow {
  double time = 0.0;
  // 'c' centered, 'f'/'b' one-sided at the run ends.
  char time_stencil = 'c';
  double div_l2 = 0.0, div_max = 0.0;
  double cons_l2 = 0.0, cons_max = 0.0;
  std::vector<BurgersVector> probe_circuit;  // contour probes: circuit of That
  std::vector<BurgersVector> probe_rate;     // contour probes: -closed int of j
  std::vector<BurgersVector> probe_flux;     // disk probes: flux of rho
};

struct ConservationReport {
  std::vector<std::string> contour_probe_names;
  std::vector<std::string> disk_probe_names;
  std::vector<ConservationRow> rows;
};

// One RK4 step of dThat/dt = -j - grad w; rejects the step if det That
// crosses the floor.
Field step_distortion(const Field& that, double t, double dt, const Driver& j,
                      const Driver& w, const Chart& chart,
                      double det_floor = 1e-6);

// rho = rot That.
Field derived_density(const Field& that, const Chart& chart);

ConservationReport run_scenario(const Scenario& scenario);

void write_report_csv(const std::string& path, const ConservationReport& report);

// Drivers sampled from a manufactured motion's closed forms.
Driver driver_from_motion_current(const ManufacturedMotion& motion);
Driver driver_from_motion_potential(const ManufacturedMotion& motion);

// Smooth growth of a smeared core from the dislocation-free state:
// That(t) = I + A(t) (That_core - I) with A a raised-cosine ramp over
// [0, t_ramp], realized through the current j = -A'(t) (That_core - I).
struct ScrewCreation {
  Field defect;  // That_core - I, precomputed on the grid
  double t_ramp = 1.0;

  static ScrewCreation make(const CoreSpec& core, const Chart& chart,
                            double t_ramp);
  Driver current_driver() const;
  double ramp(double t) const;
  double ramp_rate(double t) const;
};

}  // namespace dislo

#endif  // DISLO_EVOLUTION_HPP_
