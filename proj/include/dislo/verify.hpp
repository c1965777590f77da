#ifndef DISLO_VERIFY_HPP_
#define DISLO_VERIFY_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "dislo/evolution.hpp"
#include "dislo/kinematics.hpp"

namespace dislo {

// One (test, refinement level) entry of a convergence study. Convergence
// rows are judged by the observed order between consecutive levels; exact
// rows (algebraic identities) by a direct threshold on the max norm.
struct StudyRow {
  std::string test;
  int level = 0;
  double h = 0.0;   // grid spacing (0 when the test refines in time only)
  double dt = 0.0;  // time step (0 when the test refines in space only)
  double l2 = 0.0;
  double max = 0.0;
  double order = 0.0;  // log2(r_h / r_{h/2}); NaN on the coarsest level
  bool exact = false;
  double tol = 0.0;  // threshold for exact rows
};

// log2(coarse/fine) with guards for vanishing residuals.
double observed_order(double coarse, double fine);

// Fills `order` from the previous level of the same test (rows must be
// appended level by level). Orders are taken from the l2 norms.
void append_orders(std::vector<StudyRow>& rows);

// Differential identities div(rot X) = 0, rot(grad w) = 0 and metric
// compatibility on Cartesian and cylindrical charts, plus the exact
// connection-term cancellation in theta.
std::vector<StudyRow> study_identities(int levels, int base_n = 16);

// Worst nodewise relative defect of the multiplicative decomposition over
// `n_states` randomized well-conditioned states.
double decomposition_worst(int n_states, unsigned seed, int n = 16);

// Residuals of the three deformation-rate equations for a manufactured
// motion, h and dt halved together.
std::vector<StudyRow> study_evolution(std::string_view motion, int levels,
                                      int base_n = 16, double base_dt = 0.1,
                                      double t0 = 0.4);

// Divergence-free density and the density conservation law along a
// smeared-core creation run; h and dt halved together.
std::vector<StudyRow> study_conservation(int levels, int base_n = 24,
                                         double base_dt = 1e-2,
                                         double t_end = 1.0,
                                         double t_ramp = 2.0,
                                         int output_every = 10);

// theta for the fully elastic convection motion (continuum value zero).
std::vector<StudyRow> study_elastic_theta(int levels, int base_n = 16,
                                          double t0 = 0.7);

// Drift of the plastic tensor from the identity after evolving the
// distortion numerically through the potential driver of the elastic motion.
double elastic_plastic_drift(int n, double dt, int steps);

// Max disagreement of the two theta evaluation paths on a cylindrical chart
// (an exact identity, rounding only).
double theta_cancellation_residual(int n = 20);

// Geometric agreement of theta computed on a Cartesian and a cylindrical
// chart of the same physical region.
std::vector<StudyRow> study_theta_covariance(int levels, int base_n = 16);

// Centered time difference of Shat against -Shat dThat/dt Shat, dt halved.
std::vector<StudyRow> study_inverse_derivative(int levels,
                                               double base_dt = 0.2);

void write_study_csv(const std::string& path,
                     const std::vector<StudyRow>& rows);

// Every exact row within tol * tol_scale, every defined order >= min_order.
bool study_passes(const std::vector<StudyRow>& rows, double tol_scale = 1.0,
                  double min_order = 1.6);

}  // namespace dislo

#endif  // DISLO_VERIFY_HPP_
