#ifndef DISLO_KINEMATICS_HPP_
#define DISLO_KINEMATICS_HPP_

#include <span>
#include <utility>

#include "dislo/chart.hpp"
#include "dislo/field.hpp"
#include "dislo/fixtures.hpp"
#include "dislo/ops.hpp"

namespace dislo {

// Time-stamped snapshot of a motion: displacement map, velocity, distortion
// and its cached inverse, drivers, and the constant reference isometry.
struct MotionState {
  double time = 0.0;
  Field displacement;  // material coordinates sampled on the grid
  Field velocity;      // v^k, current-configuration arguments
  Field that;          // incompatible distortion
  Field shat;          // cached nodewise inverse
  Field current;       // Burgers current j
  Field potential;     // w
  Field ttilde;        // analytic Jacobian of the displacement map
  Mat3 tstar = Mat3::identity();
  BurgersMetric burgers_metric{};
};

// Samples all closed forms of a manufactured motion onto the chart,
// transforming components out of the Cartesian frame where needed.
MotionState sample_motion_state(const ManufacturedMotion& motion, double t,
                                const Chart& chart);

// Finite-difference Jacobian pair (Ttilde, Stilde) of the sampled
// displacement map; Stilde * Ttilde = identity nodewise.
std::pair<Field, Field> jacobians_of_motion(const MotionState& state,
                                            const Chart& chart);

// G_ij = g_rs(ytilde) Ttilde^r_i Ttilde^s_j with the metric interpolated at
// the mapped points.
Field total_deformation(const MotionState& state, const Chart& chart);

// Ghat_ij = gstar_pq That^p_i That^q_j.
Field elastic_deformation(const Field& that, const BurgersMetric& burgers_metric);

// Gcheck^k_i = Shat^k_p T^p_i.
Field plastic_deformation(const Field& shat, const Field& t_compatible);

// Compatible distortion T = Tstar * Ttilde.
Field compatible_distortion(const Field& ttilde, const Mat3& tstar);

struct DeformationSet {
  Field total;    // G_ij
  Field elastic;  // Ghat_ij
  Field plastic;  // Gcheck^k_i
};

// All three deformation tensors from one consistent algebraic route; the
// decomposition G = Gcheck^T Ghat Gcheck then holds to rounding by
// construction.
DeformationSet make_deformations(const Field& that, const Field& ttilde,
                                 const Mat3& tstar,
                                 const BurgersMetric& burgers_metric,
                                 const Chart& chart);

// theta^k_r from the covariant-derivative form. With
// `explicit_christoffel_path` the partial-derivative form is evaluated and
// the Christoffel terms are added explicitly; the two paths agree to
// rounding, which exhibits the cancellation of the connection terms.
Field theta_tensor(const MotionState& state, const Chart& chart,
                   bool explicit_christoffel_path = false);

// Max over nodes of ||g - Tstar^T gstar Tstar||: the reference-isometry
// defect, checked once at t = 0.
double isometry_residual(const Mat3& tstar, const BurgersMetric& burgers_metric,
                         const Chart& chart);

enum class EvolutionEq { kTotal, kElastic, kPlastic };

// Residual of the chosen evolution equation over three equally spaced
// snapshots (centered time difference at the middle one).
Norms evolution_residual(std::span<const MotionState, 3> states,
                         EvolutionEq which, const Chart& chart);

}  // namespace dislo

#endif  // DISLO_KINEMATICS_HPP_
