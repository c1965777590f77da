#ifndef DISLO_FIXTURES_HPP_
#define DISLO_FIXTURES_HPP_

#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "dislo/chart.hpp"
#include "dislo/field.hpp"

namespace dislo {

enum class CoreProfile { kGaussian, kSingular };

// A single straight dislocation line with a smeared (or singular) core.
struct CoreSpec {
  Vec3 line_point{};
  Vec3 line_direction{0, 0, 1};
  Vec3 burgers{};
  double core_radius = 0.1;  // transverse Gaussian width sigma
  CoreProfile profile = CoreProfile::kGaussian;

  void validate() const;
};

// Closed forms in Cartesian physical coordinates.
// Distortion of the multivalued-angle (Volterra) construction:
//   T = I + b^i A_j,  A = smeared gradient of the winding angle / (2 pi).
Mat3 core_distortion_at(const CoreSpec& core, const Vec3& x);
// Matching density b^i t_j G_sigma(r_perp), Gaussian profile only.
Mat3 core_density_at(const CoreSpec& core, const Vec3& x);

// Grid-sampled fields on a chart with an embedding. Superpositions add the
// defect parts of each core on top of the compatible background.
Field screw_distortion(const CoreSpec& core, const Chart& chart);
Field edge_distortion(const CoreSpec& core, const Chart& chart);
Field superposed_distortion(std::span<const CoreSpec> cores, const Chart& chart);
Field smeared_density(const CoreSpec& core, const Chart& chart);

// Y-junction of three smeared tube densities meeting at the apex. Leg 1 is
// oriented into the junction, legs 2 and 3 out of it, so b1 = b2 + b3 holds
// by construction. `directions` point geometrically away from the apex.
struct JunctionSpec {
  Vec3 apex{};
  std::array<Vec3, 3> directions{Vec3{0, 0, -1}, Vec3{0.6, 0, 0.8},
                                 Vec3{-0.6, 0, 0.8}};
  Vec3 burgers2{};
  Vec3 burgers3{};
  double core_radius = 0.1;
  double blend = 0.4;  // longitudinal ramp width at the apex

  Vec3 burgers1() const { return burgers2 + burgers3; }
  void validate() const;
};

Mat3 junction_density_at(const JunctionSpec& jct, const Vec3& x);
Field junction_density(const JunctionSpec& jct, const Chart& chart);

// Closed-form motion with all fields the evolution equations touch. All
// components are Cartesian; sampling onto a chart transforms them.
struct ManufacturedMotion {
  std::string name;
  // Inverse displacement map: material coordinates of the point now at x.
  std::function<Vec3(double, const Vec3&)> inverse_map;
  // Jacobian d(inverse_map)/dx.
  std::function<Mat3(double, const Vec3&)> ttilde;
  // Velocity in current-configuration arguments (t, x).
  std::function<Vec3(double, const Vec3&)> velocity;
  std::function<Mat3(double, const Vec3&)> that;
  std::function<Mat3(double, const Vec3&)> that_dot;   // analytic dThat/dt
  std::function<Mat3(double, const Vec3&)> current;    // j
  std::function<Vec3(double, const Vec3&)> potential;  // w
};

// selector: rigid_rotation | uniform_stretch | shear_with_current |
// elastic_convection
ManufacturedMotion manufactured_motion(std::string_view selector);

}  // namespace dislo

#endif  // DISLO_FIXTURES_HPP_
