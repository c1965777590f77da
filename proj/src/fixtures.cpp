#include "dislo/fixtures.hpp"

#include <cmath>

#include "dislo/error.hpp"

namespace dislo {

namespace {

constexpr double kDetFloor = 1e-6;

void orthonormal_frame(const Vec3& t, Vec3& e1, Vec3& e2) {
  const Vec3 seed = std::abs(t[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  e1 = normalized(seed - dot(seed, t) * t);
  e2 = cross(t, e1);
}

Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m.a[r][c] = a[r] * b[c];
  return m;
}

// Defect part of the distortion: b^i A_j with A the (smeared) winding-angle
// gradient divided by 2 pi.
Mat3 core_defect_at(const CoreSpec& core, const Vec3& x) {
  const Vec3 t = core.line_direction;
  Vec3 e1, e2;
  orthonormal_frame(t, e1, e2);
  const Vec3 d = x - core.line_point;
  const Vec3 dp = d - dot(d, t) * t;
  const double r2 = dot(dp, dp);
  const double u = dot(dp, e1);
  const double v = dot(dp, e2);
  double factor;  // m(r)/r^2
  if (core.profile == CoreProfile::kGaussian) {
    const double s2 = core.core_radius * core.core_radius;
    factor = r2 < 1e-12 * s2 ? 0.5 / s2 : -std::expm1(-0.5 * r2 / s2) / r2;
  } else {
    if (r2 < 1e-12)
      throw Error("singular core evaluated on the dislocation line");
    factor = 1.0 / r2;
  }
  const Vec3 angle_grad = (factor / (2.0 * M_PI)) * (u * e2 - v * e1);
  return outer(core.burgers, angle_grad);
}

// Sample a Cartesian closed-form rank-2 map (Burgers upper, body-covariant
// lower index) onto a chart: X_chart = X_cart * dx/dy.
Field sample_distortion_like(const Chart& chart,
                             const std::function<Mat3(const Vec3&)>& cart_value,
                             bool enforce_det_floor) {
  if (!chart.has_embedding())
    throw Error("analytic fixtures need a chart with a physical embedding");
  const GridSpec& g = chart.grid();
  Field out(Signature::distortion(), g);
  for (int i = 0; i < g.dims[0]; ++i)
    for (int j = 0; j < g.dims[1]; ++j)
      for (int k = 0; k < g.dims[2]; ++k) {
        const Vec3 y = g.coord(i, j, k);
        const Mat3 cart = cart_value(chart.embed(y));
        if (enforce_det_floor && std::abs(det(cart)) < kDetFloor)
          throw Error("fixture distortion degenerate (|det| below 1e-6) at " +
                      node_location(g, g.index(i, j, k)));
        out.set_mat(g.index(i, j, k), cart * chart.embed_jacobian(y));
      }
  out.check_finite("fixture field");
  return out;
}

void check_singular_clearance(const CoreSpec& core, const Chart& chart) {
  if (core.profile != CoreProfile::kSingular) return;
  const GridSpec& g = chart.grid();
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const Vec3 x = chart.embed(g.coord(g.unindex(n)));
    const Vec3 d = x - core.line_point;
    const Vec3 dp = d - dot(d, core.line_direction) * core.line_direction;
    if (norm(dp) <= 1e-6)
      throw Error("dislocation line intersects grid under singular profile at " +
                  node_location(g, n));
  }
}

}  // namespace

void CoreSpec::validate() const {
  if (std::abs(norm(line_direction) - 1.0) > 1e-10)
    throw ConfigError("core line_direction must be a unit vector");
  if (profile == CoreProfile::kGaussian && !(core_radius > 0.0))
    throw ConfigError("gaussian core requires core_radius > 0");
  for (double c : burgers)
    if (!std::isfinite(c)) throw ConfigError("non-finite Burgers component");
}

Mat3 core_distortion_at(const CoreSpec& core, const Vec3& x) {
  return Mat3::identity() + core_defect_at(core, x);
}

Mat3 core_density_at(const CoreSpec& core, const Vec3& x) {
  if (core.profile != CoreProfile::kGaussian)
    throw Error("smeared density is defined for the gaussian profile only");
  const Vec3 t = core.line_direction;
  const Vec3 d = x - core.line_point;
  const Vec3 dp = d - dot(d, t) * t;
  const double s2 = core.core_radius * core.core_radius;
  const double gauss = std::exp(-0.5 * dot(dp, dp) / s2) / (2.0 * M_PI * s2);
  return gauss * outer(core.burgers, t);
}

Field screw_distortion(const CoreSpec& core, const Chart& chart) {
  core.validate();
  check_singular_clearance(core, chart);
  return sample_distortion_like(
      chart, [&](const Vec3& x) { return core_distortion_at(core, x); }, true);
}

Field edge_distortion(const CoreSpec& core, const Chart& chart) {
  core.validate();
  if (std::abs(dot(core.burgers, core.line_direction)) > 1e-10)
    throw ConfigError(
        "edge dislocation requires the Burgers vector perpendicular to the line");
  check_singular_clearance(core, chart);
  return sample_distortion_like(
      chart, [&](const Vec3& x) { return core_distortion_at(core, x); }, true);
}

Field superposed_distortion(std::span<const CoreSpec> cores, const Chart& chart) {
  for (const CoreSpec& c : cores) {
    c.validate();
    check_singular_clearance(c, chart);
  }
  return sample_distortion_like(
      chart,
      [&](const Vec3& x) {
        Mat3 m = Mat3::identity();
        for (const CoreSpec& c : cores) m = m + core_defect_at(c, x);
        return m;
      },
      true);
}

Field smeared_density(const CoreSpec& core, const Chart& chart) {
  core.validate();
  if (core.profile != CoreProfile::kGaussian)
    throw Error("smeared density is defined for the gaussian profile only");
  return sample_distortion_like(
      chart, [&](const Vec3& x) { return core_density_at(core, x); }, false);
}

void JunctionSpec::validate() const {
  for (const Vec3& u : directions)
    if (std::abs(norm(u) - 1.0) > 1e-10)
      throw ConfigError("junction leg directions must be unit vectors");
  if (!(core_radius > 0.0) || !(blend > 0.0))
    throw ConfigError("junction requires positive core radius and blend width");
}

Mat3 junction_density_at(const JunctionSpec& jct, const Vec3& x) {
  const double s2 = jct.core_radius * jct.core_radius;
  const Vec3 bvec[3] = {jct.burgers1(), jct.burgers2, jct.burgers3};
  const double sign[3] = {-1.0, 1.0, 1.0};  // leg 1 oriented into the apex
  Mat3 rho{};
  for (int l = 0; l < 3; ++l) {
    const Vec3& u = jct.directions[l];
    const Vec3 d = x - jct.apex;
    const double s = dot(d, u);
    const Vec3 dp = d - s * u;
    const double gauss = std::exp(-0.5 * dot(dp, dp) / s2) / (2.0 * M_PI * s2);
    const double ramp = 0.5 * (1.0 + std::erf(s / jct.blend));
    rho = rho + (sign[l] * gauss * ramp) * outer(bvec[l], u);
  }
  return rho;
}

Field junction_density(const JunctionSpec& jct, const Chart& chart) {
  jct.validate();
  return sample_distortion_like(
      chart, [&](const Vec3& x) { return junction_density_at(jct, x); }, false);
}

ManufacturedMotion manufactured_motion(std::string_view selector) {
  ManufacturedMotion m;
  m.name = std::string(selector);
  const auto zero_mat = [](double, const Vec3&) { return Mat3{}; };
  const auto zero_vec = [](double, const Vec3&) { return Vec3{}; };
  const auto ident = [](double, const Vec3&) { return Mat3::identity(); };

  if (selector == "rigid_rotation") {
    constexpr double omega = 0.3;
    m.inverse_map = [](double t, const Vec3& x) {
      return Mat3::rotation(2, -omega * t) * x;
    };
    m.ttilde = [](double t, const Vec3&) { return Mat3::rotation(2, -omega * t); };
    m.velocity = [](double, const Vec3& x) {
      return Vec3{-omega * x[1], omega * x[0], 0.0};
    };
    m.that = ident;
    m.that_dot = zero_mat;
    m.current = zero_mat;
    m.potential = zero_vec;
    return m;
  }

  if (selector == "uniform_stretch") {
    const auto lambda = [](double t) { return 1.0 + 0.25 * std::sin(t); };
    const auto lambda_dot = [](double t) { return 0.25 * std::cos(t); };
    m.inverse_map = [=](double t, const Vec3& x) {
      return Vec3{x[0] / lambda(t), x[1], x[2]};
    };
    m.ttilde = [=](double t, const Vec3&) {
      return Mat3::diag(1.0 / lambda(t), 1.0, 1.0);
    };
    m.velocity = [=](double t, const Vec3& x) {
      return Vec3{lambda_dot(t) / lambda(t) * x[0], 0.0, 0.0};
    };
    m.that = ident;
    m.that_dot = zero_mat;
    m.current = zero_mat;
    m.potential = zero_vec;
    return m;
  }

  if (selector == "shear_with_current") {
    const auto gamma = [](double t) { return 0.2 * std::sin(t); };
    const auto gamma_dot = [](double t) { return 0.2 * std::cos(t); };
    const auto amp = [](double t) { return 0.1 + 0.05 * std::sin(1.3 * t); };
    const auto amp_dot = [](double t) { return 0.065 * std::cos(1.3 * t); };
    const auto pot_amp = [](double t) { return 0.08 * std::cos(0.7 * t); };
    const auto pattern = [](const Vec3& x) {
      Mat3 p{};
      p.a[0][0] = std::sin(x[0]) * std::cos(x[1]);
      p.a[0][1] = std::cos(x[1]) * std::sin(x[2]);
      p.a[1][2] = std::sin(x[0] + x[2]);
      p.a[2][0] = std::cos(x[0]) * std::sin(x[1]);
      p.a[2][2] = std::sin(x[1]) * std::cos(x[2]);
      return p;
    };
    const auto pot_shape = [](const Vec3& x) {
      return Vec3{std::sin(x[0] + x[1]), std::cos(x[1]) * std::sin(x[2]),
                  std::sin(x[2]) * std::cos(x[0])};
    };
    const auto pot_grad = [](const Vec3& x) {
      Mat3 g{};
      g.a[0][0] = std::cos(x[0] + x[1]);
      g.a[0][1] = std::cos(x[0] + x[1]);
      g.a[1][1] = -std::sin(x[1]) * std::sin(x[2]);
      g.a[1][2] = std::cos(x[1]) * std::cos(x[2]);
      g.a[2][0] = -std::sin(x[2]) * std::sin(x[0]);
      g.a[2][2] = std::cos(x[2]) * std::cos(x[0]);
      return g;
    };
    m.inverse_map = [=](double t, const Vec3& x) {
      return Vec3{x[0] - gamma(t) * x[1], x[1], x[2]};
    };
    m.ttilde = [=](double t, const Vec3&) {
      Mat3 tt = Mat3::identity();
      tt.a[0][1] = -gamma(t);
      return tt;
    };
    m.velocity = [=](double t, const Vec3& x) {
      return Vec3{gamma_dot(t) * x[1], 0.0, 0.0};
    };
    m.that = [=](double t, const Vec3& x) {
      return Mat3::identity() + amp(t) * pattern(x);
    };
    m.that_dot = [=](double t, const Vec3& x) {
      return amp_dot(t) * pattern(x);
    };
    // j chosen so that dThat/dt + j = -grad w holds identically.
    m.current = [=](double t, const Vec3& x) {
      return (-amp_dot(t)) * pattern(x) + (-pot_amp(t)) * pot_grad(x);
    };
    m.potential = [=](double t, const Vec3& x) {
      return pot_amp(t) * pot_shape(x);
    };
    return m;
  }

  if (selector == "elastic_convection") {
    const auto a = [](double t) { return 0.1 * std::sin(t); };
    const auto a_dot = [](double t) { return 0.1 * std::cos(t); };
    const auto b = [](double t) { return 0.1 * (1.0 - std::cos(t)); };
    const auto b_dot = [](double t) { return 0.1 * std::sin(t); };
    const auto inv = [=](double t, const Vec3& x) {
      const double y3 = x[2];
      const double y2 = x[1] - b(t) * std::sin(y3);
      const double y1 = x[0] - a(t) * std::sin(y2) * std::cos(y3);
      return Vec3{y1, y2, y3};
    };
    const auto jac = [=](double t, const Vec3& x) {
      const double c3 = std::cos(x[2]), s3 = std::sin(x[2]);
      const double y2 = x[1] - b(t) * s3;
      const double c2 = std::cos(y2), s2 = std::sin(y2);
      Mat3 tt = Mat3::identity();
      tt.a[1][2] = -b(t) * c3;
      tt.a[0][1] = -a(t) * c2 * c3;
      tt.a[0][2] = a(t) * b(t) * c2 * c3 * c3 + a(t) * s2 * s3;
      return tt;
    };
    const auto vel = [=](double t, const Vec3& x) {
      const double y2 = x[1] - b(t) * std::sin(x[2]);
      return Vec3{a_dot(t) * std::sin(y2) * std::cos(x[2]),
                  b_dot(t) * std::sin(x[2]), 0.0};
    };
    const auto jac_dot = [=](double t, const Vec3& x) {
      const double c3 = std::cos(x[2]), s3 = std::sin(x[2]);
      const double y2 = x[1] - b(t) * s3;
      const double c2 = std::cos(y2), s2 = std::sin(y2);
      const double ad = a_dot(t), bd = b_dot(t);
      Mat3 dd{};
      dd.a[1][2] = -bd * c3;
      dd.a[0][1] = -ad * c2 * c3 - a(t) * bd * s2 * s3 * c3;
      dd.a[0][2] = (ad * b(t) + a(t) * bd) * c2 * c3 * c3 +
                   a(t) * b(t) * bd * s2 * s3 * c3 * c3 + ad * s2 * s3 -
                   a(t) * bd * c2 * s3 * s3;
      return dd;
    };
    m.inverse_map = inv;
    m.ttilde = jac;
    m.velocity = vel;
    m.that = jac;  // fully elastic: the distortion stays compatible
    m.that_dot = jac_dot;
    m.current = zero_mat;
    // w^p = v^r That^p_r, the potential of purely convected distortion.
    m.potential = [=](double t, const Vec3& x) { return jac(t, x) * vel(t, x); };
    return m;
  }

  throw ConfigError("unknown manufactured motion '" + std::string(selector) +
                    "' (expected rigid_rotation, uniform_stretch, "
                    "shear_with_current or elastic_convection)");
}

}  // namespace dislo
