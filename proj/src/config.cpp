#include "dislo/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>

#include "json.hpp"

#include "dislo/error.hpp"

namespace dislo {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!ok.count(it.key()))
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

double get_num(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number())
    throw ConfigError(where + " needs a numeric '" + std::string(key) + "'");
  return obj[key].get<double>();
}

double get_num_or(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number())
    throw ConfigError("'" + std::string(key) + "' must be a number");
  return obj[key].get<double>();
}

int get_int_or(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer())
    throw ConfigError("'" + std::string(key) + "' must be an integer");
  return obj[key].get<int>();
}

std::string get_str(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key) || !obj[key].is_string())
    throw ConfigError(where + " needs a string '" + std::string(key) + "'");
  return obj[key].get<std::string>();
}

Vec3 get_vec3(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key) || !obj[key].is_array() || obj[key].size() != 3)
    throw ConfigError(where + " needs '" + std::string(key) +
                      "' as an array of 3 numbers");
  Vec3 v;
  for (int c = 0; c < 3; ++c) {
    if (!obj[key][c].is_number())
      throw ConfigError(where + ": '" + std::string(key) + "' must be numeric");
    v[c] = obj[key][c].get<double>();
  }
  return v;
}

Vec3 get_vec3_or(const json& obj, const std::string& where, const char* key,
                 const Vec3& fallback) {
  return obj.contains(key) ? get_vec3(obj, where, key) : fallback;
}

std::shared_ptr<const Chart> parse_chart(const json& c) {
  check_keys(c, "chart",
             {"kind", "dims", "origin", "spacing", "r_min", "metric"});
  const std::string kind = get_str(c, "chart", "kind");
  GridSpec grid;
  if (!c.contains("dims") || !c["dims"].is_array() || c["dims"].size() != 3)
    throw ConfigError("chart needs 'dims' as an array of 3 integers");
  for (int a = 0; a < 3; ++a) {
    if (!c["dims"][a].is_number_integer())
      throw ConfigError("chart 'dims' must be integers");
    grid.dims[a] = c["dims"][a].get<int>();
  }
  grid.origin = get_vec3(c, "chart", "origin");
  grid.spacing = get_vec3(c, "chart", "spacing");
  grid.validate();

  if (kind == "cartesian") {
    if (c.contains("r_min") || c.contains("metric"))
      throw ConfigError("cartesian chart takes no 'r_min' or 'metric'");
    return std::make_shared<Chart>(Chart::cartesian(grid));
  }
  if (kind == "cylindrical") {
    if (c.contains("metric"))
      throw ConfigError("cylindrical chart takes no 'metric'");
    return std::make_shared<Chart>(
        Chart::cylindrical(grid, get_num_or(c, "r_min", 0.25)));
  }
  if (kind == "custom") {
    if (c.contains("r_min")) throw ConfigError("custom chart takes no 'r_min'");
    if (!c.contains("metric") || !c["metric"].is_array() ||
        c["metric"].size() != 6)
      throw ConfigError(
          "custom chart needs 'metric' as 6 expressions "
          "(g11, g12, g13, g22, g23, g33)");
    std::array<std::string, 6> exprs;
    for (int a = 0; a < 6; ++a) {
      if (!c["metric"][a].is_string())
        throw ConfigError("custom chart metric entries must be strings");
      exprs[a] = c["metric"][a].get<std::string>();
    }
    return std::make_shared<Chart>(Chart::custom(grid, exprs));
  }
  throw ConfigError("unknown chart kind '" + kind +
                    "' (expected cartesian, cylindrical or custom)");
}

CoreSpec parse_core(const json& f, const std::string& where) {
  check_keys(f, where,
             {"type", "line_point", "line_direction", "burgers", "core_radius",
              "profile"});
  CoreSpec core;
  const std::string type = get_str(f, where, "type");
  if (type != "screw" && type != "edge" && type != "core")
    throw ConfigError(where + ": unknown fixture type '" + type + "'");
  core.line_point = get_vec3_or(f, where, "line_point", {0, 0, 0});
  core.line_direction = get_vec3_or(f, where, "line_direction", {0, 0, 1});
  core.burgers = get_vec3(f, where, "burgers");
  core.core_radius = get_num_or(f, "core_radius", 0.1);
  if (f.contains("profile")) {
    const std::string p = get_str(f, where, "profile");
    if (p == "gaussian")
      core.profile = CoreProfile::kGaussian;
    else if (p == "singular")
      core.profile = CoreProfile::kSingular;
    else
      throw ConfigError(where + ": unknown profile '" + p + "'");
  }
  core.validate();
  if (type == "edge" &&
      std::abs(dot(core.burgers, core.line_direction)) > 1e-10)
    throw ConfigError(where +
                      ": edge fixture needs burgers perpendicular to the line");
  if (type == "screw") {
    const Vec3 bpar = dot(core.burgers, core.line_direction) * core.line_direction;
    if (norm(core.burgers - bpar) > 1e-10)
      throw ConfigError(where +
                        ": screw fixture needs burgers parallel to the line");
  }
  return core;
}

JunctionSpec parse_junction(const json& j) {
  check_keys(j, "junction",
             {"apex", "directions", "burgers2", "burgers3", "core_radius",
              "blend"});
  JunctionSpec jct;
  jct.apex = get_vec3_or(j, "junction", "apex", {0, 0, 0});
  if (j.contains("directions")) {
    if (!j["directions"].is_array() || j["directions"].size() != 3)
      throw ConfigError("junction 'directions' must hold 3 vectors");
    for (int l = 0; l < 3; ++l) {
      json leg;
      leg["d"] = j["directions"][l];
      jct.directions[l] = get_vec3(leg, "junction directions", "d");
    }
  }
  jct.burgers2 = get_vec3(j, "junction", "burgers2");
  jct.burgers3 = get_vec3(j, "junction", "burgers3");
  jct.core_radius = get_num_or(j, "core_radius", 0.1);
  jct.blend = get_num_or(j, "blend", 0.4);
  jct.validate();
  return jct;
}

Probe parse_probe(const json& p, int index) {
  const std::string where = "probes[" + std::to_string(index) + "]";
  Probe probe;
  const std::string type = get_str(p, where, "type");
  probe.name = p.contains("name") ? get_str(p, where, "name")
                                  : type + std::to_string(index);
  probe.samples = get_int_or(p, "samples", 512);
  if (probe.samples < 8)
    throw ConfigError(where + ": samples must be at least 8");

  if (type == "circle" || type == "ellipse" || type == "rectangle") {
    probe.kind = Probe::Kind::kContour;
    const Vec3 center = get_vec3_or(p, where, "center", {0, 0, 0});
    const Vec3 axis = get_vec3_or(p, where, "axis", {0, 0, 1});
    if (type == "circle") {
      check_keys(p, where, {"type", "name", "center", "radius", "axis",
                            "samples", "n"});
      probe.contour = Contour::circle(center, get_num(p, where, "radius"), axis,
                                      get_int_or(p, "n", 64));
    } else if (type == "ellipse") {
      check_keys(p, where,
                 {"type", "name", "center", "a", "b", "axis", "samples", "n"});
      probe.contour = Contour::ellipse(center, get_num(p, where, "a"),
                                       get_num(p, where, "b"), axis,
                                       get_int_or(p, "n", 64));
    } else {
      check_keys(p, where, {"type", "name", "center", "half1", "half2", "axis",
                            "samples", "per_side"});
      probe.contour =
          Contour::rectangle(center, get_num(p, where, "half1"),
                             get_num(p, where, "half2"), axis,
                             get_int_or(p, "per_side", 16));
    }
    return probe;
  }
  if (type == "points") {
    check_keys(p, where, {"type", "name", "points", "samples"});
    if (!p.contains("points") || !p["points"].is_array())
      throw ConfigError(where + " needs a 'points' array");
    std::vector<Vec3> pts;
    for (std::size_t q = 0; q < p["points"].size(); ++q) {
      json holder;
      holder["p"] = p["points"][q];
      pts.push_back(get_vec3(holder, where + " points", "p"));
    }
    probe.kind = Probe::Kind::kContour;
    probe.contour = Contour::from_points(std::move(pts));
    return probe;
  }
  if (type == "disk") {
    check_keys(p, where,
               {"type", "name", "center", "radius", "axis", "rings", "samples"});
    probe.kind = Probe::Kind::kDisk;
    probe.surface = SurfacePatch::disk(
        get_vec3_or(p, where, "center", {0, 0, 0}), get_num(p, where, "radius"),
        get_vec3_or(p, where, "axis", {0, 0, 1}), get_int_or(p, "rings", 32));
    return probe;
  }
  throw ConfigError(where + ": unknown probe type '" + type + "'");
}

}  // namespace

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");
  check_keys(root, "config",
             {"schema_version", "chart", "burgers_metric", "fixtures",
              "junction", "motion", "drivers", "probes", "run", "output_dir",
              "tolerances"});

  Config cfg;
  if (!root.contains("schema_version") ||
      !root["schema_version"].is_number_integer() ||
      root["schema_version"].get<int>() != 1)
    throw ConfigError("config requires schema_version = 1");

  if (!root.contains("chart") || !root["chart"].is_object())
    throw ConfigError("config needs a 'chart' object");
  cfg.chart = parse_chart(root["chart"]);

  if (root.contains("burgers_metric")) {
    const json& m = root["burgers_metric"];
    if (!m.is_array() || m.size() != 3)
      throw ConfigError("'burgers_metric' must be a 3x3 matrix");
    for (int r = 0; r < 3; ++r) {
      if (!m[r].is_array() || m[r].size() != 3)
        throw ConfigError("'burgers_metric' must be a 3x3 matrix");
      for (int c = 0; c < 3; ++c) {
        if (!m[r][c].is_number())
          throw ConfigError("'burgers_metric' entries must be numbers");
        cfg.burgers_metric.components.a[r][c] = m[r][c].get<double>();
      }
    }
    cfg.burgers_metric.validate();
  }

  if (root.contains("fixtures")) {
    if (!root["fixtures"].is_array())
      throw ConfigError("'fixtures' must be an array");
    for (std::size_t f = 0; f < root["fixtures"].size(); ++f)
      cfg.cores.push_back(parse_core(root["fixtures"][f],
                                     "fixtures[" + std::to_string(f) + "]"));
  }
  if (root.contains("junction"))
    cfg.junction = parse_junction(root["junction"]);

  if (root.contains("motion")) {
    cfg.motion = get_str(root, "config", "motion");
    manufactured_motion(cfg.motion);  // validates the selector
  }

  if (root.contains("drivers")) {
    const json& d = root["drivers"];
    check_keys(d, "drivers", {"kind", "t_ramp"});
    const std::string kind = get_str(d, "drivers", "kind");
    if (kind == "none")
      cfg.driver_kind = Config::DriverKind::kNone;
    else if (kind == "motion")
      cfg.driver_kind = Config::DriverKind::kMotion;
    else if (kind == "screw_creation")
      cfg.driver_kind = Config::DriverKind::kScrewCreation;
    else
      throw ConfigError("unknown driver kind '" + kind +
                        "' (expected none, motion or screw_creation)");
    cfg.t_ramp = get_num_or(d, "t_ramp", 1.0);
    if (cfg.driver_kind == Config::DriverKind::kMotion && cfg.motion.empty())
      throw ConfigError("drivers kind 'motion' needs a 'motion' selector");
    if (cfg.driver_kind == Config::DriverKind::kScrewCreation) {
      if (cfg.cores.empty())
        throw ConfigError("drivers kind 'screw_creation' needs a fixture");
      if (!(cfg.t_ramp > 0.0))
        throw ConfigError("screw_creation needs t_ramp > 0");
    }
  }

  if (root.contains("probes")) {
    if (!root["probes"].is_array())
      throw ConfigError("'probes' must be an array");
    for (std::size_t p = 0; p < root["probes"].size(); ++p)
      cfg.probes.push_back(parse_probe(root["probes"][p], int(p)));
    // Fail fast on probes that leave the grid so both commands agree.
    for (const Probe& probe : cfg.probes) {
      const auto& pts = probe.kind == Probe::Kind::kContour
                            ? probe.contour.points
                            : probe.surface.vertices;
      for (const Vec3& q : pts)
        if (!cfg.chart->grid().contains(q, 1))
          throw ConfigError("probe '" + probe.name + "' leaves the grid");
    }
  }

  if (root.contains("run")) {
    const json& r = root["run"];
    check_keys(r, "run", {"t_end", "dt", "output_every", "det_floor"});
    cfg.t_end = get_num_or(r, "t_end", 1.0);
    cfg.dt = get_num_or(r, "dt", 1e-2);
    cfg.output_every = get_int_or(r, "output_every", 10);
    cfg.det_floor = get_num_or(r, "det_floor", 1e-6);
    if (!(cfg.dt > 0.0)) throw ConfigError("run.dt must be positive");
    if (cfg.t_end < cfg.dt) throw ConfigError("run.t_end must be at least dt");
    if (cfg.output_every < 1)
      throw ConfigError("run.output_every must be at least 1");
  }

  if (root.contains("output_dir"))
    cfg.output_dir = get_str(root, "config", "output_dir");

  if (root.contains("tolerances")) {
    const json& t = root["tolerances"];
    if (!t.is_object()) throw ConfigError("'tolerances' must be an object");
    for (auto it = t.begin(); it != t.end(); ++it) {
      if (!it.value().is_number())
        throw ConfigError("tolerance '" + it.key() + "' must be a number");
      cfg.tolerances[it.key()] = it.value().get<double>();
    }
  }
  return cfg;
}

Field initial_distortion(const Config& config) {
  const Chart& chart = *config.chart;
  if (config.driver_kind == Config::DriverKind::kMotion) {
    const ManufacturedMotion motion = manufactured_motion(config.motion);
    const GridSpec& g = chart.grid();
    Field that0(Signature::distortion(), g);
    for (std::size_t n = 0; n < g.node_count(); ++n) {
      const Vec3 y = g.coord(g.unindex(n));
      that0.set_mat(n, motion.that(0.0, chart.embed(y)) *
                           chart.embed_jacobian(y));
    }
    return that0;
  }
  if (config.driver_kind == Config::DriverKind::kScrewCreation ||
      config.cores.empty()) {
    // Dislocation-free compatible background.
    const GridSpec& g = chart.grid();
    Field that0(Signature::distortion(), g);
    for (std::size_t n = 0; n < g.node_count(); ++n)
      that0.set_mat(n, chart.embed_jacobian(g.coord(g.unindex(n))));
    return that0;
  }
  return superposed_distortion(config.cores, chart);
}

Scenario make_scenario(const Config& config) {
  Scenario s;
  s.chart = config.chart;
  s.that0 = initial_distortion(config);
  s.t_end = config.t_end;
  s.dt = config.dt;
  s.output_every = config.output_every;
  s.probes = config.probes;
  s.output_dir = config.output_dir;
  s.det_floor = config.det_floor;
  switch (config.driver_kind) {
    case Config::DriverKind::kNone:
      break;
    case Config::DriverKind::kMotion: {
      const ManufacturedMotion motion = manufactured_motion(config.motion);
      s.current = driver_from_motion_current(motion);
      s.potential = driver_from_motion_potential(motion);
      break;
    }
    case Config::DriverKind::kScrewCreation: {
      const ScrewCreation sc =
          ScrewCreation::make(config.cores.front(), *config.chart,
                              config.t_ramp);
      s.current = sc.current_driver();
      break;
    }
  }
  return s;
}

}  // namespace dislo
