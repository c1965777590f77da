#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "dislo/config.hpp"
#include "dislo/ops.hpp"

using namespace dislo;

namespace {

// Writes the JSON text to a scratch file and returns its path.
std::string scratch_config(const std::string& text) {
  static int counter = 0;
  const std::string path = "test_config_" + std::to_string(counter++) + ".json";
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

struct ScratchFile {
  std::string path;
  explicit ScratchFile(const std::string& text) : path(scratch_config(text)) {}
  ~ScratchFile() { std::remove(path.c_str()); }
};

const char* kMinimal = R"({
  "schema_version": 1,
  "chart": { "kind": "cartesian", "dims": [8, 8, 8],
             "origin": [-1, -1, -1], "spacing": [0.3, 0.3, 0.3] }
})";

}  // namespace

TEST_CASE("a minimal config parses with defaults") {
  ScratchFile f(kMinimal);
  const Config cfg = load_config(f.path);
  CHECK(cfg.schema_version == 1);
  CHECK(cfg.cores.empty());
  CHECK(cfg.t_end == doctest::Approx(1.0));
  CHECK(cfg.dt == doctest::Approx(1e-2));
  CHECK(cfg.tolerance("circuit_spread", 2e-3) == doctest::Approx(2e-3));
  // Identity Burgers metric by default.
  CHECK(max_abs(cfg.burgers_metric.components - Mat3::identity()) == 0.0);
}

TEST_CASE("missing files and malformed JSON are config errors") {
  CHECK_THROWS_AS((void)load_config("does_not_exist.json"), ConfigError);
  ScratchFile f("{ not json");
  CHECK_THROWS_AS((void)load_config(f.path), ConfigError);
}

TEST_CASE("unknown keys are rejected by name") {
  ScratchFile top(R"({
    "schema_version": 1, "typo_key": 3,
    "chart": { "kind": "cartesian", "dims": [8, 8, 8],
               "origin": [0, 0, 0], "spacing": [1, 1, 1] }
  })");
  CHECK_THROWS_WITH_AS((void)load_config(top.path),
                       doctest::Contains("typo_key"), ConfigError);

  ScratchFile nested(R"({
    "schema_version": 1,
    "chart": { "kind": "cartesian", "dims": [8, 8, 8], "extent": 2,
               "origin": [0, 0, 0], "spacing": [1, 1, 1] }
  })");
  CHECK_THROWS_WITH_AS((void)load_config(nested.path),
                       doctest::Contains("extent"), ConfigError);
}

TEST_CASE("schema_version must be exactly 1") {
  ScratchFile f(R"({
    "schema_version": 2,
    "chart": { "kind": "cartesian", "dims": [8, 8, 8],
               "origin": [0, 0, 0], "spacing": [1, 1, 1] }
  })");
  CHECK_THROWS_WITH_AS((void)load_config(f.path),
                       doctest::Contains("schema_version"), ConfigError);
}

TEST_CASE("chart kinds restrict their keys") {
  ScratchFile f(R"({
    "schema_version": 1,
    "chart": { "kind": "cartesian", "dims": [8, 8, 8], "r_min": 0.5,
               "origin": [0, 0, 0], "spacing": [1, 1, 1] }
  })");
  CHECK_THROWS_AS((void)load_config(f.path), ConfigError);

  ScratchFile custom(R"({
    "schema_version": 1,
    "chart": { "kind": "custom", "dims": [8, 8, 8],
               "origin": [0.5, 0, -0.5], "spacing": [0.1, 0.1, 0.1],
               "metric": ["1", "0", "0", "y1*y1", "0", "1"] }
  })");
  const Config cfg = load_config(custom.path);
  CHECK(cfg.chart->metric_at(cfg.chart->grid().index(3, 0, 0)).a[1][1] ==
        doctest::Approx(0.8 * 0.8));
}

TEST_CASE("fixture character is enforced against the Burgers vector") {
  ScratchFile screw(R"({
    "schema_version": 1,
    "chart": { "kind": "cartesian", "dims": [8, 8, 8],
               "origin": [-1, -1, -1], "spacing": [0.3, 0.3, 0.3] },
    "fixtures": [ { "type": "screw", "burgers": [1, 0, 0] } ]
  })");
  CHECK_THROWS_WITH_AS((void)load_config(screw.path),
                       doctest::Contains("parallel"), ConfigError);

  ScratchFile edge(R"({
    "schema_version": 1,
    "chart": { "kind": "cartesian", "dims": [8, 8, 8],
               "origin": [-1, -1, -1], "spacing": [0.3, 0.3, 0.3] },
    "fixtures": [ { "type": "edge", "burgers": [0, 0, 1] } ]
  })");
  CHECK_THROWS_WITH_AS((void)load_config(edge.path),
                       doctest::Contains("perpendicular"), ConfigError);
}

TEST_CASE("probes outside the grid are rejected with their name") {
  ScratchFile f(R"({
    "schema_version": 1,
    "chart": { "kind": "cartesian", "dims": [8, 8, 8],
               "origin": [-1, -1, -1], "spacing": [0.3, 0.3, 0.3] },
    "probes": [ { "type": "circle", "name": "huge", "radius": 5.0 } ]
  })");
  CHECK_THROWS_WITH_AS((void)load_config(f.path), doctest::Contains("huge"),
                       ConfigError);
}

TEST_CASE("driver blocks cross-check the rest of the config") {
  ScratchFile creation(R"({
    "schema_version": 1,
    "chart": { "kind": "cartesian", "dims": [8, 8, 8],
               "origin": [-1, -1, -1], "spacing": [0.3, 0.3, 0.3] },
    "drivers": { "kind": "screw_creation" }
  })");
  CHECK_THROWS_WITH_AS((void)load_config(creation.path),
                       doctest::Contains("fixture"), ConfigError);

  ScratchFile motion(R"({
    "schema_version": 1,
    "chart": { "kind": "cartesian", "dims": [8, 8, 8],
               "origin": [-1, -1, -1], "spacing": [0.3, 0.3, 0.3] },
    "drivers": { "kind": "motion" }
  })");
  CHECK_THROWS_AS((void)load_config(motion.path), ConfigError);

  ScratchFile bogus(R"({
    "schema_version": 1,
    "chart": { "kind": "cartesian", "dims": [8, 8, 8],
               "origin": [-1, -1, -1], "spacing": [0.3, 0.3, 0.3] },
    "motion": "bogus"
  })");
  CHECK_THROWS_AS((void)load_config(bogus.path), ConfigError);
}

TEST_CASE("run block sanity checks") {
  ScratchFile f(R"({
    "schema_version": 1,
    "chart": { "kind": "cartesian", "dims": [8, 8, 8],
               "origin": [-1, -1, -1], "spacing": [0.3, 0.3, 0.3] },
    "run": { "dt": -0.1 }
  })");
  CHECK_THROWS_AS((void)load_config(f.path), ConfigError);
}

TEST_CASE("tolerances are parsed and fall back per key") {
  ScratchFile f(R"({
    "schema_version": 1,
    "chart": { "kind": "cartesian", "dims": [8, 8, 8],
               "origin": [-1, -1, -1], "spacing": [0.3, 0.3, 0.3] },
    "tolerances": { "circuit_spread": 5e-4 }
  })");
  const Config cfg = load_config(f.path);
  CHECK(cfg.tolerance("circuit_spread", 2e-3) == doctest::Approx(5e-4));
  CHECK(cfg.tolerance("div_ceiling", 1e-3) == doctest::Approx(1e-3));
}

TEST_CASE("scenario assembly: compatible background without fixtures") {
  ScratchFile f(kMinimal);
  const Config cfg = load_config(f.path);
  const Field that0 = initial_distortion(cfg);
  for (std::size_t n = 0; n < that0.node_count(); ++n)
    CHECK(max_abs(that0.mat(n) - Mat3::identity()) == 0.0);
  const Scenario sc = make_scenario(cfg);
  CHECK(sc.chart == cfg.chart);
  CHECK_FALSE(static_cast<bool>(sc.current));
  CHECK_FALSE(static_cast<bool>(sc.potential));
}

TEST_CASE("scenario assembly: screw fixture becomes the initial state") {
  ScratchFile f(R"({
    "schema_version": 1,
    "chart": { "kind": "cartesian", "dims": [16, 16, 16],
               "origin": [-1, -1, -1], "spacing": [0.133333, 0.133333, 0.133333] },
    "fixtures": [ { "type": "screw", "burgers": [0, 0, 1],
                    "core_radius": 0.2 } ],
    "drivers": { "kind": "screw_creation", "t_ramp": 2.0 }
  })");
  const Config cfg = load_config(f.path);
  const Scenario sc = make_scenario(cfg);
  // Creation runs start dislocation-free and carry a current driver.
  for (std::size_t n = 0; n < sc.that0.node_count(); ++n)
    CHECK(max_abs(sc.that0.mat(n) - Mat3::identity()) == 0.0);
  CHECK(static_cast<bool>(sc.current));
  Field j(Signature::distortion(), cfg.chart->grid());
  sc.current(1.0, *cfg.chart, j);  // peak of the ramp rate
  CHECK(field_norms(j, 0).max > 0.0);
}
