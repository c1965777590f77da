#ifndef DISLO_CONFIG_HPP_
#define DISLO_CONFIG_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dislo/evolution.hpp"
#include "dislo/fixtures.hpp"

namespace dislo {

// One JSON file per run. Unknown keys are rejected; schema_version must be 1.
// The full key reference lives in README.md.
struct Config {
  int schema_version = 1;
  std::shared_ptr<const Chart> chart;
  BurgersMetric burgers_metric{};
  std::vector<CoreSpec> cores;
  std::optional<JunctionSpec> junction;
  std::string motion;  // manufactured-motion selector, may be empty

  enum class DriverKind { kNone, kMotion, kScrewCreation };
  DriverKind driver_kind = DriverKind::kNone;
  double t_ramp = 1.0;  // screw_creation ramp length

  std::vector<Probe> probes;
  double t_end = 1.0;
  double dt = 1e-2;
  int output_every = 10;
  double det_floor = 1e-6;
  std::string output_dir;
  std::map<std::string, double> tolerances;

  double tolerance(const std::string& key, double fallback) const {
    auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
  }
};

// Parses and validates; throws ConfigError with the offending key or the
// parser's line/byte position.
Config load_config(const std::string& path);

// Assembles a runnable scenario: initial distortion from the fixtures (or the
// compatible background when there are none) and drivers per `driver_kind`.
Scenario make_scenario(const Config& config);

// Initial distortion only (fixtures superposed over the background).
Field initial_distortion(const Config& config);

}  // namespace dislo

#endif  // DISLO_CONFIG_HPP_
