#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dislo/ops.hpp"

#include "CLI11.hpp"

#include "dislo/config.hpp"
#include "dislo/error.hpp"
#include "dislo/io.hpp"
#include "dislo/verify.hpp"

namespace {

using namespace dislo;

struct GlobalFlags {
  double tol_scale = 1.0;
  bool quiet = false;
};

void print_rows(const std::vector<StudyRow>& rows, const GlobalFlags& flags) {
  if (flags.quiet) return;
  std::printf("%-34s %5s %10s %10s %12s %12s %8s\n", "test", "level", "h",
              "dt", "l2", "max", "order");
  for (const StudyRow& r : rows) {
    if (r.exact)
      std::printf("%-34s %5d %10s %10s %12.4e %12.4e %8s (exact, tol %.1e)\n",
                  r.test.c_str(), r.level, "-", "-", r.l2, r.max, "-", r.tol);
    else
      std::printf("%-34s %5d %10.4g %10.4g %12.4e %12.4e %8.3f\n",
                  r.test.c_str(), r.level, r.h, r.dt, r.l2, r.max, r.order);
  }
}

int cmd_burgers(const std::string& config_path, const GlobalFlags& flags) {
  const Config cfg = load_config(config_path);
  if (cfg.cores.empty() && !cfg.junction)
    throw ConfigError("burgers needs at least one fixture or a junction");
  const Chart& chart = *cfg.chart;

  Field that, rho;
  if (!cfg.cores.empty()) {
    that = superposed_distortion(cfg.cores, chart);
    rho = rot_distortion(that, chart);
  } else {
    rho = junction_density(*cfg.junction, chart);
  }

  std::vector<BurgersVector> contour_results;
  std::string csv = "probe,kind,b1,b2,b3\n";
  for (const Probe& p : cfg.probes) {
    BurgersVector b;
    const char* kind;
    if (p.kind == Probe::Kind::kContour) {
      if (cfg.cores.empty())
        throw ConfigError("contour probe '" + p.name +
                          "' needs a distortion fixture, not a bare density");
      b = circuit_integral(that, p.contour, chart, p.samples);
      contour_results.push_back(b);
      kind = "contour";
    } else {
      b = surface_flux(rho, p.surface, chart);
      kind = "disk";
    }
    if (!flags.quiet)
      std::printf("%-16s %-8s b = (% .10e, % .10e, % .10e)\n", p.name.c_str(),
                  kind, b[0], b[1], b[2]);
    csv += p.name + "," + kind + "," + format_g17(b[0]) + "," +
           format_g17(b[1]) + "," + format_g17(b[2]) + "\n";
  }

  double spread = 0.0;
  for (std::size_t a = 0; a < contour_results.size(); ++a)
    for (std::size_t b = a + 1; b < contour_results.size(); ++b)
      spread = std::max(spread,
                        max_abs(contour_results[a] - contour_results[b]));
  const double tol =
      cfg.tolerance("circuit_spread", 2e-3) * flags.tol_scale;
  if (!flags.quiet)
    std::printf("contour spread %.6e (tolerance %.6e)\n", spread, tol);

  if (!cfg.output_dir.empty()) {
    std::filesystem::create_directories(cfg.output_dir);
    std::ofstream out(cfg.output_dir + "/burgers.csv", std::ios::binary);
    if (!out) throw Error("cannot write burgers.csv");
    out << csv;
  }
  return spread <= tol ? 0 : 1;
}

int cmd_run(const std::string& config_path, const GlobalFlags& flags) {
  const Config cfg = load_config(config_path);
  const Scenario scenario = make_scenario(cfg);
  const ConservationReport report = run_scenario(scenario);
  if (!flags.quiet) {
    std::printf("%10s %3s %12s %12s %12s %12s\n", "time", "fd", "div_l2",
                "div_max", "cons_l2", "cons_max");
    for (const ConservationRow& r : report.rows)
      std::printf("%10.4f   %c %12.4e %12.4e %12.4e %12.4e\n", r.time,
                  r.time_stencil, r.div_l2, r.div_max, r.cons_l2, r.cons_max);
  }
  const double div_ceiling = cfg.tolerance("div_ceiling", 0.0);
  const double cons_ceiling = cfg.tolerance("cons_ceiling", 0.0);
  for (const ConservationRow& r : report.rows) {
    if (div_ceiling > 0.0 && r.div_l2 > div_ceiling * flags.tol_scale)
      return 1;
    if (cons_ceiling > 0.0 && r.cons_l2 > cons_ceiling * flags.tol_scale)
      return 1;
  }
  return 0;
}

int cmd_verify(const std::string& suite, int levels, const std::string& out_dir,
               const GlobalFlags& flags) {
  if (levels < 2 && suite != "decomposition")
    throw ConfigError("verify needs at least 2 refinement levels");
  std::vector<StudyRow> rows;
  const bool all = suite == "all";

  if (all || suite == "identities") {
    const std::vector<StudyRow> r = study_identities(levels);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (all || suite == "decomposition") {
    rows.push_back({"decomposition_identity", 0, 0.0, 0.0, 0.0,
                    decomposition_worst(10, 12345u), 0.0, true, 1e-12});
  }
  if (all || suite == "evolution") {
    const std::vector<StudyRow> r =
        study_evolution("shear_with_current", levels);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (all || suite == "conservation") {
    const std::vector<StudyRow> r =
        study_conservation(levels, 16, 2e-2, 0.6, 1.0, 5);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (rows.empty())
    throw ConfigError("unknown suite '" + suite +
                      "' (expected identities, decomposition, evolution, "
                      "conservation or all)");

  print_rows(rows, flags);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_study_csv(out_dir + "/verify_" + suite + ".csv", rows);
  }
  const bool pass = study_passes(rows, flags.tol_scale);
  if (!flags.quiet)
    std::printf("verify %s: %s\n", suite.c_str(), pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dislocation kinematics scenario runner"};
  app.require_subcommand(1);
  GlobalFlags flags;
  app.add_option("--tol-scale", flags.tol_scale,
                 "scale factor applied to pass tolerances");
  app.add_flag("--quiet", flags.quiet, "suppress tables, keep the exit code");

  std::string config_path, suite, out_dir;
  int levels = 3;

  CLI::App* burgers = app.add_subcommand(
      "burgers", "circuit integrals and fluxes of a fixture configuration");
  burgers->add_option("config", config_path, "JSON scenario file")->required();

  CLI::App* run =
      app.add_subcommand("run", "evolve a scenario and report conservation");
  run->add_option("config", config_path, "JSON scenario file")->required();

  CLI::App* verify =
      app.add_subcommand("verify", "convergence and identity studies");
  verify->add_option("suite", suite, "identities | decomposition | evolution | conservation | all")
      ->required();
  verify->add_option("--levels", levels, "refinement levels (default 3)");
  verify->add_option("--out", out_dir, "directory for CSV reports");

  CLI11_PARSE(app, argc, argv);

  try {
    if (burgers->parsed()) return cmd_burgers(config_path, flags);
    if (run->parsed()) return cmd_run(config_path, flags);
    return cmd_verify(suite, levels, out_dir, flags);
  } catch (const dislo::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
