// Command-line driver: run scenarios, sample detection events, emit plots.
//
// Exit codes: 0 success, 1 validation, 2 numerical failure, 3 I/O.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "arago/errors.hpp"
#include "arago/run.hpp"

namespace {

enum Exit { kOk = 0, kValidation = 1, kNumerical = 2, kIo = 3 };

void report(const arago::RunManifest& m) {
  std::printf("scenario %s -> %s (%.2f s)\n", m.scenario.name.c_str(), m.directory.string().c_str(),
              m.wall_seconds);
  for (const auto& f : m.files) std::printf("  %-28s %s\n", f.name.c_str(), f.sha256.c_str());
}

void finish(const arago::RunManifest& m, bool plot) {
  report(m);
  if (plot)
    for (const auto& p : arago::emit_plot_data(m)) std::printf("  plot script %s\n", p.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-slit electromagnetic energy flow simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(arago::version()));

  std::string out_dir;
  bool plot = false;

  auto* run = app.add_subcommand("run", "Run a scenario from a key = value config file");
  std::string config_path;
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output root (default $ARAGO_OUTPUT_DIR or ./arago-output)");
  run->add_flag("--plot", plot, "Also write gnuplot scripts");

  auto* scen = app.add_subcommand("scenario", "Run a built-in scenario");
  std::string scenario_name;
  scen->add_option("name", scenario_name, "Built-in name (see list-scenarios)")->required();
  scen->add_option("--out", out_dir, "Output root");
  scen->add_flag("--plot", plot, "Also write gnuplot scripts");

  auto* list = app.add_subcommand("list-scenarios", "List built-in scenarios");

  auto* sample = app.add_subcommand("sample", "Sample single-photon detection positions");
  long n = 0;
  std::string sample_scenario = "fig5", sample_config;
  std::uint64_t seed = 0;
  bool seed_given = false;
  sample->add_option("--n", n, "Number of detections")->required()->check(CLI::PositiveNumber);
  auto* from_builtin = sample->add_option("--scenario", sample_scenario, "Built-in scenario (default fig5)");
  sample->add_option("--config", sample_config, "Config file instead of a built-in")->excludes(from_builtin);
  sample->add_option("--seed", seed, "Seed (default: the scenario's)")->each([&](const std::string&) {
    seed_given = true;
  });
  sample->add_option("--out", out_dir, "Output root");

  auto* plot_cmd = app.add_subcommand("plot", "Write gnuplot scripts for an existing run");
  std::string run_dir;
  plot_cmd->add_option("run_dir", run_dir, "Run directory containing manifest.json")->required();

  auto* verify = app.add_subcommand("verify", "Check a run's files against its manifest digests");
  verify->add_option("run_dir", run_dir, "Run directory containing manifest.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  try {
    if (*list) {
      for (const auto& name : arago::builtin_scenario_names()) std::printf("%s\n", name.c_str());
    } else if (*run) {
      const arago::Scenario s = arago::load_scenario(config_path);
      finish(arago::run_scenario(s, arago::output_root(out_dir) / s.name), plot);
    } else if (*scen) {
      const arago::Scenario s = arago::builtin_scenario(scenario_name);
      finish(arago::run_scenario(s, arago::output_root(out_dir) / s.name), plot);
    } else if (*sample) {
      const arago::Scenario s = sample_config.empty() ? arago::builtin_scenario(sample_scenario)
                                                      : arago::load_scenario(sample_config);
      const auto profile = arago::screen_profile(s.wave.screen_distance, s.grid(), s.wave, s.grating,
                                                 s.polarization, s.polarizers, s.profile);
      const auto xs = arago::sample_detections(profile, n, seed_given ? seed : s.seed);
      const auto path = arago::write_detections(xs, arago::output_root(out_dir) / s.name);
      std::printf("%ld detections -> %s\n", n, path.string().c_str());
    } else if (*plot_cmd) {
      for (const auto& p : arago::emit_plot_data(arago::load_manifest(run_dir)))
        std::printf("%s\n", p.string().c_str());
    } else if (*verify) {
      const auto m = arago::load_manifest(run_dir);
      if (!arago::verify_manifest(m)) {
        std::fprintf(stderr, "error: digest mismatch or missing file in %s\n", run_dir.c_str());
        return kIo;
      }
      std::printf("ok: %zu files match\n", m.files.size());
    }
  } catch (const arago::ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return kValidation;
  } catch (const arago::DomainError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return kValidation;
  } catch (const arago::NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kNumerical;
  } catch (const arago::IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kIo;
  }
  return kOk;
}
