#include "app.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <optional>

#include "colombeau/errors.hpp"
#include "experiments.hpp"

namespace colombeau::app {

namespace {

int run(const std::filesystem::path& config_path, std::optional<std::uint64_t> seed, int workers,
        const std::string& out_dir, std::ostream& out, std::ostream& err) {
  Config cfg;
  try {
    cfg = Config::read(config_path);
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kExitSchema;
  }
  RunContext ctx;
  ctx.workers = workers;
  ctx.seed = seed ? *seed : static_cast<std::uint64_t>(cfg.integer("seed"));
  const std::filesystem::path dir =
      out_dir.empty() ? std::filesystem::path("results") / config_path.stem() : std::filesystem::path(out_dir);

  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  try {
    result = run_experiment(cfg, ctx);
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kExitSchema;
  } catch (const Error& e) {
    err << cfg.experiment() << " failed: " << e.what() << '\n';
    result.check("run", false, "error", "completes", e.what());
  }
  RunInfo info;
  info.config_text = cfg.text();
  info.config_source = config_path.string();
  info.experiment = cfg.experiment();
  info.seed = ctx.seed;
  info.workers = workers;
  info.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_results(dir, info, result);

  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  const auto failures = result.failures();
  out << cfg.experiment() << ": " << result.checks.size() - failures.size() << " of " << result.checks.size()
      << " checks passed; results in " << dir.string() << '\n';
  if (failures.empty()) return kExitOk;
  err << "failing checks:\n";
  for (const auto* c : failures) {
    err << "  " << c->name << ": measured " << c->measured << ", required " << c->threshold;
    if (!c->detail.empty()) err << " (" << c->detail << ")";
    err << '\n';
  }
  return kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App cli{"Regularization nets, square roots of measures and Schroedinger sweeps"};
  cli.require_subcommand(1);
  cli.fallthrough();
  int workers = 1;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  cli.add_option("--workers", workers, "worker threads for independent eps tasks")
      ->check(CLI::Range(1, 1024));
  cli.add_option("--seed", seed, "seed for random probes (overrides the config)");
  cli.add_option("--out", out_dir, "results directory (default results/<config stem>)");

  std::string config_path;
  auto* run_cmd = cli.add_subcommand("run", "run the experiment named in a config file");
  run_cmd->add_option("config", config_path, "config file")->required();
  std::string report_dir;
  auto* report_cmd = cli.add_subcommand("report", "summarize a results directory");
  report_cmd->add_option("dir", report_dir, "results directory")->required();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << cli.help();
      return kExitOk;
    }
    err << e.what() << '\n';
    return kExitSchema;
  }

  if (*run_cmd) return run(config_path, seed, workers, out_dir, out, err);
  try {
    out << report(report_dir);
  } catch (const MissingManifest& e) {
    err << e.what() << '\n';
    return kExitSchema;
  }
  return kExitOk;
}

}  // namespace colombeau::app
