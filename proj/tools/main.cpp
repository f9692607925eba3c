#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>

#include "aifl/harness/csv.hpp"
#include "aifl/harness/experiment.hpp"
#include "aifl/harness/spec.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed_override;
  std::optional<int> repetitions_override;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment spec (JSON)")->required();
  cmd->add_option("--out", args.out_dir, "output directory")->required();
  cmd->add_option("--seed", args.seed_override, "override base_seed");
  cmd->add_option("--repetitions", args.repetitions_override, "override repetitions");
}

aifl::harness::ExperimentSpec load(const CommonArgs& args) {
  auto spec = aifl::harness::parse_spec(args.config_path);
  if (args.seed_override) spec.base_seed = *args.seed_override;
  if (args.repetitions_override) {
    if (*args.repetitions_override < 1) {
      throw aifl::harness::ConfigError("--repetitions must be >= 1");
    }
    spec.repetitions = *args.repetitions_override;
  }
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SLO-aware federated learning simulator with active-inference agents"};
  app.require_subcommand(1);

  CommonArgs run_args, compare_args, grid_args;
  int grid_horizon = 0;

  CLI::App* run_cmd = app.add_subcommand("run", "run the experiment and write CSV traces");
  add_common(run_cmd, run_args);
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "run aif, random, and fixed-optimal policies on shared seeds");
  add_common(compare_cmd, compare_args);
  CLI::App* grid_cmd =
      app.add_subcommand("grid", "search the configuration grid for the fixed-optimal baseline");
  add_common(grid_cmd, grid_args);
  grid_cmd->add_option("--horizon", grid_horizon, "scoring round (default: spec horizon)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      const auto spec = load(run_args);
      const auto summary = aifl::harness::run_experiment(spec, run_args.out_dir);
      std::cout << "wrote " << run_args.out_dir << " (" << summary.clients.size()
                << " client summaries)\n";
    } else if (compare_cmd->parsed()) {
      const auto spec = load(compare_args);
      const auto result = aifl::harness::compare_policies(spec, compare_args.out_dir);
      std::cout << "fixed-optimal config: batch_size=" << result.fixed_config.batch_size
                << " learning_rate=" << aifl::harness::fmt_double(result.fixed_config.learning_rate)
                << "\nwrote " << compare_args.out_dir << "\n";
    } else if (grid_cmd->parsed()) {
      auto spec = load(grid_args);
      if (grid_horizon > 0) spec.horizon = grid_horizon;
      const auto seeds = aifl::harness::run_seeds(spec);
      const auto result = aifl::sim::find_fixed_optimal(
          spec.scenario, std::min(spec.horizon, spec.scenario.n_rounds), seeds);
      std::filesystem::create_directories(grid_args.out_dir);
      std::ofstream out(std::filesystem::path(grid_args.out_dir) / "grid_result.csv",
                        std::ios::binary);
      out << "batch_size,learning_rate,mean_fulfillment\n";
      for (int i = 0; i < aifl::agent::kConfigCount; ++i) {
        const auto& c = aifl::agent::config_grid()[i];
        out << c.batch_size << "," << aifl::harness::fmt_double(c.learning_rate) << ","
            << aifl::harness::fmt_double(result.mean_score[i]) << "\n";
      }
      std::cout << "fixed-optimal config: batch_size=" << result.best.batch_size
                << " learning_rate=" << aifl::harness::fmt_double(result.best.learning_rate)
                << "\n";
    }
  } catch (const aifl::harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
