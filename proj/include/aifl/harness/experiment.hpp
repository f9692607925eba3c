#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <vector>

#include "aifl/harness/spec.hpp"

namespace aifl::harness {

struct ClientSummary {
  std::uint64_t run_seed = 0;
  int client_id = 0;
  sim::PolicyKind policy = sim::PolicyKind::aif;
  std::optional<double> cum_time_slo;
  std::optional<double> cum_perf_slo;
  int relearn_count = 0;
};

struct RoundMean {
  std::uint64_t run_seed = 0;
  int round = 0;
  double mean_time_ok = 0.0;
  double mean_perf_ok = 0.0;
};

struct RunSummary {
  std::vector<ClientSummary> clients;
  std::vector<RoundMean> round_means;
  // Chosen-config counts over (seed, client) at each checkpoint round: the
  // last round before every quantity-drift start, plus the final round.
  std::map<int, std::array<long, agent::kConfigCount>> config_histograms;
};

std::vector<int> checkpoint_rounds(const sim::Scenario& scenario);

/// Runs every repetition, writing rounds.csv, efe.csv, summary.csv,
/// spec_echo.json, bn_snapshots/, histories/, and models/ under `out_dir`.
/// Byte-identical re-runs under synthetic timing.
RunSummary run_experiment(const ExperimentSpec& spec, const std::filesystem::path& out_dir);

struct ComparisonRow {
  std::string policy;
  std::uint64_t run_seed = 0;
  int round = 0;
  double mean_cum_time = 0.0;
  double mean_cum_perf = 0.0;
  double mean_cum_both = 0.0;
  int clients_counted = 0;
};

struct ComparisonResult {
  agent::ConfigPoint fixed_config;                 // find_fixed_optimal winner
  std::array<double, agent::kConfigCount> grid_scores{};
  std::vector<ComparisonRow> rows;                 // per policy, seed, round
};

/// Runs aif, random, and fixed(optimal) over the same seeds and streams and
/// writes compare.csv plus per-policy rounds CSVs.
ComparisonResult compare_policies(const ExperimentSpec& spec,
                                  const std::filesystem::path& out_dir);

}  // namespace aifl::harness
