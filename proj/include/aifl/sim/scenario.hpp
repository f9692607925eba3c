#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "aifl/sim/round.hpp"

namespace aifl::sim {

/// Everything needed to run one seeded simulation end to end. Device profiles
/// and policies hold either one entry (applied to every client) or one entry
/// per client.
struct Scenario {
  int n_clients = 5;
  int n_rounds = 60;
  agent::SloSpec slo;
  stream::QuantitySchedule schedule;
  int stream_features = 10;
  int stream_classes = 5;
  int stream_centroids = 50;
  double drift_speed = 0.0;
  std::array<int, 2> hidden{64, 32};
  std::vector<DeviceProfile> devices{DeviceProfile{}};
  std::vector<Policy> policies{Policy{}};
  std::array<double, 2> time_preference{0.001, 0.999};
  std::array<double, 2> perf_preference{0.001, 0.999};
  int warmup_cap = 10;
  double epsilon = 1e-9;
  int epochs = 3;
  TimingProvider::Mode timing_mode = TimingProvider::Mode::synthetic;
};

std::vector<std::string> validate(const Scenario& scenario);

struct ScenarioTrace {
  std::vector<RoundRecord> records;
  std::vector<EfeLogRow> efe_rows;
  std::vector<SnapshotEvent> snapshots;
  std::vector<std::pair<int, learn::HistoryDataset>> histories;  // client id -> final history
  nn::MlpParams final_model;
};

/// Builds the clients for `run_seed` and plays all rounds. Client c draws its
/// stream from model seed run_seed * 1000 + c; every other client-level seed
/// is derived from the same pair, so re-running a seed reproduces the trace
/// bit for bit under synthetic timing.
ScenarioTrace run_scenario(const Scenario& scenario, std::uint64_t run_seed);

/// Per-client records of a trace, in client id order.
std::vector<std::vector<RoundRecord>> split_by_client(const ScenarioTrace& trace, int n_clients);

struct GridSearchResult {
  agent::ConfigPoint best;
  std::array<double, agent::kConfigCount> mean_score{};  // mean of both SLO fulfillments
};

/// Plays `horizon` rounds once per grid configuration under an all-fixed
/// policy (same seeds and streams for each) and returns the configuration
/// with the highest mean cumulative fulfillment, both SLOs averaged over
/// clients and seeds. Clients with no post-lifelong round by the horizon
/// score zero. Ties go to grid order.
GridSearchResult find_fixed_optimal(const Scenario& scenario, int horizon,
                                    std::span<const std::uint64_t> run_seeds);

}  // namespace aifl::sim
