#pragma once

#include <cstdint>
#include <vector>

#include "aifl/agent/efe.hpp"
#include "aifl/agent/layout.hpp"
#include "aifl/learn/dataset.hpp"
#include "aifl/learn/structure.hpp"

namespace aifl::agent {

/// One row of agent experience.
struct ObservationRecord {
  ConfigPoint config;
  MetricBins metrics;
  SloOutcome outcome;
  int round = 0;
};

/// `obs` as a complete assignment in agent vertex order.
std::vector<int> observation_row(const ObservationRecord& obs);

struct AgentState {
  bn::BayesNet net;
  learn::HistoryDataset history;
  bool lifelong = false;
  SloSpec slo;
  PreferenceVector prefs;
  learn::StructureConstraints constraints;
  double epsilon = 1e-9;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  int relearn_count = 0;
};

AgentState make_agent(const SloSpec& slo, const PreferenceVector& prefs, double epsilon,
                      std::uint64_t seed);

struct ConfigChoice {
  ConfigPoint config;
  double expected_ig_at_map = 0.0;
  std::vector<EfeBreakdown> breakdowns;  // all grid configs, grid order
};

/// Scores every grid configuration and returns the EFE argmin. Exact EFE ties
/// go to the least-visited configuration (by history), then grid order; a
/// fresh agent therefore returns the first grid point, while tied phases walk
/// the grid instead of pinning one arm forever.
ConfigChoice infer_best_config(const AgentState& agent);

double observed_surprise(const bn::BayesNet& net, const ObservationRecord& obs, double epsilon);

struct BeliefUpdate {
  bool relearned = false;
  double observed_ig = 0.0;
};

/// Appends the observation to the history, then either relearns the structure
/// from scratch (observed surprise strictly above the expected information
/// gain) or applies a single-count parameter update.
BeliefUpdate update_beliefs(AgentState& agent, const ObservationRecord& obs, double expected_ig);

/// Latches the lifelong flag once the aggregated model is within 0.02 of the
/// accuracy target or the warm-up cap is reached.
bool maybe_set_lifelong(AgentState& agent, double global_accuracy, int round, int warmup_cap);

}  // namespace aifl::agent
