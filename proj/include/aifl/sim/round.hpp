#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aifl/agent/agent.hpp"
#include "aifl/nn/mlp.hpp"
#include "aifl/sim/timing.hpp"
#include "aifl/stream/rbf.hpp"
#include "aifl/util/rng.hpp"

namespace aifl::sim {

enum class PolicyKind { aif, random, fixed };

const char* to_string(PolicyKind kind);
std::optional<PolicyKind> policy_from_string(const std::string& s);

struct Policy {
  PolicyKind kind = PolicyKind::aif;
  agent::ConfigPoint fixed{};
};

agent::ConfigPoint random_config(rngu::Rng& rng);

agent::SloOutcome check_slo(double duration_s, double val_accuracy, const agent::SloSpec& spec);

struct ClientState {
  int id = 0;
  stream::StreamState stream;
  agent::AgentState agent;
  std::vector<stream::Sample> train_set;
  std::vector<stream::Sample> validation_set;
  TimingProvider timing;
  Policy policy;
  rngu::Rng policy_rng{0};
  std::uint64_t train_seed_base = 0;
};

struct RoundRecord {
  int round = 0;
  int client_id = 0;
  PolicyKind policy = PolicyKind::aif;
  agent::ConfigPoint config;
  double duration_s = 0.0;
  double val_accuracy = 0.0;
  bool time_ok = false;
  bool perf_ok = false;
  bool lifelong = false;
  std::optional<double> expected_ig;
  std::optional<double> observed_ig;
  bool relearned = false;
};

struct EfeLogRow {
  int round = 0;
  int client_id = 0;
  agent::EfeBreakdown breakdown;
};

struct SnapshotEvent {
  int round = 0;
  int client_id = 0;
  std::string net_text;
};

struct RoundContext {
  agent::SloSpec slo;
  stream::QuantitySchedule schedule;
  int epochs = 3;
  int warmup_cap = 10;
  double prev_global_accuracy = 0.0;
};

struct RoundResult {
  nn::MlpParams model;
  double global_accuracy = 0.0;
  std::vector<RoundRecord> records;
  std::vector<EfeLogRow> efe_rows;
  std::vector<SnapshotEvent> snapshots;
};

/// One federated round: lifelong gate, data handoff, per-client configuration
/// choice, local training, SLO check, belief update, then sample-weighted
/// aggregation. The returned global accuracy is the mean client validation
/// accuracy of the aggregated model and feeds the next round's gate.
RoundResult run_round(std::vector<ClientState>& clients, const nn::MlpParams& global_model,
                      int round, const RoundContext& ctx);

enum class SloKind { time, performance };

/// Fraction of fulfilled rounds among those executed with the lifelong flag
/// set. Throws std::invalid_argument when no such round exists.
double cumulative_fulfillment(std::span<const RoundRecord> client_records, SloKind which);

}  // namespace aifl::sim
