#include "aifl/agent/agent.hpp"

#include <array>
#include <stdexcept>

namespace aifl::agent {

std::vector<int> observation_row(const ObservationRecord& obs) {
  const int bs = batch_size_index(obs.config.batch_size);
  const int lr = learning_rate_index(obs.config.learning_rate);
  if (bs < 0 || lr < 0) throw std::invalid_argument("observation_row: config off grid");
  if (obs.metrics.duration_bin < 0 || obs.metrics.duration_bin >= kDurationBins ||
      obs.metrics.accuracy_bin < 0 || obs.metrics.accuracy_bin >= kAccuracyBins) {
    throw std::invalid_argument("observation_row: metric bin out of range");
  }
  return {bs,
          lr,
          obs.metrics.duration_bin,
          obs.metrics.accuracy_bin,
          static_cast<int>(obs.outcome.time_ok),
          static_cast<int>(obs.outcome.perf_ok)};
}

AgentState make_agent(const SloSpec& slo, const PreferenceVector& prefs, double epsilon,
                      std::uint64_t seed) {
  AgentState agent;
  agent.net = fresh_agent_net();
  agent.history.columns = agent_variables();
  agent.slo = slo;
  agent.prefs = prefs;
  agent.constraints = agent_constraints();
  agent.epsilon = epsilon;
  agent.seed = seed;
  return agent;
}

ConfigChoice infer_best_config(const AgentState& agent) {
  std::array<long, kConfigCount> visits{};
  for (const auto& row : agent.history.rows) {
    const int idx = row[kVarBatchSize] * static_cast<int>(kLearningRates.size()) +
                    row[kVarLearningRate];
    ++visits[idx];
  }

  ConfigChoice choice;
  choice.breakdowns.reserve(kConfigCount);
  int best = 0;
  for (int i = 0; i < kConfigCount; ++i) {
    choice.breakdowns.push_back(
        compute_efe(agent.net, config_grid()[i], agent.prefs, agent.epsilon));
    if (i == 0) continue;
    const double efe = choice.breakdowns[i].efe;
    const double best_efe = choice.breakdowns[best].efe;
    if (efe < best_efe || (efe == best_efe && visits[i] < visits[best])) best = i;
  }
  choice.config = choice.breakdowns[best].config;
  choice.expected_ig_at_map = choice.breakdowns[best].expected_ig_at_map;
  return choice;
}

double observed_surprise(const bn::BayesNet& net, const ObservationRecord& obs, double epsilon) {
  return observed_surprise_for(net, obs.config, obs.outcome, epsilon);
}

BeliefUpdate update_beliefs(AgentState& agent, const ObservationRecord& obs, double expected_ig) {
  if (!agent.lifelong) throw std::logic_error("update_beliefs: lifelong flag not set");
  agent.history.rows.push_back(observation_row(obs));

  BeliefUpdate result;
  result.observed_ig = observed_surprise(agent.net, obs, agent.epsilon);
  result.relearned = result.observed_ig > expected_ig;
  if (result.relearned) {
    agent.net =
        learn::structural_relearn(agent.history, agent.constraints, agent.alpha, agent.seed);
    ++agent.relearn_count;
  } else {
    learn::update_parameters(agent.net, observation_row(obs));
  }
  return result;
}

bool maybe_set_lifelong(AgentState& agent, double global_accuracy, int round, int warmup_cap) {
  if (!agent.lifelong &&
      (global_accuracy >= agent.slo.accuracy_target - 0.02 || round >= warmup_cap)) {
    agent.lifelong = true;
  }
  return agent.lifelong;
}

}  // namespace aifl::agent
