#include "aifl/agent/layout.hpp"

namespace aifl::agent {

std::vector<bn::Variable> agent_variables() {
  return {
      {"batch_size", static_cast<int>(kBatchSizes.size()), bn::VarRole::configuration},
      {"learning_rate", static_cast<int>(kLearningRates.size()), bn::VarRole::configuration},
      {"duration_bin", kDurationBins, bn::VarRole::system},
      {"accuracy_bin", kAccuracyBins, bn::VarRole::system},
      {"time_ok", 2, bn::VarRole::slo},
      {"perf_ok", 2, bn::VarRole::slo},
  };
}

bn::BayesNet fresh_agent_net() { return bn::uniform_net(agent_variables()); }

learn::StructureConstraints agent_constraints(int max_parents) {
  learn::StructureConstraints constraints;
  constraints.max_parents = max_parents;
  for (int parent = 0; parent < kAgentVarCount; ++parent) {
    constraints.forbidden_edges.insert({parent, kVarBatchSize});
    constraints.forbidden_edges.insert({parent, kVarLearningRate});
  }
  constraints.priority_children = {kVarTimeOk, kVarPerfOk};
  return constraints;
}

}  // namespace aifl::agent
