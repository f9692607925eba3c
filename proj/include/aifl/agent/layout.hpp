#pragma once

#include <vector>

#include "aifl/agent/config_grid.hpp"
#include "aifl/agent/metrics.hpp"
#include "aifl/agent/slo.hpp"
#include "aifl/bn/bayes_net.hpp"
#include "aifl/learn/structure.hpp"

namespace aifl::agent {

// Fixed vertex order of the agent's world model.
inline constexpr int kVarBatchSize = 0;
inline constexpr int kVarLearningRate = 1;
inline constexpr int kVarDurationBin = 2;
inline constexpr int kVarAccuracyBin = 3;
inline constexpr int kVarTimeOk = 4;
inline constexpr int kVarPerfOk = 5;
inline constexpr int kAgentVarCount = 6;

std::vector<bn::Variable> agent_variables();

/// Edgeless uniform model over the agent variables.
bn::BayesNet fresh_agent_net();

/// Configuration vertices accept no incoming edges; SLO vertices are the
/// priority children during structure search.
learn::StructureConstraints agent_constraints(int max_parents = 3);

}  // namespace aifl::agent
