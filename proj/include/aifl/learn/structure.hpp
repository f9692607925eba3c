#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "aifl/bn/bayes_net.hpp"
#include "aifl/learn/dataset.hpp"

namespace aifl::learn {

struct StructureConstraints {
  std::set<std::pair<int, int>> forbidden_edges;
  int max_parents = 3;
  std::set<int> priority_children;
};

/// Decomposable BIC: sum over families of the maximum log-likelihood of the
/// column given its parents, minus (free parameters / 2) * ln N.
double family_bic(const HistoryDataset& data, int child, const std::vector<int>& parents);
double score_bic(const bn::Dag& dag, const HistoryDataset& data);

enum class MoveKind { add, remove, reverse };

struct HillClimbMove {
  MoveKind kind;
  int parent;
  int child;
  double score_before;
  double score_after;
};

/// Greedy steepest-ascent search over add/remove/reverse edge moves. Every
/// accepted move strictly increases the BIC score; constraints are never
/// violated. Equal-gain candidates prefer moves whose resulting child is in
/// `priority_children`, then the lexicographically smallest (parent, child)
/// name pair. The search is deterministic; `seed` is kept in the signature
/// for interface stability and reserved for randomized restarts.
bn::Dag hill_climb(const HistoryDataset& data, const StructureConstraints& constraints,
                   std::uint64_t seed, std::vector<HillClimbMove>* move_log = nullptr);

/// Dirichlet-categorical posterior-mean fit with symmetric prior `alpha`:
/// every pseudo-count cell is alpha plus its empirical count.
bn::BayesNet fit_bayesian(const bn::Dag& dag, const HistoryDataset& data, double alpha);

/// Adds one complete observation to the matching count cell of every CPD.
/// `obs` must assign all network variables (in vertex order).
void update_parameters(bn::BayesNet& net, const std::vector<int>& obs);

/// Discards the previous structure: hill climb on the full history, then a
/// fresh Bayesian fit.
bn::BayesNet structural_relearn(const HistoryDataset& data, const StructureConstraints& constraints,
                                double alpha, std::uint64_t seed);

}  // namespace aifl::learn
