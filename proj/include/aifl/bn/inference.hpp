#pragma once

#include <stdexcept>

#include "aifl/bn/bayes_net.hpp"
#include "aifl/bn/factor.hpp"

namespace aifl::bn {

struct ZeroEvidenceProbability : std::runtime_error {
  ZeroEvidenceProbability() : std::runtime_error("evidence has probability zero under the model") {}
};

/// CPD of `var` lifted to a factor with ascending-id scope.
Factor cpd_factor(const BayesNet& net, int var);

/// Exact P(targets | evidence) by variable elimination, normalized to sum 1.
/// Scope of the result is the target set in ascending vertex-id order.
/// `elimination_order` must be a permutation of the summed-out vertices; when
/// absent a greedy min-degree order is used (the result is order independent).
Factor query_marginal(const BayesNet& net, const std::vector<int>& targets,
                      const Evidence& evidence,
                      const std::vector<int>* elimination_order = nullptr);

/// Most probable joint assignment of `targets` given `evidence`. Ties are
/// broken by the smallest joint state with targets compared in lexicographic
/// variable-name order.
std::map<int, int> map_query(const BayesNet& net, const std::vector<int>& targets,
                             const Evidence& evidence);

}  // namespace aifl::bn
