#pragma once

// Brute-force reference for exact inference: walks every joint assignment and
// multiplies CPD entries directly, independent of the factor/elimination code
// it is used to check.

#include <map>
#include <stdexcept>
#include <vector>

#include "aifl/bn/bayes_net.hpp"
#include "aifl/util/rng.hpp"

namespace aifl::testsupport {

inline double joint_probability(const bn::BayesNet& net, const std::vector<int>& assignment) {
  double p = 1.0;
  for (int v = 0; v < net.dag.size(); ++v) {
    const bn::Cpd& cpd = net.cpds[v];
    p *= cpd.prob(assignment[v], cpd.parent_joint_index(assignment));
  }
  return p;
}

template <class Visit>
void for_each_assignment(const bn::BayesNet& net, Visit&& visit) {
  std::vector<int> assignment(net.dag.size(), 0);
  while (true) {
    visit(const_cast<const std::vector<int>&>(assignment));
    int i = net.dag.size() - 1;
    for (; i >= 0; --i) {
      if (++assignment[i] < net.dag.vars[i].cardinality) break;
      assignment[i] = 0;
    }
    if (i < 0) break;
  }
}

/// P(targets | evidence) by full enumeration; targets indexed ascending by id
/// with the earlier variable most significant (the query_marginal layout).
inline std::vector<double> oracle_marginal(const bn::BayesNet& net, std::vector<int> targets,
                                           const bn::Evidence& evidence) {
  std::sort(targets.begin(), targets.end());
  std::size_t table = 1;
  for (int t : targets) table *= static_cast<std::size_t>(net.dag.vars[t].cardinality);
  std::vector<double> out(table, 0.0);
  double z = 0.0;
  for_each_assignment(net, [&](const std::vector<int>& assignment) {
    for (const auto& [v, s] : evidence) {
      if (assignment[v] != s) return;
    }
    const double p = joint_probability(net, assignment);
    z += p;
    std::size_t idx = 0;
    for (int t : targets) {
      idx = idx * static_cast<std::size_t>(net.dag.vars[t].cardinality) +
            static_cast<std::size_t>(assignment[t]);
    }
    out[idx] += p;
  });
  if (!(z > 0.0)) throw std::runtime_error("oracle: evidence has zero probability");
  for (double& v : out) v /= z;
  return out;
}

/// Random DAG + random positive Dirichlet pseudo-counts. Cardinalities in
/// [2, max_card].
inline bn::BayesNet random_net(rngu::Rng& rng, int n_vars, int max_card, double edge_prob) {
  bn::BayesNet net;
  for (int v = 0; v < n_vars; ++v) {
    net.dag.vars.push_back({"v" + std::to_string(v), 2 + rng.below_int(max_card - 1),
                            bn::VarRole::system});
  }
  const std::vector<int> order = rng.permutation(n_vars);
  for (int i = 0; i < n_vars; ++i) {
    for (int j = i + 1; j < n_vars; ++j) {
      if (rng.uniform01() < edge_prob) net.dag.edges.insert({order[i], order[j]});
    }
  }
  for (int v = 0; v < n_vars; ++v) {
    bn::Cpd cpd = bn::Cpd::uniform(net.dag, v);
    for (double& c : cpd.counts) c = rng.uniform(0.2, 5.0);
    cpd.renormalize_all();
    net.cpds.push_back(std::move(cpd));
  }
  return net;
}

}  // namespace aifl::testsupport
