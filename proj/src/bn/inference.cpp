#include "aifl/bn/inference.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace aifl::bn {

Factor cpd_factor(const BayesNet& net, int var) {
  const Cpd& cpd = net.cpds[var];
  Factor f;
  f.scope = cpd.parents;
  f.scope.push_back(var);
  std::sort(f.scope.begin(), f.scope.end());
  f.cards.reserve(f.scope.size());
  for (int v : f.scope) f.cards.push_back(net.dag.vars[v].cardinality);
  f.values.assign(f.table_size(), 0.0);

  std::vector<int> assignment(net.dag.size(), 0);
  std::vector<int> digits(f.scope.size(), 0);
  std::size_t linear = 0;
  while (true) {
    for (std::size_t i = 0; i < f.scope.size(); ++i) assignment[f.scope[i]] = digits[i];
    f.values[linear++] = cpd.prob(assignment[var], cpd.parent_joint_index(assignment));
    int i = static_cast<int>(digits.size()) - 1;
    for (; i >= 0; --i) {
      if (++digits[i] < f.cards[i]) break;
      digits[i] = 0;
    }
    if (i < 0) break;
  }
  return f;
}

namespace {

void check_query_args(const BayesNet& net, const std::vector<int>& targets,
                      const Evidence& evidence) {
  if (targets.empty()) throw std::invalid_argument("query: empty target set");
  std::set<int> seen;
  for (int t : targets) {
    if (t < 0 || t >= net.dag.size()) throw std::invalid_argument("query: target out of range");
    if (!seen.insert(t).second) throw std::invalid_argument("query: duplicate target");
    if (evidence.count(t)) throw std::invalid_argument("query: target also in evidence");
  }
  for (const auto& [v, s] : evidence) {
    if (v < 0 || v >= net.dag.size()) throw std::invalid_argument("query: evidence var out of range");
    if (s < 0 || s >= net.dag.vars[v].cardinality) {
      throw std::invalid_argument("query: evidence state out of range");
    }
  }
}

// Greedy min-degree order over the factor interaction graph.
std::vector<int> min_degree_order(const std::vector<Factor>& factors, std::set<int> to_eliminate) {
  std::map<int, std::set<int>> neighbors;
  for (int v : to_eliminate) neighbors[v] = {};
  for (const Factor& f : factors) {
    for (int a : f.scope) {
      if (!to_eliminate.count(a)) continue;
      for (int b : f.scope) {
        if (b != a && to_eliminate.count(b)) neighbors[a].insert(b);
      }
    }
  }
  std::vector<int> order;
  order.reserve(to_eliminate.size());
  while (!to_eliminate.empty()) {
    int best = -1;
    std::size_t best_degree = 0;
    for (int v : to_eliminate) {
      const std::size_t d = neighbors[v].size();
      if (best < 0 || d < best_degree) {
        best = v;
        best_degree = d;
      }
    }
    order.push_back(best);
    // Connect the eliminated vertex's remaining neighbors (fill-in).
    for (int a : neighbors[best]) {
      neighbors[a].erase(best);
      for (int b : neighbors[best]) {
        if (a != b) neighbors[a].insert(b);
      }
    }
    neighbors.erase(best);
    to_eliminate.erase(best);
  }
  return order;
}

}  // namespace

Factor query_marginal(const BayesNet& net, const std::vector<int>& targets,
                      const Evidence& evidence, const std::vector<int>* elimination_order) {
  check_query_args(net, targets, evidence);

  std::vector<Factor> factors;
  factors.reserve(net.dag.size());
  for (int v = 0; v < net.dag.size(); ++v) {
    factors.push_back(factor_reduce(cpd_factor(net, v), evidence));
  }

  std::set<int> to_eliminate;
  for (int v = 0; v < net.dag.size(); ++v) to_eliminate.insert(v);
  for (int t : targets) to_eliminate.erase(t);
  for (const auto& [v, s] : evidence) {
    (void)s;
    to_eliminate.erase(v);
  }

  std::vector<int> order;
  if (elimination_order != nullptr) {
    order = *elimination_order;
    if (std::set<int>(order.begin(), order.end()) != to_eliminate || order.size() != to_eliminate.size()) {
      throw std::invalid_argument("query: elimination order is not a permutation of the hidden vertices");
    }
  } else {
    order = min_degree_order(factors, to_eliminate);
  }

  for (int v : order) {
    Factor merged = Factor::unit();
    std::vector<Factor> rest;
    rest.reserve(factors.size());
    for (Factor& f : factors) {
      if (f.contains(v)) {
        merged = factor_product(merged, f);
      } else {
        rest.push_back(std::move(f));
      }
    }
    rest.push_back(factor_marginalize(merged, v));
    factors = std::move(rest);
  }

  Factor joint = Factor::unit();
  for (const Factor& f : factors) joint = factor_product(joint, f);

  const double z = factor_sum(joint);
  if (!(z > 0.0)) throw ZeroEvidenceProbability();
  for (double& v : joint.values) v /= z;
  return joint;
}

std::map<int, int> map_query(const BayesNet& net, const std::vector<int>& targets,
                             const Evidence& evidence) {
  const Factor posterior = query_marginal(net, targets, evidence);
  // Tie comparison uses states ordered by variable name.
  std::vector<std::size_t> name_order(posterior.scope.size());
  for (std::size_t i = 0; i < name_order.size(); ++i) name_order[i] = i;
  std::sort(name_order.begin(), name_order.end(), [&](std::size_t a, std::size_t b) {
    return net.dag.vars[posterior.scope[a]].name < net.dag.vars[posterior.scope[b]].name;
  });

  std::vector<int> digits(posterior.scope.size(), 0);
  std::vector<int> best_digits;
  double best_value = -1.0;
  std::size_t linear = 0;
  auto lex_less = [&](const std::vector<int>& a, const std::vector<int>& b) {
    for (std::size_t i : name_order) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  };
  while (true) {
    const double v = posterior.values[linear++];
    if (v > best_value || (v == best_value && lex_less(digits, best_digits))) {
      best_value = v;
      best_digits = digits;
    }
    int i = static_cast<int>(digits.size()) - 1;
    for (; i >= 0; --i) {
      if (++digits[i] < posterior.cards[i]) break;
      digits[i] = 0;
    }
    if (i < 0) break;
  }
  std::map<int, int> out;
  for (std::size_t i = 0; i < posterior.scope.size(); ++i) out[posterior.scope[i]] = best_digits[i];
  return out;
}

}  // namespace aifl::bn
