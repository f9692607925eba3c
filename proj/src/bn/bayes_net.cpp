#include "aifl/bn/bayes_net.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace aifl::bn {

const char* to_string(VarRole role) {
  switch (role) {
    case VarRole::configuration: return "configuration";
    case VarRole::slo: return "slo";
    case VarRole::system: return "system";
  }
  return "unknown";
}

std::optional<VarRole> role_from_string(const std::string& s) {
  if (s == "configuration") return VarRole::configuration;
  if (s == "slo") return VarRole::slo;
  if (s == "system") return VarRole::system;
  return std::nullopt;
}

std::vector<int> Dag::parents_of(int child) const {
  std::vector<int> out;
  for (const auto& [p, c] : edges) {
    if (c == child) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Dag::children_of(int parent) const {
  std::vector<int> out;
  for (const auto& [p, c] : edges) {
    if (p == parent) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Dag::has_path(int from, int to) const {
  if (from == to) return true;
  std::vector<char> seen(vars.size(), 0);
  std::deque<int> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (const auto& [p, c] : edges) {
      if (p != v || seen[c]) continue;
      if (c == to) return true;
      seen[c] = 1;
      queue.push_back(c);
    }
  }
  return false;
}

std::optional<std::vector<int>> Dag::topological_order() const {
  const int n = size();
  std::vector<int> indegree(n, 0);
  for (const auto& [p, c] : edges) {
    (void)p;
    ++indegree[c];
  }
  std::deque<int> ready;
  for (int v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    const int v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (const auto& [p, c] : edges) {
      if (p != v) continue;
      if (--indegree[c] == 0) ready.push_back(c);
    }
  }
  if (static_cast<int>(order.size()) != n) return std::nullopt;
  return order;
}

int Dag::find_var(const std::string& name) const {
  for (int v = 0; v < size(); ++v) {
    if (vars[v].name == name) return v;
  }
  return -1;
}

int Cpd::parent_joint() const {
  int j = 1;
  for (int card : parent_cards) j *= card;
  return j;
}

int Cpd::parent_joint_index(const std::vector<int>& full_assignment) const {
  int idx = 0;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    idx = idx * parent_cards[i] + full_assignment[parents[i]];
  }
  return idx;
}

void Cpd::add_count(int child_state, int pj, double delta) {
  counts[static_cast<std::size_t>(child_state) * parent_joint() + pj] += delta;
}

void Cpd::renormalize_column(int pj) {
  const int j = parent_joint();
  double total = 0.0;
  for (int s = 0; s < child_card; ++s) total += counts[static_cast<std::size_t>(s) * j + pj];
  for (int s = 0; s < child_card; ++s) {
    probs[static_cast<std::size_t>(s) * j + pj] =
        total > 0.0 ? counts[static_cast<std::size_t>(s) * j + pj] / total
                    : std::numeric_limits<double>::quiet_NaN();
  }
}

void Cpd::renormalize_all() {
  probs.assign(counts.size(), 0.0);
  for (int pj = 0; pj < parent_joint(); ++pj) renormalize_column(pj);
}

Cpd Cpd::uniform(const Dag& dag, int child) {
  Cpd cpd;
  cpd.child = child;
  cpd.parents = dag.parents_of(child);
  cpd.parent_cards.reserve(cpd.parents.size());
  for (int p : cpd.parents) cpd.parent_cards.push_back(dag.vars[p].cardinality);
  cpd.child_card = dag.vars[child].cardinality;
  cpd.counts.assign(static_cast<std::size_t>(cpd.child_card) * cpd.parent_joint(), 1.0);
  cpd.renormalize_all();
  return cpd;
}

namespace {

void check_cpd(const BayesNet& net, int v, std::vector<std::string>& out) {
  const Cpd& cpd = net.cpds[v];
  std::ostringstream at;
  at << "cpd[" << net.dag.vars[v].name << "]: ";
  if (cpd.child != v) {
    out.push_back(at.str() + "child index mismatch");
    return;
  }
  if (cpd.parents != net.dag.parents_of(v)) {
    out.push_back(at.str() + "parent set differs from graph");
    return;
  }
  std::vector<int> expect_cards;
  for (int p : cpd.parents) expect_cards.push_back(net.dag.vars[p].cardinality);
  if (cpd.parent_cards != expect_cards || cpd.child_card != net.dag.vars[v].cardinality) {
    out.push_back(at.str() + "cardinality mismatch");
    return;
  }
  const std::size_t want = static_cast<std::size_t>(cpd.child_card) * cpd.parent_joint();
  if (cpd.counts.size() != want || cpd.probs.size() != want) {
    out.push_back(at.str() + "table size mismatch");
    return;
  }
  for (double c : cpd.counts) {
    if (!(c >= 0.0)) {
      out.push_back(at.str() + "negative or non-finite pseudo-count");
      break;
    }
  }
  const int j = cpd.parent_joint();
  for (int pj = 0; pj < j; ++pj) {
    double col_prob = 0.0;
    double col_count = 0.0;
    for (int s = 0; s < cpd.child_card; ++s) {
      col_prob += cpd.prob(s, pj);
      col_count += cpd.count(s, pj);
    }
    if (!(std::fabs(col_prob - 1.0) <= 1e-9)) {
      std::ostringstream msg;
      msg << at.str() << "probability column " << pj << " sums to " << col_prob;
      out.push_back(msg.str());
      continue;
    }
    for (int s = 0; s < cpd.child_card; ++s) {
      const double want_p = col_count > 0.0 ? cpd.count(s, pj) / col_count : -1.0;
      if (!(std::fabs(cpd.prob(s, pj) - want_p) <= 1e-9)) {
        std::ostringstream msg;
        msg << at.str() << "column " << pj << " probabilities are not the normalized counts";
        out.push_back(msg.str());
        break;
      }
    }
  }
}

}  // namespace

std::vector<std::string> validate(const BayesNet& net) {
  std::vector<std::string> out;
  const int n = net.dag.size();
  std::set<std::string> names;
  for (int v = 0; v < n; ++v) {
    const Variable& var = net.dag.vars[v];
    if (var.cardinality < 2) out.push_back("variable " + var.name + ": cardinality < 2");
    if (!names.insert(var.name).second) out.push_back("duplicate variable name " + var.name);
  }
  for (const auto& [p, c] : net.dag.edges) {
    if (p == c) out.push_back("self loop on " + net.dag.vars[p].name);
    if (p < 0 || p >= n || c < 0 || c >= n) out.push_back("edge endpoint out of range");
  }
  if (!net.dag.is_acyclic()) out.push_back("graph has a cycle");
  if (static_cast<int>(net.cpds.size()) != n) {
    out.push_back("cpd count differs from vertex count");
    return out;
  }
  for (int v = 0; v < n; ++v) check_cpd(net, v, out);
  return out;
}

BayesNet uniform_net(std::vector<Variable> vars) {
  BayesNet net;
  net.dag.vars = std::move(vars);
  net.cpds.reserve(net.dag.vars.size());
  for (int v = 0; v < net.dag.size(); ++v) net.cpds.push_back(Cpd::uniform(net.dag, v));
  return net;
}

}  // namespace aifl::bn
