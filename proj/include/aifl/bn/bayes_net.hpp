#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace aifl::bn {

enum class VarRole { configuration, slo, system };

const char* to_string(VarRole role);
std::optional<VarRole> role_from_string(const std::string& s);

struct Variable {
  std::string name;
  int cardinality = 2;
  VarRole role = VarRole::system;
};

/// Directed acyclic graph over an ordered vertex list. Vertices are addressed
/// by index into `vars`; an edge is a (parent, child) pair.
struct Dag {
  std::vector<Variable> vars;
  std::set<std::pair<int, int>> edges;

  int size() const { return static_cast<int>(vars.size()); }
  bool has_edge(int parent, int child) const { return edges.count({parent, child}) > 0; }
  std::vector<int> parents_of(int child) const;
  std::vector<int> children_of(int parent) const;
  bool has_path(int from, int to) const;
  std::optional<std::vector<int>> topological_order() const;
  bool is_acyclic() const { return topological_order().has_value(); }
  int find_var(const std::string& name) const;  // -1 if absent
};

/// Conditional distribution of one vertex given its parents, stored as
/// Dirichlet pseudo-counts with probabilities derived per parent
/// configuration.
///
/// Layout: counts[child_state * parent_joint() + j]. The parent joint index j
/// runs over `parents` (ascending vertex ids) with the earlier parent most
/// significant, so tables are reproducible byte for byte.
struct Cpd {
  int child = 0;
  std::vector<int> parents;       // ascending vertex ids
  std::vector<int> parent_cards;  // aligned with parents
  int child_card = 2;
  std::vector<double> counts;
  std::vector<double> probs;

  int parent_joint() const;
  int parent_joint_index(const std::vector<int>& full_assignment) const;
  double prob(int child_state, int pj) const { return probs[static_cast<std::size_t>(child_state) * parent_joint() + pj]; }
  double count(int child_state, int pj) const { return counts[static_cast<std::size_t>(child_state) * parent_joint() + pj]; }
  void add_count(int child_state, int pj, double delta);
  void renormalize_column(int pj);
  void renormalize_all();

  static Cpd uniform(const Dag& dag, int child);
};

struct BayesNet {
  Dag dag;
  std::vector<Cpd> cpds;  // one per vertex, aligned with dag.vars
};

/// Assignment of observed vertices (id -> state index).
using Evidence = std::map<int, int>;

/// One entry per violated invariant; empty means the net is well formed.
std::vector<std::string> validate(const BayesNet& net);

/// Edgeless net with uniform unit pseudo-counts over the given variables.
BayesNet uniform_net(std::vector<Variable> vars);

}  // namespace aifl::bn
