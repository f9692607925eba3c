#include "aifl/learn/structure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aifl::learn {

namespace {

void require_nonempty(const HistoryDataset& data) {
  if (data.rows.empty()) throw std::invalid_argument("empty dataset");
  if (data.columns.empty()) throw std::invalid_argument("dataset has no columns");
}

long parent_joint_count(const HistoryDataset& data, const std::vector<int>& parents) {
  long j = 1;
  for (int p : parents) j *= data.columns[p].cardinality;
  return j;
}

}  // namespace

double family_bic(const HistoryDataset& data, int child, const std::vector<int>& parents) {
  require_nonempty(data);
  const long n = data.n_rows();
  const int child_card = data.columns[child].cardinality;
  const long joint = parent_joint_count(data, parents);

  std::vector<double> cell(static_cast<std::size_t>(child_card) * joint, 0.0);
  std::vector<double> column(static_cast<std::size_t>(joint), 0.0);
  for (const auto& row : data.rows) {
    long pj = 0;
    for (int p : parents) pj = pj * data.columns[p].cardinality + row[p];
    cell[static_cast<std::size_t>(row[child]) * joint + pj] += 1.0;
    column[pj] += 1.0;
  }
  double ll = 0.0;
  for (int s = 0; s < child_card; ++s) {
    for (long pj = 0; pj < joint; ++pj) {
      const double c = cell[static_cast<std::size_t>(s) * joint + pj];
      if (c > 0.0) ll += c * std::log(c / column[pj]);
    }
  }
  const double k = static_cast<double>(child_card - 1) * static_cast<double>(joint);
  return ll - 0.5 * k * std::log(static_cast<double>(n));
}

double score_bic(const bn::Dag& dag, const HistoryDataset& data) {
  require_nonempty(data);
  double total = 0.0;
  for (int v = 0; v < dag.size(); ++v) total += family_bic(data, v, dag.parents_of(v));
  return total;
}

namespace {

struct Candidate {
  MoveKind kind;
  int parent;
  int child;
  double gain;
};

// Tie order: priority child first, then resulting (parent, child) names, then
// move kind. The resulting edge of a reverse (p, c) is (c, p).
bool better_candidate(const Candidate& a, const Candidate& b, const HistoryDataset& data,
                      const StructureConstraints& constraints) {
  if (a.gain != b.gain) return a.gain > b.gain;
  const auto result_edge = [](const Candidate& m) {
    return m.kind == MoveKind::reverse ? std::pair<int, int>{m.child, m.parent}
                                       : std::pair<int, int>{m.parent, m.child};
  };
  const auto [ap, ac] = result_edge(a);
  const auto [bp, bc] = result_edge(b);
  const bool a_priority = constraints.priority_children.count(ac) > 0;
  const bool b_priority = constraints.priority_children.count(bc) > 0;
  if (a_priority != b_priority) return a_priority;
  const auto& cols = data.columns;
  if (cols[ap].name != cols[bp].name) return cols[ap].name < cols[bp].name;
  if (cols[ac].name != cols[bc].name) return cols[ac].name < cols[bc].name;
  return static_cast<int>(a.kind) < static_cast<int>(b.kind);
}

}  // namespace

bn::Dag hill_climb(const HistoryDataset& data, const StructureConstraints& constraints,
                   std::uint64_t seed, std::vector<HillClimbMove>* move_log) {
  (void)seed;
  require_nonempty(data);
  const int n = data.n_cols();

  bn::Dag dag;
  dag.vars = data.columns;

  std::vector<double> family(static_cast<std::size_t>(n), 0.0);
  for (int v = 0; v < n; ++v) family[v] = family_bic(data, v, {});
  double score = 0.0;
  for (double f : family) score += f;

  const auto with_parent = [](std::vector<int> parents, int p) {
    parents.push_back(p);
    std::sort(parents.begin(), parents.end());
    return parents;
  };
  const auto without_parent = [](std::vector<int> parents, int p) {
    parents.erase(std::remove(parents.begin(), parents.end(), p), parents.end());
    return parents;
  };

  // Accept only clearly positive gains so float noise cannot loop the search.
  constexpr double kMinGain = 1e-9;

  while (true) {
    bool have_best = false;
    Candidate best{};
    const auto consider = [&](Candidate c) {
      if (c.gain <= kMinGain) return;
      if (!have_best || better_candidate(c, best, data, constraints)) {
        best = c;
        have_best = true;
      }
    };

    for (int p = 0; p < n; ++p) {
      for (int c = 0; c < n; ++c) {
        if (p == c) continue;
        if (!dag.has_edge(p, c)) {
          if (constraints.forbidden_edges.count({p, c})) continue;
          const auto parents = dag.parents_of(c);
          if (static_cast<int>(parents.size()) >= constraints.max_parents) continue;
          if (dag.has_path(c, p)) continue;  // would close a cycle
          const double gain = family_bic(data, c, with_parent(parents, p)) - family[c];
          consider({MoveKind::add, p, c, gain});
        } else {
          {
            const double gain =
                family_bic(data, c, without_parent(dag.parents_of(c), p)) - family[c];
            consider({MoveKind::remove, p, c, gain});
          }
          if (!constraints.forbidden_edges.count({c, p})) {
            const auto new_parents_p = with_parent(dag.parents_of(p), c);
            if (static_cast<int>(new_parents_p.size()) <= constraints.max_parents) {
              dag.edges.erase({p, c});
              const bool cycles = dag.has_path(p, c);
              dag.edges.insert({p, c});
              if (!cycles) {
                const double gain =
                    (family_bic(data, c, without_parent(dag.parents_of(c), p)) - family[c]) +
                    (family_bic(data, p, new_parents_p) - family[p]);
                consider({MoveKind::reverse, p, c, gain});
              }
            }
          }
        }
      }
    }

    if (!have_best) break;

    const double before = score;
    switch (best.kind) {
      case MoveKind::add:
        dag.edges.insert({best.parent, best.child});
        break;
      case MoveKind::remove:
        dag.edges.erase({best.parent, best.child});
        break;
      case MoveKind::reverse:
        dag.edges.erase({best.parent, best.child});
        dag.edges.insert({best.child, best.parent});
        break;
    }
    family[best.child] = family_bic(data, best.child, dag.parents_of(best.child));
    if (best.kind == MoveKind::reverse) {
      family[best.parent] = family_bic(data, best.parent, dag.parents_of(best.parent));
    }
    score = 0.0;
    for (double f : family) score += f;
    if (move_log != nullptr) {
      move_log->push_back({best.kind, best.parent, best.child, before, score});
    }
  }
  return dag;
}

bn::BayesNet fit_bayesian(const bn::Dag& dag, const HistoryDataset& data, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("fit_bayesian: alpha must be positive");
  bn::BayesNet net;
  net.dag = dag;
  net.cpds.reserve(dag.size());
  for (int v = 0; v < dag.size(); ++v) {
    bn::Cpd cpd;
    cpd.child = v;
    cpd.parents = dag.parents_of(v);
    for (int p : cpd.parents) cpd.parent_cards.push_back(dag.vars[p].cardinality);
    cpd.child_card = dag.vars[v].cardinality;
    cpd.counts.assign(static_cast<std::size_t>(cpd.child_card) * cpd.parent_joint(), alpha);
    net.cpds.push_back(std::move(cpd));
  }
  for (const auto& row : data.rows) {
    for (bn::Cpd& cpd : net.cpds) {
      cpd.add_count(row[cpd.child], cpd.parent_joint_index(row), 1.0);
    }
  }
  for (bn::Cpd& cpd : net.cpds) cpd.renormalize_all();
  return net;
}

void update_parameters(bn::BayesNet& net, const std::vector<int>& obs) {
  if (static_cast<int>(obs.size()) != net.dag.size()) {
    throw std::invalid_argument("update_parameters: observation arity mismatch");
  }
  for (int v = 0; v < net.dag.size(); ++v) {
    if (obs[v] < 0 || obs[v] >= net.dag.vars[v].cardinality) {
      throw std::invalid_argument("update_parameters: state out of range");
    }
  }
  for (bn::Cpd& cpd : net.cpds) {
    const int pj = cpd.parent_joint_index(obs);
    cpd.add_count(obs[cpd.child], pj, 1.0);
    cpd.renormalize_column(pj);
  }
}

bn::BayesNet structural_relearn(const HistoryDataset& data, const StructureConstraints& constraints,
                                double alpha, std::uint64_t seed) {
  return fit_bayesian(hill_climb(data, constraints, seed), data, alpha);
}

}  // namespace aifl::learn
