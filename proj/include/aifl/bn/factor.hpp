#pragma once

#include <map>
#include <vector>

namespace aifl::bn {

/// Value table over a set of discrete variables. `scope` holds vertex ids in
/// strictly ascending order; `values` is indexed with the first scope
/// variable most significant.
struct Factor {
  std::vector<int> scope;
  std::vector<int> cards;
  std::vector<double> values;

  std::size_t table_size() const;
  bool contains(int var) const;
  int position_of(int var) const;  // -1 if absent

  /// Linear index of an assignment given per-scope-position states.
  std::size_t index_of(const std::vector<int>& states) const;

  static Factor unit();  // empty scope, single value 1
};

Factor factor_product(const Factor& a, const Factor& b);
Factor factor_marginalize(const Factor& f, int var);
Factor factor_reduce(const Factor& f, const std::map<int, int>& evidence);
double factor_sum(const Factor& f);

}  // namespace aifl::bn
