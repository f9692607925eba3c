#pragma once

#include <iosfwd>
#include <vector>

#include "aifl/bn/bayes_net.hpp"

namespace aifl::learn {

/// Complete discrete observations, one row per sample, one column per
/// variable. Row entries are state indices aligned with `columns`.
struct HistoryDataset {
  std::vector<bn::Variable> columns;
  std::vector<std::vector<int>> rows;

  int n_cols() const { return static_cast<int>(columns.size()); }
  long n_rows() const { return static_cast<long>(rows.size()); }
};

/// One entry per malformed row/cell; empty means the dataset is well formed.
std::vector<std::string> validate(const HistoryDataset& data);

void history_to_csv(std::ostream& os, const HistoryDataset& data);

/// Parses rows for the given column set; the header must match the column
/// names exactly. Throws std::runtime_error on malformed input.
HistoryDataset history_from_csv(std::istream& is, const std::vector<bn::Variable>& columns);

}  // namespace aifl::learn
