#include "aifl/learn/dataset.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace aifl::learn {

std::vector<std::string> validate(const HistoryDataset& data) {
  std::vector<std::string> out;
  for (std::size_t r = 0; r < data.rows.size(); ++r) {
    const auto& row = data.rows[r];
    if (row.size() != data.columns.size()) {
      out.push_back("row " + std::to_string(r) + ": wrong arity");
      continue;
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] < 0 || row[c] >= data.columns[c].cardinality) {
        out.push_back("row " + std::to_string(r) + ", column " + data.columns[c].name +
                      ": state out of range");
      }
    }
  }
  return out;
}

void history_to_csv(std::ostream& os, const HistoryDataset& data) {
  for (std::size_t c = 0; c < data.columns.size(); ++c) {
    if (c > 0) os << ",";
    os << data.columns[c].name;
  }
  os << "\n";
  for (const auto& row : data.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) os << ",";
      os << row[c];
    }
    os << "\n";
  }
}

HistoryDataset history_from_csv(std::istream& is, const std::vector<bn::Variable>& columns) {
  HistoryDataset data;
  data.columns = columns;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("history csv: missing header");
  {
    std::ostringstream want;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c > 0) want << ",";
      want << columns[c].name;
    }
    if (line != want.str()) throw std::runtime_error("history csv: header mismatch");
  }
  long line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<int> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stoi(cell));
    if (row.size() != columns.size()) {
      throw std::runtime_error("history csv: wrong arity at line " + std::to_string(line_no));
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] < 0 || row[c] >= columns[c].cardinality) {
        throw std::runtime_error("history csv: state out of range at line " + std::to_string(line_no));
      }
    }
    data.rows.push_back(std::move(row));
  }
  return data;
}

}  // namespace aifl::learn
