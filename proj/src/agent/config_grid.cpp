#include "aifl/agent/config_grid.hpp"

namespace aifl::agent {

const std::vector<ConfigPoint>& config_grid() {
  static const std::vector<ConfigPoint> grid = [] {
    std::vector<ConfigPoint> g;
    g.reserve(kConfigCount);
    for (int bs : kBatchSizes) {
      for (double lr : kLearningRates) g.push_back({bs, lr});
    }
    return g;
  }();
  return grid;
}

int batch_size_index(int batch_size) {
  for (std::size_t i = 0; i < kBatchSizes.size(); ++i) {
    if (kBatchSizes[i] == batch_size) return static_cast<int>(i);
  }
  return -1;
}

int learning_rate_index(double learning_rate) {
  for (std::size_t i = 0; i < kLearningRates.size(); ++i) {
    if (kLearningRates[i] == learning_rate) return static_cast<int>(i);
  }
  return -1;
}

int config_index(const ConfigPoint& c) {
  const int b = batch_size_index(c.batch_size);
  const int l = learning_rate_index(c.learning_rate);
  if (b < 0 || l < 0) return -1;
  return b * static_cast<int>(kLearningRates.size()) + l;
}

bool on_grid(const ConfigPoint& c) { return config_index(c) >= 0; }

}  // namespace aifl::agent
