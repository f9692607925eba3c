#pragma once

#include <array>
#include <vector>

namespace aifl::agent {

inline constexpr std::array<int, 5> kBatchSizes{8, 32, 64, 256, 512};
inline constexpr std::array<double, 4> kLearningRates{0.0005, 0.001, 0.005, 0.01};
inline constexpr int kConfigCount = 20;

/// One point of the closed tuning grid (5 batch sizes x 4 learning rates).
struct ConfigPoint {
  int batch_size = kBatchSizes[0];
  double learning_rate = kLearningRates[0];

  friend bool operator==(const ConfigPoint&, const ConfigPoint&) = default;
};

/// All 20 grid points, ascending batch size then learning rate.
const std::vector<ConfigPoint>& config_grid();

int batch_size_index(int batch_size);        // -1 if off grid
int learning_rate_index(double learning_rate);  // -1 if off grid
int config_index(const ConfigPoint& c);      // -1 if off grid
bool on_grid(const ConfigPoint& c);

}  // namespace aifl::agent
