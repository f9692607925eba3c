#pragma once

#include <vector>

namespace aifl::stream {

struct Sample {
  std::vector<double> features;
  int label = 0;
};

}  // namespace aifl::stream
