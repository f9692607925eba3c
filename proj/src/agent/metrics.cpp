#include "aifl/agent/metrics.hpp"

#include <stdexcept>

namespace aifl::agent {

MetricBins discretize_metrics(double duration_s, double accuracy, const SloSpec& spec) {
  if (duration_s < 0.0) throw std::invalid_argument("discretize_metrics: negative duration");
  const double ratio = duration_s / spec.time_limit_s;
  int duration_bin;
  if (ratio < 0.5) {
    duration_bin = 0;
  } else if (ratio <= 1.0) {
    duration_bin = 1;
  } else if (ratio <= 2.0) {
    duration_bin = 2;
  } else {
    duration_bin = 3;
  }
  const double gap = accuracy - spec.accuracy_target;
  int accuracy_bin;
  if (gap < -0.05) {
    accuracy_bin = 0;
  } else if (gap < 0.0) {
    accuracy_bin = 1;
  } else {
    accuracy_bin = 2;
  }
  return {duration_bin, accuracy_bin};
}

}  // namespace aifl::agent
