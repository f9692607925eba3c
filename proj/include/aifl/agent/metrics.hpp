#pragma once

#include "aifl/agent/slo.hpp"

namespace aifl::agent {

inline constexpr int kDurationBins = 4;
inline constexpr int kAccuracyBins = 3;
inline constexpr int kMetricJointCount = kDurationBins * kAccuracyBins;

/// Discretized round metrics; the hidden-state space of the agent's model.
struct MetricBins {
  int duration_bin = 0;
  int accuracy_bin = 0;

  friend bool operator==(const MetricBins&, const MetricBins&) = default;
};

/// Joint metric state, duration bin most significant.
inline int metric_joint_index(MetricBins m) { return m.duration_bin * kAccuracyBins + m.accuracy_bin; }

inline MetricBins metric_from_index(int idx) {
  return MetricBins{idx / kAccuracyBins, idx % kAccuracyBins};
}

/// duration/time_limit into [0,0.5), [0.5,1], (1,2], (2,inf);
/// accuracy-target gap into (-inf,-0.05), [-0.05,0), [0,1].
MetricBins discretize_metrics(double duration_s, double accuracy, const SloSpec& spec);

}  // namespace aifl::agent
