#pragma once

#include <cstdint>
#include <vector>

#include "aifl/stream/sample.hpp"
#include "aifl/util/rng.hpp"

namespace aifl::stream {

struct RbfParams {
  int n_features = 10;
  int n_classes = 5;
  int n_centroids = 50;
  double drift_speed = 0.0;  // centroid displacement per drawn sample
  std::uint64_t model_seed = 0;
  std::uint64_t sample_seed = 0;
};

struct Centroid {
  std::vector<double> center;
  int class_label = 0;
  double std_dev = 0.05;
  double weight = 1.0;
  std::vector<double> drift_direction;  // unit vector
};

/// Drifting radial-basis generator. A state is fully determined by its
/// parameters and the number of samples drawn so far.
struct StreamState {
  RbfParams params;
  std::vector<Centroid> centroids;
  rngu::Rng rng_sample{0};
  long draw_count = 0;
};

StreamState new_stream(const RbfParams& params);

Sample next_sample(StreamState& state);

std::vector<Sample> draw_batch(StreamState& state, int n);

/// Per-round sample volume; breakpoints are (start_round, samples) with
/// strictly increasing start rounds, the first at round 1.
struct QuantitySchedule {
  std::vector<std::pair<int, int>> breakpoints{{1, 5000}};
};

std::vector<std::string> validate(const QuantitySchedule& schedule);

int samples_for_round(const QuantitySchedule& schedule, int round);

/// Debug dump: one row per sample, feature columns then the label.
void write_batch_csv(std::ostream& os, const std::vector<Sample>& batch);

}  // namespace aifl::stream
