#include "aifl/stream/rbf.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace aifl::stream {

namespace {

std::vector<double> unit_vector(rngu::Rng& rng, int dim) {
  std::vector<double> v(static_cast<std::size_t>(dim));
  while (true) {
    double norm_sq = 0.0;
    for (double& x : v) {
      x = rng.gaussian();
      norm_sq += x * x;
    }
    if (norm_sq > 1e-24) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (double& x : v) x *= inv;
      return v;
    }
  }
}

}  // namespace

StreamState new_stream(const RbfParams& params) {
  if (params.n_features < 1 || params.n_classes < 2 || params.n_centroids < params.n_classes ||
      params.drift_speed < 0.0) {
    throw std::invalid_argument("new_stream: invalid parameters");
  }
  StreamState state{params, {}, rngu::Rng(params.sample_seed), 0};
  rngu::Rng model_rng(params.model_seed);
  state.centroids.reserve(static_cast<std::size_t>(params.n_centroids));
  for (int i = 0; i < params.n_centroids; ++i) {
    Centroid c;
    c.center.resize(static_cast<std::size_t>(params.n_features));
    for (double& x : c.center) x = model_rng.uniform01();
    // Round-robin labels first so every class owns at least one centroid.
    c.class_label = i < params.n_classes ? i : model_rng.below_int(params.n_classes);
    c.std_dev = model_rng.uniform(0.01, 0.1);
    c.weight = 1.0 - model_rng.uniform01();  // (0, 1]
    c.drift_direction = unit_vector(model_rng, params.n_features);
    state.centroids.push_back(std::move(c));
  }
  return state;
}

Sample next_sample(StreamState& state) {
  double total_weight = 0.0;
  for (const Centroid& c : state.centroids) total_weight += c.weight;
  const double pick = state.rng_sample.uniform01() * total_weight;
  std::size_t chosen = state.centroids.size() - 1;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < state.centroids.size(); ++i) {
    cumulative += state.centroids[i].weight;
    if (pick < cumulative) {
      chosen = i;
      break;
    }
  }
  const Centroid& c = state.centroids[chosen];

  Sample sample;
  sample.label = c.class_label;
  const std::vector<double> direction = unit_vector(state.rng_sample, state.params.n_features);
  const double radius = std::fabs(state.rng_sample.gaussian()) * c.std_dev;
  sample.features.resize(c.center.size());
  for (std::size_t d = 0; d < c.center.size(); ++d) {
    sample.features[d] = c.center[d] + radius * direction[d];
  }

  if (state.params.drift_speed > 0.0) {
    for (Centroid& moving : state.centroids) {
      for (std::size_t d = 0; d < moving.center.size(); ++d) {
        moving.center[d] += state.params.drift_speed * moving.drift_direction[d];
      }
    }
  }
  ++state.draw_count;
  return sample;
}

std::vector<Sample> draw_batch(StreamState& state, int n) {
  if (n < 1) throw std::invalid_argument("draw_batch: n must be >= 1");
  std::vector<Sample> batch;
  batch.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) batch.push_back(next_sample(state));
  return batch;
}

std::vector<std::string> validate(const QuantitySchedule& schedule) {
  std::vector<std::string> out;
  if (schedule.breakpoints.empty()) {
    out.push_back("schedule has no breakpoints");
    return out;
  }
  if (schedule.breakpoints.front().first != 1) out.push_back("first breakpoint must start at round 1");
  for (std::size_t i = 0; i < schedule.breakpoints.size(); ++i) {
    if (schedule.breakpoints[i].second < 1) out.push_back("non-positive sample count");
    if (i > 0 && schedule.breakpoints[i].first <= schedule.breakpoints[i - 1].first) {
      out.push_back("start rounds not strictly increasing");
    }
  }
  return out;
}

int samples_for_round(const QuantitySchedule& schedule, int round) {
  if (round < 1) throw std::invalid_argument("samples_for_round: round must be >= 1");
  int samples = schedule.breakpoints.front().second;
  for (const auto& [start, value] : schedule.breakpoints) {
    if (start <= round) samples = value;
  }
  return samples;
}

void write_batch_csv(std::ostream& os, const std::vector<Sample>& batch) {
  if (batch.empty()) return;
  for (std::size_t d = 0; d < batch.front().features.size(); ++d) {
    os << "f" << d << ",";
  }
  os << "label\n";
  char buf[64];
  for (const Sample& s : batch) {
    for (double x : s.features) {
      auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
      (void)ec;
      os.write(buf, end - buf);
      os << ",";
    }
    os << s.label << "\n";
  }
}

}  // namespace aifl::stream
