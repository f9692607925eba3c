#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include "aifl/stream/rbf.hpp"

using namespace aifl;

namespace {

double norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("new_stream is bit-reproducible and validates parameters") {
  stream::RbfParams params;
  params.model_seed = 42;
  params.sample_seed = 43;
  const auto a = stream::new_stream(params);
  const auto b = stream::new_stream(params);
  REQUIRE(a.centroids.size() == b.centroids.size());
  for (std::size_t i = 0; i < a.centroids.size(); ++i) {
    CHECK(a.centroids[i].center == b.centroids[i].center);
    CHECK(a.centroids[i].class_label == b.centroids[i].class_label);
    CHECK(a.centroids[i].std_dev == b.centroids[i].std_dev);
    CHECK(a.centroids[i].weight == b.centroids[i].weight);
    CHECK(a.centroids[i].drift_direction == b.centroids[i].drift_direction);
  }
  stream::RbfParams bad;
  bad.n_centroids = 1;  // fewer than classes
  CHECK_THROWS_AS(stream::new_stream(bad), std::invalid_argument);
}

TEST_CASE("round-robin labels cover every class") {
  stream::RbfParams params;
  params.n_classes = 5;
  params.n_centroids = 5;
  params.model_seed = 7;
  const auto state = stream::new_stream(params);
  std::set<int> labels;
  for (const auto& c : state.centroids) labels.insert(c.class_label);
  CHECK(labels.size() == 5);
}

TEST_CASE("centroid invariants hold at construction") {
  stream::RbfParams params;
  params.model_seed = 99;
  params.drift_speed = 0.01;
  const auto state = stream::new_stream(params);
  for (const auto& c : state.centroids) {
    CHECK(c.std_dev >= 0.01);
    CHECK(c.std_dev <= 0.1);
    CHECK(c.weight > 0.0);
    CHECK(c.weight <= 1.0);
    double norm = 0.0;
    for (double d : c.drift_direction) norm += d * d;
    CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-9));
    for (double x : c.center) {
      CHECK(x >= 0.0);
      CHECK(x <= 1.0);
    }
  }
}

TEST_CASE("zero drift leaves centers untouched") {
  stream::RbfParams params;
  params.model_seed = 3;
  params.sample_seed = 4;
  params.drift_speed = 0.0;
  auto state = stream::new_stream(params);
  const auto before = state.centroids;
  stream::draw_batch(state, 2000);
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK(state.centroids[i].center == before[i].center);
  }
}

TEST_CASE("per-draw displacement equals the drift speed") {
  stream::RbfParams params;
  params.model_seed = 5;
  params.sample_seed = 6;
  params.drift_speed = 0.001;
  auto state = stream::new_stream(params);
  for (int step = 0; step < 5; ++step) {
    const auto before = state.centroids;
    stream::next_sample(state);
    for (std::size_t i = 0; i < before.size(); ++i) {
      CHECK(std::fabs(norm_diff(state.centroids[i].center, before[i].center) - 0.001) < 1e-12);
    }
  }
}

TEST_CASE("sample stream is deterministic and batch equals singletons") {
  stream::RbfParams params;
  params.model_seed = 11;
  params.sample_seed = 12;
  auto a = stream::new_stream(params);
  auto b = stream::new_stream(params);
  const auto batch = stream::draw_batch(a, 25);
  for (int i = 0; i < 25; ++i) {
    const auto single = stream::next_sample(b);
    CHECK(single.features == batch[static_cast<std::size_t>(i)].features);
    CHECK(single.label == batch[static_cast<std::size_t>(i)].label);
  }
  CHECK(a.draw_count == 25);
  CHECK_THROWS_AS(stream::draw_batch(a, 0), std::invalid_argument);
}

TEST_CASE("labels stay in range and follow centroid proportions at equal weights") {
  stream::RbfParams params;
  params.n_classes = 5;
  params.n_centroids = 10;
  params.model_seed = 21;
  params.sample_seed = 22;
  auto state = stream::new_stream(params);
  for (auto& c : state.centroids) c.weight = 1.0;

  std::array<double, 5> expected{};
  for (const auto& c : state.centroids) expected[static_cast<std::size_t>(c.class_label)] += 0.1;

  std::array<long, 5> histogram{};
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const auto s = stream::next_sample(state);
    REQUIRE(s.label >= 0);
    REQUIRE(s.label < 5);
    ++histogram[static_cast<std::size_t>(s.label)];
  }
  for (int k = 0; k < 5; ++k) {
    CHECK(std::fabs(static_cast<double>(histogram[k]) / n - expected[k]) < 0.02);
  }
}

TEST_CASE("quantity schedule lookup") {
  stream::QuantitySchedule schedule;
  schedule.breakpoints = {{1, 5000}, {50, 10000}, {100, 15000}};
  CHECK(stream::validate(schedule).empty());
  CHECK(stream::samples_for_round(schedule, 1) == 5000);
  CHECK(stream::samples_for_round(schedule, 49) == 5000);
  CHECK(stream::samples_for_round(schedule, 50) == 10000);
  CHECK(stream::samples_for_round(schedule, 120) == 15000);
  CHECK_THROWS_AS(stream::samples_for_round(schedule, 0), std::invalid_argument);

  stream::QuantitySchedule bad;
  bad.breakpoints = {{2, 100}};
  CHECK(!stream::validate(bad).empty());
  bad.breakpoints = {{1, 100}, {1, 200}};
  CHECK(!stream::validate(bad).empty());
}

TEST_CASE("batch csv dump has one row per sample") {
  stream::RbfParams params;
  params.n_features = 3;
  params.model_seed = 1;
  params.sample_seed = 2;
  auto state = stream::new_stream(params);
  const auto batch = stream::draw_batch(state, 4);
  std::ostringstream os;
  stream::write_batch_csv(os, batch);
  const std::string text = os.str();
  CHECK(text.rfind("f0,f1,f2,label\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}
