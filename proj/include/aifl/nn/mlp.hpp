#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "aifl/agent/config_grid.hpp"
#include "aifl/sim/timing.hpp"
#include "aifl/stream/sample.hpp"

namespace aifl::nn {

struct MlpArch {
  int input_dim = 10;
  std::array<int, 2> hidden{64, 32};
  int n_classes = 5;
};

/// Two ReLU hidden layers plus a softmax output layer. Weight matrices are
/// (out x in); biases are column vectors.
struct MlpParams {
  Eigen::MatrixXd w1, w2, w3;
  Eigen::VectorXd b1, b2, b3;

  MlpArch arch() const;
  bool same_shape(const MlpParams& other) const;
};

/// Glorot-uniform weights, zero biases. Matrices fill row major, w1 first.
MlpParams init_mlp(const MlpArch& arch, std::uint64_t seed);

/// Class probabilities for one feature vector.
Eigen::VectorXd forward(const MlpParams& params, const Eigen::VectorXd& features);

/// Row-per-sample batch of class probabilities.
Eigen::MatrixXd forward_batch(const MlpParams& params, const Eigen::MatrixXd& features);

/// Fraction of samples whose argmax class (lowest index on ties) matches the
/// label.
double evaluate(const MlpParams& params, std::span<const stream::Sample> dataset);

struct MlpGradients {
  Eigen::MatrixXd w1, w2, w3;
  Eigen::VectorXd b1, b2, b3;
};

/// Exact gradients of the mean cross-entropy over the batch; loss is floored
/// at 1e-12 per-sample probability so it stays finite.
MlpGradients backprop_gradients(const MlpParams& params, const Eigen::MatrixXd& features,
                                const std::vector<int>& labels, double* mean_loss = nullptr);

Eigen::MatrixXd feature_matrix(std::span<const stream::Sample> dataset);
std::vector<int> label_vector(std::span<const stream::Sample> dataset);

struct TrainReport {
  MlpParams params;
  double duration_s = 0.0;
  double mean_loss = 0.0;
};

/// Mini-batch SGD with the batch size and learning rate taken from `config`.
/// Each epoch visits a fresh seeded permutation; the final short batch is
/// kept. `mean_loss` averages the pre-step batch losses over all samples
/// processed in this call.
TrainReport train_epochs(const MlpParams& start, std::span<const stream::Sample> dataset,
                         const agent::ConfigPoint& config, int epochs,
                         const sim::TimingProvider& timing, std::uint64_t shuffle_seed);

/// Sample-count weighted parameter mean.
MlpParams fedavg(const std::vector<std::pair<MlpParams, double>>& models);

void save_mlp(std::ostream& os, const MlpParams& params);
MlpParams load_mlp(std::istream& is);

}  // namespace aifl::nn
