#include "aifl/nn/mlp.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "aifl/util/rng.hpp"

namespace aifl::nn {

MlpArch MlpParams::arch() const {
  return {static_cast<int>(w1.cols()),
          {static_cast<int>(w1.rows()), static_cast<int>(w2.rows())},
          static_cast<int>(w3.rows())};
}

bool MlpParams::same_shape(const MlpParams& other) const {
  return w1.rows() == other.w1.rows() && w1.cols() == other.w1.cols() &&
         w2.rows() == other.w2.rows() && w2.cols() == other.w2.cols() &&
         w3.rows() == other.w3.rows() && w3.cols() == other.w3.cols();
}

namespace {

Eigen::MatrixXd glorot(rngu::Rng& rng, int rows, int cols) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) m(r, c) = rng.uniform(-limit, limit);
  }
  return m;
}

Eigen::MatrixXd softmax_rows(Eigen::MatrixXd logits) {
  for (int r = 0; r < logits.rows(); ++r) {
    Eigen::RowVectorXd row = logits.row(r);
    row.array() -= row.maxCoeff();
    row = row.array().exp();
    logits.row(r) = row / row.sum();
  }
  return logits;
}

}  // namespace

MlpParams init_mlp(const MlpArch& arch, std::uint64_t seed) {
  if (arch.input_dim < 1 || arch.hidden[0] < 1 || arch.hidden[1] < 1 || arch.n_classes < 1) {
    throw std::invalid_argument("init_mlp: invalid architecture");
  }
  rngu::Rng rng(seed);
  MlpParams p;
  p.w1 = glorot(rng, arch.hidden[0], arch.input_dim);
  p.w2 = glorot(rng, arch.hidden[1], arch.hidden[0]);
  p.w3 = glorot(rng, arch.n_classes, arch.hidden[1]);
  p.b1 = Eigen::VectorXd::Zero(arch.hidden[0]);
  p.b2 = Eigen::VectorXd::Zero(arch.hidden[1]);
  p.b3 = Eigen::VectorXd::Zero(arch.n_classes);
  return p;
}

Eigen::MatrixXd forward_batch(const MlpParams& params, const Eigen::MatrixXd& features) {
  if (features.cols() != params.w1.cols()) {
    throw std::invalid_argument("forward: feature dimension mismatch");
  }
  Eigen::MatrixXd h1 = ((features * params.w1.transpose()).rowwise() + params.b1.transpose())
                           .cwiseMax(0.0);
  Eigen::MatrixXd h2 = ((h1 * params.w2.transpose()).rowwise() + params.b2.transpose())
                           .cwiseMax(0.0);
  Eigen::MatrixXd logits = (h2 * params.w3.transpose()).rowwise() + params.b3.transpose();
  return softmax_rows(std::move(logits));
}

Eigen::VectorXd forward(const MlpParams& params, const Eigen::VectorXd& features) {
  return forward_batch(params, features.transpose()).row(0);
}

Eigen::MatrixXd feature_matrix(std::span<const stream::Sample> dataset) {
  if (dataset.empty()) throw std::invalid_argument("empty dataset");
  Eigen::MatrixXd x(dataset.size(), dataset.front().features.size());
  for (std::size_t r = 0; r < dataset.size(); ++r) {
    for (std::size_t c = 0; c < dataset[r].features.size(); ++c) {
      x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = dataset[r].features[c];
    }
  }
  return x;
}

std::vector<int> label_vector(std::span<const stream::Sample> dataset) {
  std::vector<int> y;
  y.reserve(dataset.size());
  for (const auto& s : dataset) y.push_back(s.label);
  return y;
}

double evaluate(const MlpParams& params, std::span<const stream::Sample> dataset) {
  if (dataset.empty()) throw std::invalid_argument("evaluate: empty dataset");
  const Eigen::MatrixXd probs = forward_batch(params, feature_matrix(dataset));
  long correct = 0;
  for (Eigen::Index r = 0; r < probs.rows(); ++r) {
    int best = 0;
    for (int c = 1; c < probs.cols(); ++c) {
      if (probs(r, c) > probs(r, best)) best = c;
    }
    if (best == dataset[static_cast<std::size_t>(r)].label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(probs.rows());
}

MlpGradients backprop_gradients(const MlpParams& params, const Eigen::MatrixXd& features,
                                const std::vector<int>& labels, double* mean_loss) {
  const Eigen::Index n = features.rows();
  if (n == 0) throw std::invalid_argument("backprop_gradients: empty batch");
  if (static_cast<Eigen::Index>(labels.size()) != n) {
    throw std::invalid_argument("backprop_gradients: label count mismatch");
  }

  Eigen::MatrixXd a1 = (features * params.w1.transpose()).rowwise() + params.b1.transpose();
  Eigen::MatrixXd h1 = a1.cwiseMax(0.0);
  Eigen::MatrixXd a2 = (h1 * params.w2.transpose()).rowwise() + params.b2.transpose();
  Eigen::MatrixXd h2 = a2.cwiseMax(0.0);
  Eigen::MatrixXd probs = softmax_rows((h2 * params.w3.transpose()).rowwise() + params.b3.transpose());

  if (mean_loss != nullptr) {
    double loss = 0.0;
    for (Eigen::Index r = 0; r < n; ++r) {
      loss -= std::log(std::max(probs(r, labels[static_cast<std::size_t>(r)]), 1e-12));
    }
    *mean_loss = loss / static_cast<double>(n);
  }

  // d(mean CE)/d(logits) = (probs - onehot) / n
  Eigen::MatrixXd d3 = probs;
  for (Eigen::Index r = 0; r < n; ++r) d3(r, labels[static_cast<std::size_t>(r)]) -= 1.0;
  d3 /= static_cast<double>(n);

  MlpGradients g;
  g.w3 = d3.transpose() * h2;
  g.b3 = d3.colwise().sum();
  Eigen::MatrixXd d2 = (d3 * params.w3).cwiseProduct((a2.array() > 0.0).cast<double>().matrix());
  g.w2 = d2.transpose() * h1;
  g.b2 = d2.colwise().sum();
  Eigen::MatrixXd d1 = (d2 * params.w2).cwiseProduct((a1.array() > 0.0).cast<double>().matrix());
  g.w1 = d1.transpose() * features;
  g.b1 = d1.colwise().sum();
  return g;
}

TrainReport train_epochs(const MlpParams& start, std::span<const stream::Sample> dataset,
                         const agent::ConfigPoint& config, int epochs,
                         const sim::TimingProvider& timing, std::uint64_t shuffle_seed) {
  if (dataset.empty()) throw std::invalid_argument("train_epochs: empty dataset");
  const long n = static_cast<long>(dataset.size());
  const int batch_size = config.batch_size;
  const double lr = config.learning_rate;

  const auto t0 = std::chrono::steady_clock::now();

  TrainReport report;
  report.params = start;
  rngu::Rng rng(shuffle_seed);
  const Eigen::MatrixXd all_features = feature_matrix(dataset);
  const std::vector<int> all_labels = label_vector(dataset);

  double loss_sum = 0.0;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    const std::vector<int> order = rng.permutation(static_cast<int>(n));
    for (long begin = 0; begin < n; begin += batch_size) {
      const long count = std::min<long>(batch_size, n - begin);
      Eigen::MatrixXd x(count, all_features.cols());
      std::vector<int> y(static_cast<std::size_t>(count));
      for (long i = 0; i < count; ++i) {
        const int src = order[static_cast<std::size_t>(begin + i)];
        x.row(i) = all_features.row(src);
        y[static_cast<std::size_t>(i)] = all_labels[static_cast<std::size_t>(src)];
      }
      double batch_loss = 0.0;
      const MlpGradients g = backprop_gradients(report.params, x, y, &batch_loss);
      loss_sum += batch_loss * static_cast<double>(count);
      report.params.w1 -= lr * g.w1;
      report.params.b1 -= lr * g.b1;
      report.params.w2 -= lr * g.w2;
      report.params.b2 -= lr * g.b2;
      report.params.w3 -= lr * g.w3;
      report.params.b3 -= lr * g.b3;
    }
  }
  report.mean_loss = loss_sum / static_cast<double>(n * epochs);

  const double measured =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report.duration_s = timing.duration(n, batch_size, epochs, measured);
  return report;
}

MlpParams fedavg(const std::vector<std::pair<MlpParams, double>>& models) {
  if (models.empty()) throw std::invalid_argument("fedavg: empty model list");
  double total = 0.0;
  for (const auto& [params, n] : models) {
    if (!(n > 0.0)) throw std::invalid_argument("fedavg: nonpositive sample count");
    if (!params.same_shape(models.front().first)) {
      throw std::invalid_argument("fedavg: architecture mismatch");
    }
    total += n;
  }
  MlpParams out = models.front().first;
  out.w1 *= models.front().second;
  out.w2 *= models.front().second;
  out.w3 *= models.front().second;
  out.b1 *= models.front().second;
  out.b2 *= models.front().second;
  out.b3 *= models.front().second;
  for (std::size_t i = 1; i < models.size(); ++i) {
    const double n = models[i].second;
    out.w1 += n * models[i].first.w1;
    out.w2 += n * models[i].first.w2;
    out.w3 += n * models[i].first.w3;
    out.b1 += n * models[i].first.b1;
    out.b2 += n * models[i].first.b2;
    out.b3 += n * models[i].first.b3;
  }
  out.w1 /= total;
  out.w2 /= total;
  out.w3 /= total;
  out.b1 /= total;
  out.b2 /= total;
  out.b3 /= total;
  return out;
}

namespace {

void put_double(std::ostream& os, double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  os.write(buf, end - buf);
}

void write_matrix(std::ostream& os, const char* tag, const Eigen::MatrixXd& m) {
  os << tag << " " << m.rows() << " " << m.cols() << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) os << " ";
      put_double(os, m(r, c));
    }
    os << "\n";
  }
}

Eigen::MatrixXd read_matrix(std::istream& is, const std::string& want_tag) {
  std::string tag;
  Eigen::Index rows = 0, cols = 0;
  if (!(is >> tag >> rows >> cols) || tag != want_tag) {
    throw std::runtime_error("mlp checkpoint: malformed section " + want_tag);
  }
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      std::string cell;
      if (!(is >> cell)) throw std::runtime_error("mlp checkpoint: truncated " + want_tag);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw std::runtime_error("mlp checkpoint: bad number in " + want_tag);
      }
      m(r, c) = v;
    }
  }
  return m;
}

}  // namespace

void save_mlp(std::ostream& os, const MlpParams& params) {
  os << "mlp v1\n";
  write_matrix(os, "w1", params.w1);
  write_matrix(os, "b1", params.b1);
  write_matrix(os, "w2", params.w2);
  write_matrix(os, "b2", params.b2);
  write_matrix(os, "w3", params.w3);
  write_matrix(os, "b3", params.b3);
}

MlpParams load_mlp(std::istream& is) {
  std::string magic, version;
  if (!(is >> magic >> version) || magic != "mlp" || version != "v1") {
    throw std::runtime_error("mlp checkpoint: bad header");
  }
  MlpParams p;
  p.w1 = read_matrix(is, "w1");
  p.b1 = read_matrix(is, "b1");
  p.w2 = read_matrix(is, "w2");
  p.b2 = read_matrix(is, "b2");
  p.w3 = read_matrix(is, "w3");
  p.b3 = read_matrix(is, "b3");
  return p;
}

}  // namespace aifl::nn
