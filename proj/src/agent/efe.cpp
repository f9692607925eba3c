#include "aifl/agent/efe.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aifl/agent/layout.hpp"
#include "aifl/bn/inference.hpp"

namespace aifl::agent {

namespace {

void floor_and_renormalize(std::vector<double>& dist, double epsilon) {
  double total = 0.0;
  for (double& v : dist) {
    if (v < epsilon) v = epsilon;
    total += v;
  }
  for (double& v : dist) v /= total;
}

std::vector<double> marginal_or_uniform(const bn::BayesNet& net, const std::vector<int>& targets,
                                        const bn::Evidence& evidence, std::size_t size,
                                        double epsilon) {
  if (epsilon > 0.0) {
    try {
      return query_marginal(net, targets, evidence).values;
    } catch (const bn::ZeroEvidenceProbability&) {
      // Flooring a zero-mass marginal yields the uniform distribution.
      return std::vector<double>(size, 1.0 / static_cast<double>(size));
    }
  }
  return query_marginal(net, targets, evidence).values;
}

}  // namespace

PredictiveDensities predictive_densities(const bn::BayesNet& net, const ConfigPoint& config,
                                         double epsilon) {
  const int bs = batch_size_index(config.batch_size);
  const int lr = learning_rate_index(config.learning_rate);
  if (bs < 0 || lr < 0) throw std::invalid_argument("predictive_densities: config off grid");

  bn::Evidence config_evidence{{kVarBatchSize, bs}, {kVarLearningRate, lr}};
  const std::vector<int> metric_vars{kVarDurationBin, kVarAccuracyBin};
  const std::vector<int> slo_vars{kVarTimeOk, kVarPerfOk};

  PredictiveDensities out;
  out.q = marginal_or_uniform(net, metric_vars, config_evidence, kMetricJointCount, epsilon);
  floor_and_renormalize(out.q, epsilon);

  out.a_cols.resize(kMetricJointCount);
  for (int s = 0; s < kMetricJointCount; ++s) {
    const MetricBins bins = metric_from_index(s);
    bn::Evidence evidence = config_evidence;
    evidence[kVarDurationBin] = bins.duration_bin;
    evidence[kVarAccuracyBin] = bins.accuracy_bin;
    out.a_cols[s] = marginal_or_uniform(net, slo_vars, evidence, kOutcomeCount, epsilon);
    floor_and_renormalize(out.a_cols[s], epsilon);
  }

  double spread = 0.0;
  for (int o = 0; o < kOutcomeCount; ++o) {
    double lo = out.a_cols[0][o], hi = out.a_cols[0][o];
    for (int s = 1; s < kMetricJointCount; ++s) {
      lo = std::min(lo, out.a_cols[s][o]);
      hi = std::max(hi, out.a_cols[s][o]);
    }
    spread = std::max(spread, hi - lo);
  }
  out.outcome_informative = spread > 1e-9;
  return out;
}

InfoGainResult information_gain(const std::vector<double>& q,
                                const std::vector<std::vector<double>>& a_cols) {
  const std::size_t n_states = q.size();
  if (a_cols.size() != n_states || n_states == 0) {
    throw std::invalid_argument("information_gain: likelihood/state shape mismatch");
  }
  const std::size_t n_outcomes = a_cols[0].size();

  InfoGainResult out;
  out.p_o.assign(n_outcomes, 0.0);
  for (std::size_t s = 0; s < n_states; ++s) {
    if (a_cols[s].size() != n_outcomes) {
      throw std::invalid_argument("information_gain: ragged likelihood");
    }
    for (std::size_t o = 0; o < n_outcomes; ++o) out.p_o[o] += a_cols[s][o] * q[s];
  }
  out.posterior_by_o.assign(n_outcomes, std::vector<double>(n_states, 0.0));
  for (std::size_t o = 0; o < n_outcomes; ++o) {
    for (std::size_t s = 0; s < n_states; ++s) {
      out.posterior_by_o[o][s] = out.p_o[o] > 0.0 ? a_cols[s][o] * q[s] / out.p_o[o] : q[s];
    }
  }
  for (std::size_t o = 0; o < n_outcomes; ++o) {
    out.expected_ig += out.p_o[o] * kl_divergence(out.posterior_by_o[o], q);
  }
  out.expected_ig = std::max(out.expected_ig, 0.0);
  return out;
}

double pragmatic_value(std::span<const double> p_o, std::span<const double> log_prefs) {
  if (p_o.size() != log_prefs.size()) {
    throw std::invalid_argument("pragmatic_value: shape mismatch");
  }
  double v = 0.0;
  for (std::size_t o = 0; o < p_o.size(); ++o) v += p_o[o] * log_prefs[o];
  return v;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("kl_divergence: shape mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) d += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(d, 0.0);
}

namespace {

int argmax_outcome(const std::vector<double>& p_o) {
  int best = 0;
  for (int o = 1; o < static_cast<int>(p_o.size()); ++o) {
    if (p_o[o] > p_o[best]) best = o;
  }
  return best;
}

double surprise_at(const PredictiveDensities& pd, const InfoGainResult& ig, int outcome) {
  if (pd.outcome_informative) {
    return kl_divergence(ig.posterior_by_o[outcome], pd.q);
  }
  return -std::log(ig.p_o[outcome]);
}

}  // namespace

EfeBreakdown compute_efe(const bn::BayesNet& net, const ConfigPoint& config,
                         const PreferenceVector& prefs, double epsilon) {
  const PredictiveDensities pd = predictive_densities(net, config, epsilon);
  const InfoGainResult ig = information_gain(pd.q, pd.a_cols);

  EfeBreakdown out;
  out.config = config;
  out.pragmatic = pragmatic_value(ig.p_o, prefs.log_prefs);
  out.info_gain = ig.expected_ig;
  out.efe = -out.pragmatic - out.info_gain;
  out.expected_ig_at_map = surprise_at(pd, ig, argmax_outcome(ig.p_o));
  return out;
}

double observed_surprise_for(const bn::BayesNet& net, const ConfigPoint& config,
                             SloOutcome outcome, double epsilon) {
  const PredictiveDensities pd = predictive_densities(net, config, epsilon);
  const InfoGainResult ig = information_gain(pd.q, pd.a_cols);
  return surprise_at(pd, ig, outcome_index(outcome));
}

}  // namespace aifl::agent
