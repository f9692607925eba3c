#pragma once

#include <span>
#include <vector>

#include "aifl/agent/config_grid.hpp"
#include "aifl/agent/metrics.hpp"
#include "aifl/agent/slo.hpp"
#include "aifl/bn/bayes_net.hpp"

namespace aifl::agent {

/// Predictive density over joint metric states and the outcome likelihood
/// under a configuration. `q` has kMetricJointCount entries;
/// `a_cols[s][o]` is P(outcome o | metric state s, config). Every
/// distribution is floored at epsilon and renormalized.
///
/// `outcome_informative` is false when all likelihood columns coincide
/// (within 1e-9), i.e. outcomes carry no information about metric states
/// under this configuration.
struct PredictiveDensities {
  std::vector<double> q;
  std::vector<std::vector<double>> a_cols;
  bool outcome_informative = false;
};

PredictiveDensities predictive_densities(const bn::BayesNet& net, const ConfigPoint& config,
                                         double epsilon);

/// Expected information gain (mutual information between hidden states and
/// outcomes), the outcome predictive p_o, and the per-outcome state
/// posteriors. Shapes are generic: S states, O outcomes.
struct InfoGainResult {
  double expected_ig = 0.0;
  std::vector<double> p_o;
  std::vector<std::vector<double>> posterior_by_o;
};

InfoGainResult information_gain(const std::vector<double>& q,
                                const std::vector<std::vector<double>>& a_cols);

/// Expected log-preference of predicted outcomes; always <= 0.
double pragmatic_value(std::span<const double> p_o, std::span<const double> log_prefs);

/// KL divergence sum_i p_i ln(p_i / q_i) with 0 ln 0 = 0.
double kl_divergence(std::span<const double> p, std::span<const double> q);

struct EfeBreakdown {
  ConfigPoint config;
  double pragmatic = 0.0;
  double info_gain = 0.0;
  double efe = 0.0;
  double expected_ig_at_map = 0.0;
};

/// EFE = -pragmatic - info_gain. `expected_ig_at_map` is the surprise
/// threshold read at the MAP-predicted outcome; when the likelihood is
/// outcome-uninformative it falls back to the predictive surprisal of that
/// outcome, so the threshold stays meaningful while the model has not yet
/// linked outcomes to metric states.
EfeBreakdown compute_efe(const bn::BayesNet& net, const ConfigPoint& config,
                         const PreferenceVector& prefs, double epsilon);

/// Realized Bayesian surprise for an observed outcome under `config`; the
/// same fallback as compute_efe applies in the outcome-uninformative regime.
double observed_surprise_for(const bn::BayesNet& net, const ConfigPoint& config,
                             SloOutcome outcome, double epsilon);

}  // namespace aifl::agent
