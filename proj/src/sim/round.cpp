#include "aifl/sim/round.hpp"

#include <stdexcept>

#include "aifl/bn/serialize.hpp"

namespace aifl::sim {

const char* to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::aif: return "aif";
    case PolicyKind::random: return "random";
    case PolicyKind::fixed: return "fixed";
  }
  return "unknown";
}

std::optional<PolicyKind> policy_from_string(const std::string& s) {
  if (s == "aif") return PolicyKind::aif;
  if (s == "random") return PolicyKind::random;
  if (s == "fixed") return PolicyKind::fixed;
  return std::nullopt;
}

agent::ConfigPoint random_config(rngu::Rng& rng) {
  return agent::config_grid()[rng.below_int(agent::kConfigCount)];
}

agent::SloOutcome check_slo(double duration_s, double val_accuracy, const agent::SloSpec& spec) {
  return {duration_s <= spec.time_limit_s, val_accuracy >= spec.accuracy_target};
}

RoundResult run_round(std::vector<ClientState>& clients, const nn::MlpParams& global_model,
                      int round, const RoundContext& ctx) {
  if (round < 1) throw std::invalid_argument("run_round: round must be >= 1");

  RoundResult result;
  std::vector<std::pair<nn::MlpParams, double>> contributions;
  contributions.reserve(clients.size());

  const int n_samples = stream::samples_for_round(ctx.schedule, round);
  for (ClientState& client : clients) {
    agent::maybe_set_lifelong(client.agent, ctx.prev_global_accuracy, round, ctx.warmup_cap);

    if (round == 1) {
      client.train_set = stream::draw_batch(client.stream, n_samples);
    } else {
      client.train_set = std::move(client.validation_set);
    }
    client.validation_set = stream::draw_batch(client.stream, n_samples);

    agent::ConfigPoint config;
    std::optional<agent::ConfigChoice> choice;
    switch (client.policy.kind) {
      case PolicyKind::aif:
        choice = agent::infer_best_config(client.agent);
        config = choice->config;
        break;
      case PolicyKind::random:
        config = random_config(client.policy_rng);
        break;
      case PolicyKind::fixed:
        config = client.policy.fixed;
        break;
    }

    const std::uint64_t shuffle_seed =
        client.train_seed_base + static_cast<std::uint64_t>(round) * 0x9E3779B9u;
    const nn::TrainReport report = nn::train_epochs(global_model, client.train_set, config,
                                                    ctx.epochs, client.timing, shuffle_seed);
    const double val_accuracy = nn::evaluate(report.params, client.validation_set);
    const agent::SloOutcome outcome = check_slo(report.duration_s, val_accuracy, ctx.slo);

    RoundRecord record;
    record.round = round;
    record.client_id = client.id;
    record.policy = client.policy.kind;
    record.config = config;
    record.duration_s = report.duration_s;
    record.val_accuracy = val_accuracy;
    record.time_ok = outcome.time_ok;
    record.perf_ok = outcome.perf_ok;
    record.lifelong = client.agent.lifelong;

    if (client.agent.lifelong && client.policy.kind == PolicyKind::aif) {
      const agent::ObservationRecord obs{
          config, agent::discretize_metrics(report.duration_s, val_accuracy, ctx.slo), outcome,
          round};
      const agent::BeliefUpdate update =
          agent::update_beliefs(client.agent, obs, choice->expected_ig_at_map);
      record.expected_ig = choice->expected_ig_at_map;
      record.observed_ig = update.observed_ig;
      record.relearned = update.relearned;
      if (update.relearned) {
        result.snapshots.push_back({round, client.id, bn::to_text(client.agent.net)});
      }
    }

    if (choice.has_value()) {
      for (const agent::EfeBreakdown& b : choice->breakdowns) {
        result.efe_rows.push_back({round, client.id, b});
      }
    }

    result.records.push_back(std::move(record));
    contributions.emplace_back(report.params, static_cast<double>(client.train_set.size()));
  }

  result.model = nn::fedavg(contributions);
  double accuracy_sum = 0.0;
  for (const ClientState& client : clients) {
    accuracy_sum += nn::evaluate(result.model, client.validation_set);
  }
  result.global_accuracy = accuracy_sum / static_cast<double>(clients.size());
  return result;
}

double cumulative_fulfillment(std::span<const RoundRecord> client_records, SloKind which) {
  long counted = 0;
  long fulfilled = 0;
  for (const RoundRecord& r : client_records) {
    if (!r.lifelong) continue;
    ++counted;
    const bool ok = which == SloKind::time ? r.time_ok : r.perf_ok;
    if (ok) ++fulfilled;
  }
  if (counted == 0) throw std::invalid_argument("cumulative_fulfillment: no post-lifelong rounds");
  return static_cast<double>(fulfilled) / static_cast<double>(counted);
}

}  // namespace aifl::sim
