#include "aifl/sim/scenario.hpp"

#include <stdexcept>

namespace aifl::sim {

std::vector<std::string> validate(const Scenario& scenario) {
  std::vector<std::string> out;
  if (scenario.n_clients < 1) out.push_back("n_clients must be >= 1");
  if (scenario.n_rounds < 1) out.push_back("n_rounds must be >= 1");
  if (!(scenario.slo.time_limit_s > 0.0)) out.push_back("time limit must be positive");
  if (!(scenario.slo.accuracy_target > 0.0 && scenario.slo.accuracy_target <= 1.0)) {
    out.push_back("accuracy target must be in (0, 1]");
  }
  for (std::string& msg : stream::validate(scenario.schedule)) out.push_back(std::move(msg));
  if (scenario.stream_features < 1) out.push_back("stream features must be >= 1");
  if (scenario.stream_classes < 2) out.push_back("stream classes must be >= 2");
  if (scenario.stream_centroids < scenario.stream_classes) {
    out.push_back("stream centroids must be >= classes");
  }
  if (scenario.drift_speed < 0.0) out.push_back("drift speed must be >= 0");
  if (scenario.hidden[0] < 1 || scenario.hidden[1] < 1) out.push_back("hidden widths must be >= 1");
  const auto per_client_size = [&](std::size_t n) {
    return n == 1 || n == static_cast<std::size_t>(scenario.n_clients);
  };
  if (!per_client_size(scenario.devices.size())) {
    out.push_back("devices must list one profile or one per client");
  }
  if (!per_client_size(scenario.policies.size())) {
    out.push_back("policies must list one entry or one per client");
  }
  for (const Policy& p : scenario.policies) {
    if (p.kind == PolicyKind::fixed && !agent::on_grid(p.fixed)) {
      out.push_back("fixed policy configuration is off the grid");
    }
  }
  for (double w : {scenario.time_preference[0], scenario.time_preference[1],
                   scenario.perf_preference[0], scenario.perf_preference[1]}) {
    if (!(w > 0.0)) out.push_back("preference weights must be positive");
  }
  if (scenario.warmup_cap < 1) out.push_back("warmup_cap must be >= 1");
  if (!(scenario.epsilon > 0.0)) out.push_back("epsilon must be positive");
  if (scenario.epochs < 1) out.push_back("epochs must be >= 1");
  return out;
}

namespace {

std::vector<ClientState> build_clients(const Scenario& scenario, std::uint64_t run_seed) {
  const agent::PreferenceVector prefs =
      agent::make_preferences(scenario.time_preference, scenario.perf_preference);
  std::vector<ClientState> clients;
  clients.reserve(static_cast<std::size_t>(scenario.n_clients));
  for (int c = 0; c < scenario.n_clients; ++c) {
    ClientState client;
    client.id = c;

    stream::RbfParams rbf;
    rbf.n_features = scenario.stream_features;
    rbf.n_classes = scenario.stream_classes;
    rbf.n_centroids = scenario.stream_centroids;
    rbf.drift_speed = scenario.drift_speed;
    rbf.model_seed = run_seed * 1000 + static_cast<std::uint64_t>(c);
    rbf.sample_seed = rbf.model_seed + 0x9E3779B9u;
    client.stream = stream::new_stream(rbf);

    client.agent = agent::make_agent(scenario.slo, prefs, scenario.epsilon, rbf.model_seed);

    client.timing.mode = scenario.timing_mode;
    client.timing.profile =
        scenario.devices.size() == 1 ? scenario.devices[0] : scenario.devices[c];
    client.policy = scenario.policies.size() == 1 ? scenario.policies[0] : scenario.policies[c];
    client.policy_rng = rngu::Rng(run_seed * 1000003 + static_cast<std::uint64_t>(c));
    client.train_seed_base = run_seed * 7919 + static_cast<std::uint64_t>(c) * 104729;
    clients.push_back(std::move(client));
  }
  return clients;
}

}  // namespace

ScenarioTrace run_scenario(const Scenario& scenario, std::uint64_t run_seed) {
  {
    const auto problems = validate(scenario);
    if (!problems.empty()) throw std::invalid_argument("run_scenario: " + problems.front());
  }
  std::vector<ClientState> clients = build_clients(scenario, run_seed);

  nn::MlpArch arch{scenario.stream_features, scenario.hidden, scenario.stream_classes};
  nn::MlpParams global = nn::init_mlp(arch, run_seed);

  ScenarioTrace trace;
  RoundContext ctx;
  ctx.slo = scenario.slo;
  ctx.schedule = scenario.schedule;
  ctx.epochs = scenario.epochs;
  ctx.warmup_cap = scenario.warmup_cap;
  ctx.prev_global_accuracy = 0.0;

  for (int round = 1; round <= scenario.n_rounds; ++round) {
    RoundResult result = run_round(clients, global, round, ctx);
    global = std::move(result.model);
    ctx.prev_global_accuracy = result.global_accuracy;
    trace.records.insert(trace.records.end(), result.records.begin(), result.records.end());
    trace.efe_rows.insert(trace.efe_rows.end(), result.efe_rows.begin(), result.efe_rows.end());
    trace.snapshots.insert(trace.snapshots.end(),
                           std::make_move_iterator(result.snapshots.begin()),
                           std::make_move_iterator(result.snapshots.end()));
  }
  for (const ClientState& client : clients) {
    if (client.policy.kind == PolicyKind::aif) {
      trace.histories.emplace_back(client.id, client.agent.history);
    }
  }
  trace.final_model = std::move(global);
  return trace;
}

std::vector<std::vector<RoundRecord>> split_by_client(const ScenarioTrace& trace, int n_clients) {
  std::vector<std::vector<RoundRecord>> out(static_cast<std::size_t>(n_clients));
  for (const RoundRecord& r : trace.records) {
    out[static_cast<std::size_t>(r.client_id)].push_back(r);
  }
  return out;
}

GridSearchResult find_fixed_optimal(const Scenario& scenario, int horizon,
                                    std::span<const std::uint64_t> run_seeds) {
  if (horizon < 1) throw std::invalid_argument("find_fixed_optimal: horizon must be >= 1");
  if (run_seeds.empty()) throw std::invalid_argument("find_fixed_optimal: no seeds");

  Scenario fixed_scenario = scenario;
  fixed_scenario.n_rounds = horizon;

  GridSearchResult result;
  double best_score = -1.0;
  for (int i = 0; i < agent::kConfigCount; ++i) {
    fixed_scenario.policies = {Policy{PolicyKind::fixed, agent::config_grid()[i]}};
    double score_sum = 0.0;
    long score_count = 0;
    for (std::uint64_t seed : run_seeds) {
      const ScenarioTrace trace = run_scenario(fixed_scenario, seed);
      for (const auto& client_records : split_by_client(trace, fixed_scenario.n_clients)) {
        ++score_count;
        try {
          score_sum += 0.5 * (cumulative_fulfillment(client_records, SloKind::time) +
                              cumulative_fulfillment(client_records, SloKind::performance));
        } catch (const std::invalid_argument&) {
          // No post-lifelong round by the horizon: contributes zero.
        }
      }
    }
    result.mean_score[i] = score_sum / static_cast<double>(score_count);
    if (result.mean_score[i] > best_score) {
      best_score = result.mean_score[i];
      result.best = agent::config_grid()[i];
    }
  }
  return result;
}

}  // namespace aifl::sim
