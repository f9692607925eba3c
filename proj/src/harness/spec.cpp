#include "aifl/harness/spec.hpp"

#include <fstream>
#include <json.hpp>
#include <set>

namespace aifl::harness {

using nlohmann::json;

std::vector<std::uint64_t> run_seeds(const ExperimentSpec& spec) {
  std::vector<std::uint64_t> seeds;
  seeds.reserve(static_cast<std::size_t>(spec.repetitions));
  for (int k = 0; k < spec.repetitions; ++k) {
    seeds.push_back(spec.base_seed + static_cast<std::uint64_t>(k));
  }
  return seeds;
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <class T>
T get_or(const json& obj, const std::string& key, T fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

sim::Policy parse_policy(const json& value, const std::string& where) {
  sim::Policy policy;
  if (value.is_string()) {
    const auto kind = sim::policy_from_string(value.get<std::string>());
    if (!kind || *kind == sim::PolicyKind::fixed) {
      throw ConfigError(where + ": expected \"aif\", \"random\", or {\"fixed\": {...}}");
    }
    policy.kind = *kind;
    return policy;
  }
  if (!value.is_object()) throw ConfigError(where + ": expected string or object");
  reject_unknown(value, {"fixed"}, where);
  if (!value.contains("fixed")) throw ConfigError(where + ": missing 'fixed'");
  const json& fixed = value.at("fixed");
  reject_unknown(fixed, {"batch_size", "learning_rate"}, where + ".fixed");
  policy.kind = sim::PolicyKind::fixed;
  policy.fixed.batch_size = get_or<int>(fixed, "batch_size", 8, where + ".fixed");
  policy.fixed.learning_rate = get_or<double>(fixed, "learning_rate", 0.0005, where + ".fixed");
  if (!agent::on_grid(policy.fixed)) {
    throw ConfigError(where + ".fixed: configuration is not a grid point");
  }
  return policy;
}

ExperimentSpec parse_json(const json& root) {
  reject_unknown(root,
                 {"name", "repetitions", "base_seed", "horizon", "n_clients", "n_rounds", "slo",
                  "quantity_schedule", "stream", "mlp", "devices", "policies", "preferences",
                  "warmup_cap", "epsilon", "epochs", "timing"},
                 "spec");
  ExperimentSpec spec;
  spec.name = get_or<std::string>(root, "name", spec.name, "spec");
  spec.repetitions = get_or<int>(root, "repetitions", spec.repetitions, "spec");
  if (spec.repetitions < 1) throw ConfigError("spec.repetitions: must be >= 1");
  spec.base_seed = get_or<std::uint64_t>(root, "base_seed", spec.base_seed, "spec");
  spec.scenario.n_clients = get_or<int>(root, "n_clients", spec.scenario.n_clients, "spec");
  spec.scenario.n_rounds = get_or<int>(root, "n_rounds", spec.scenario.n_rounds, "spec");
  spec.horizon = get_or<int>(root, "horizon", std::min(50, spec.scenario.n_rounds), "spec");
  if (spec.horizon < 1) throw ConfigError("spec.horizon: must be >= 1");

  if (root.contains("slo")) {
    const json& slo = root.at("slo");
    reject_unknown(slo, {"time_limit_s", "accuracy_target"}, "spec.slo");
    spec.scenario.slo.time_limit_s =
        get_or<double>(slo, "time_limit_s", spec.scenario.slo.time_limit_s, "spec.slo");
    spec.scenario.slo.accuracy_target =
        get_or<double>(slo, "accuracy_target", spec.scenario.slo.accuracy_target, "spec.slo");
  }

  if (root.contains("quantity_schedule")) {
    const json& sched = root.at("quantity_schedule");
    if (!sched.is_array() || sched.empty()) {
      throw ConfigError("spec.quantity_schedule: expected a non-empty array");
    }
    spec.scenario.schedule.breakpoints.clear();
    for (const json& entry : sched) {
      reject_unknown(entry, {"start_round", "samples"}, "spec.quantity_schedule[]");
      spec.scenario.schedule.breakpoints.emplace_back(
          get_or<int>(entry, "start_round", 1, "spec.quantity_schedule[]"),
          get_or<int>(entry, "samples", 5000, "spec.quantity_schedule[]"));
    }
  }

  if (root.contains("stream")) {
    const json& st = root.at("stream");
    reject_unknown(st, {"n_features", "n_classes", "n_centroids", "drift_speed"}, "spec.stream");
    spec.scenario.stream_features =
        get_or<int>(st, "n_features", spec.scenario.stream_features, "spec.stream");
    spec.scenario.stream_classes =
        get_or<int>(st, "n_classes", spec.scenario.stream_classes, "spec.stream");
    spec.scenario.stream_centroids =
        get_or<int>(st, "n_centroids", spec.scenario.stream_centroids, "spec.stream");
    spec.scenario.drift_speed =
        get_or<double>(st, "drift_speed", spec.scenario.drift_speed, "spec.stream");
  }

  if (root.contains("mlp")) {
    const json& mlp = root.at("mlp");
    reject_unknown(mlp, {"hidden"}, "spec.mlp");
    if (mlp.contains("hidden")) {
      const json& hidden = mlp.at("hidden");
      if (!hidden.is_array() || hidden.size() != 2) {
        throw ConfigError("spec.mlp.hidden: expected exactly two widths");
      }
      spec.scenario.hidden = {hidden.at(0).get<int>(), hidden.at(1).get<int>()};
    }
  }

  if (root.contains("devices")) {
    const json& devices = root.at("devices");
    if (!devices.is_array() || devices.empty()) {
      throw ConfigError("spec.devices: expected a non-empty array");
    }
    spec.scenario.devices.clear();
    for (const json& entry : devices) {
      reject_unknown(entry, {"name", "per_batch_overhead_s", "per_sample_cost_s"},
                     "spec.devices[]");
      sim::DeviceProfile profile;
      profile.name = get_or<std::string>(entry, "name", profile.name, "spec.devices[]");
      profile.per_batch_overhead_s =
          get_or<double>(entry, "per_batch_overhead_s", profile.per_batch_overhead_s,
                         "spec.devices[]");
      profile.per_sample_cost_s = get_or<double>(entry, "per_sample_cost_s",
                                                 profile.per_sample_cost_s, "spec.devices[]");
      if (profile.per_batch_overhead_s < 0.0 || profile.per_sample_cost_s < 0.0) {
        throw ConfigError("spec.devices[]: negative cost");
      }
      spec.scenario.devices.push_back(std::move(profile));
    }
  }

  if (root.contains("policies")) {
    const json& policies = root.at("policies");
    spec.scenario.policies.clear();
    if (policies.is_array()) {
      if (policies.empty()) throw ConfigError("spec.policies: expected a non-empty array");
      for (const json& entry : policies) {
        spec.scenario.policies.push_back(parse_policy(entry, "spec.policies[]"));
      }
    } else {
      spec.scenario.policies.push_back(parse_policy(policies, "spec.policies"));
    }
  }

  if (root.contains("preferences")) {
    const json& prefs = root.at("preferences");
    reject_unknown(prefs, {"time", "performance"}, "spec.preferences");
    const auto parse_pair = [&](const char* key, std::array<double, 2>& out) {
      if (!prefs.contains(key)) return;
      const json& pair = prefs.at(key);
      if (!pair.is_array() || pair.size() != 2) {
        throw ConfigError(std::string("spec.preferences.") + key +
                          ": expected [unfulfilled, fulfilled]");
      }
      out = {pair.at(0).get<double>(), pair.at(1).get<double>()};
    };
    parse_pair("time", spec.scenario.time_preference);
    parse_pair("performance", spec.scenario.perf_preference);
  }

  spec.scenario.warmup_cap = get_or<int>(root, "warmup_cap", spec.scenario.warmup_cap, "spec");
  spec.scenario.epsilon = get_or<double>(root, "epsilon", spec.scenario.epsilon, "spec");
  spec.scenario.epochs = get_or<int>(root, "epochs", spec.scenario.epochs, "spec");

  if (root.contains("timing")) {
    const std::string timing = root.at("timing").get<std::string>();
    if (timing == "synthetic") {
      spec.scenario.timing_mode = sim::TimingProvider::Mode::synthetic;
    } else if (timing == "measured") {
      spec.scenario.timing_mode = sim::TimingProvider::Mode::measured;
    } else {
      throw ConfigError("spec.timing: expected \"synthetic\" or \"measured\"");
    }
  }

  const auto problems = sim::validate(spec.scenario);
  if (!problems.empty()) throw ConfigError("spec: " + problems.front());
  return spec;
}

}  // namespace

ExperimentSpec parse_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open spec file " + path.string());
  json root;
  try {
    root = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("spec parse error: " + std::string(e.what()));
  }
  return parse_json(root);
}

ExperimentSpec parse_spec_text(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError("spec parse error: " + std::string(e.what()));
  }
  return parse_json(root);
}

std::string echo_spec(const ExperimentSpec& spec) {
  json root;
  root["name"] = spec.name;
  root["repetitions"] = spec.repetitions;
  root["base_seed"] = spec.base_seed;
  root["horizon"] = spec.horizon;
  root["n_clients"] = spec.scenario.n_clients;
  root["n_rounds"] = spec.scenario.n_rounds;
  root["slo"] = {{"time_limit_s", spec.scenario.slo.time_limit_s},
                 {"accuracy_target", spec.scenario.slo.accuracy_target}};
  root["quantity_schedule"] = json::array();
  for (const auto& [start, samples] : spec.scenario.schedule.breakpoints) {
    root["quantity_schedule"].push_back({{"start_round", start}, {"samples", samples}});
  }
  root["stream"] = {{"n_features", spec.scenario.stream_features},
                    {"n_classes", spec.scenario.stream_classes},
                    {"n_centroids", spec.scenario.stream_centroids},
                    {"drift_speed", spec.scenario.drift_speed}};
  root["mlp"] = {{"hidden", {spec.scenario.hidden[0], spec.scenario.hidden[1]}}};
  root["devices"] = json::array();
  for (const sim::DeviceProfile& d : spec.scenario.devices) {
    root["devices"].push_back({{"name", d.name},
                               {"per_batch_overhead_s", d.per_batch_overhead_s},
                               {"per_sample_cost_s", d.per_sample_cost_s}});
  }
  root["policies"] = json::array();
  for (const sim::Policy& p : spec.scenario.policies) {
    if (p.kind == sim::PolicyKind::fixed) {
      root["policies"].push_back({{"fixed",
                                   {{"batch_size", p.fixed.batch_size},
                                    {"learning_rate", p.fixed.learning_rate}}}});
    } else {
      root["policies"].push_back(sim::to_string(p.kind));
    }
  }
  root["preferences"] = {
      {"time", {spec.scenario.time_preference[0], spec.scenario.time_preference[1]}},
      {"performance", {spec.scenario.perf_preference[0], spec.scenario.perf_preference[1]}}};
  root["warmup_cap"] = spec.scenario.warmup_cap;
  root["epsilon"] = spec.scenario.epsilon;
  root["epochs"] = spec.scenario.epochs;
  root["timing"] =
      spec.scenario.timing_mode == sim::TimingProvider::Mode::synthetic ? "synthetic" : "measured";
  return root.dump(2) + "\n";
}

}  // namespace aifl::harness
