#include "aifl/harness/experiment.hpp"

#include <fstream>

#include "aifl/harness/csv.hpp"
#include "aifl/learn/dataset.hpp"
#include "aifl/nn/mlp.hpp"

namespace aifl::harness {

namespace fs = std::filesystem;

std::vector<int> checkpoint_rounds(const sim::Scenario& scenario) {
  std::vector<int> rounds;
  for (std::size_t i = 1; i < scenario.schedule.breakpoints.size(); ++i) {
    const int before_drift = scenario.schedule.breakpoints[i].first - 1;
    if (before_drift >= 1 && before_drift < scenario.n_rounds) rounds.push_back(before_drift);
  }
  rounds.push_back(scenario.n_rounds);
  return rounds;
}

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  return out;
}

void summarize_trace(const ExperimentSpec& spec, std::uint64_t run_seed,
                     const sim::ScenarioTrace& trace, RunSummary& summary) {
  const auto per_client = sim::split_by_client(trace, spec.scenario.n_clients);
  for (int c = 0; c < spec.scenario.n_clients; ++c) {
    ClientSummary cs;
    cs.run_seed = run_seed;
    cs.client_id = c;
    cs.policy = per_client[c].empty() ? sim::PolicyKind::aif : per_client[c].front().policy;
    try {
      cs.cum_time_slo = sim::cumulative_fulfillment(per_client[c], sim::SloKind::time);
      cs.cum_perf_slo = sim::cumulative_fulfillment(per_client[c], sim::SloKind::performance);
    } catch (const std::invalid_argument&) {
      // Lifelong never latched within the horizon; leave the cells empty.
    }
    for (const sim::RoundRecord& r : per_client[c]) {
      if (r.relearned) ++cs.relearn_count;
    }
    summary.clients.push_back(cs);
  }

  for (int round = 1; round <= spec.scenario.n_rounds; ++round) {
    RoundMean rm;
    rm.run_seed = run_seed;
    rm.round = round;
    long n = 0;
    for (const sim::RoundRecord& r : trace.records) {
      if (r.round != round) continue;
      ++n;
      rm.mean_time_ok += r.time_ok ? 1.0 : 0.0;
      rm.mean_perf_ok += r.perf_ok ? 1.0 : 0.0;
    }
    rm.mean_time_ok /= static_cast<double>(n);
    rm.mean_perf_ok /= static_cast<double>(n);
    summary.round_means.push_back(rm);
  }

  for (int checkpoint : checkpoint_rounds(spec.scenario)) {
    auto& hist = summary.config_histograms[checkpoint];
    for (const sim::RoundRecord& r : trace.records) {
      if (r.round != checkpoint) continue;
      const int idx = agent::config_index(r.config);
      if (idx >= 0) ++hist[idx];
    }
  }
}

}  // namespace

RunSummary run_experiment(const ExperimentSpec& spec, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  fs::create_directories(out_dir / "bn_snapshots");
  fs::create_directories(out_dir / "histories");
  fs::create_directories(out_dir / "models");

  {
    auto echo = open_out(out_dir / "spec_echo.json");
    echo << echo_spec(spec);
  }

  auto rounds_csv = open_out(out_dir / "rounds.csv");
  auto efe_csv = open_out(out_dir / "efe.csv");
  auto summary_csv = open_out(out_dir / "summary.csv");
  rounds_csv << kRoundsHeader << "\n";
  efe_csv << kEfeHeader << "\n";
  summary_csv << kSummaryHeader << "\n";

  RunSummary summary;
  for (std::uint64_t run_seed : run_seeds(spec)) {
    const sim::ScenarioTrace trace = sim::run_scenario(spec.scenario, run_seed);

    for (const sim::RoundRecord& r : trace.records) write_rounds_row(rounds_csv, run_seed, r);
    for (const sim::EfeLogRow& row : trace.efe_rows) write_efe_row(efe_csv, run_seed, row);

    for (const sim::SnapshotEvent& snap : trace.snapshots) {
      auto out = open_out(out_dir / "bn_snapshots" /
                          ("seed" + std::to_string(run_seed) + "_client" +
                           std::to_string(snap.client_id) + "_round" +
                           std::to_string(snap.round) + ".txt"));
      out << snap.net_text;
    }
    for (const auto& [client_id, history] : trace.histories) {
      auto out = open_out(out_dir / "histories" /
                          ("seed" + std::to_string(run_seed) + "_client" +
                           std::to_string(client_id) + ".csv"));
      learn::history_to_csv(out, history);
    }
    {
      auto out = open_out(out_dir / "models" / ("seed" + std::to_string(run_seed) + ".txt"));
      nn::save_mlp(out, trace.final_model);
    }

    summarize_trace(spec, run_seed, trace, summary);
  }

  for (const ClientSummary& cs : summary.clients) {
    summary_csv << cs.run_seed << "," << cs.client_id << "," << sim::to_string(cs.policy) << ","
                << fmt_optional(cs.cum_time_slo) << "," << fmt_optional(cs.cum_perf_slo) << ","
                << cs.relearn_count << "\n";
  }
  return summary;
}

namespace {

// Cumulative fulfillment per (seed, round), averaged over the clients that
// already have post-lifelong rounds.
std::vector<ComparisonRow> fulfillment_curves(const ExperimentSpec& spec, const std::string& name,
                                              std::uint64_t run_seed,
                                              const sim::ScenarioTrace& trace) {
  const auto per_client = sim::split_by_client(trace, spec.scenario.n_clients);
  std::vector<ComparisonRow> rows;
  rows.reserve(static_cast<std::size_t>(spec.scenario.n_rounds));
  for (int round = 1; round <= spec.scenario.n_rounds; ++round) {
    ComparisonRow row;
    row.policy = name;
    row.run_seed = run_seed;
    row.round = round;
    for (const auto& records : per_client) {
      long counted = 0, time_ok = 0, perf_ok = 0;
      for (const sim::RoundRecord& r : records) {
        if (r.round > round || !r.lifelong) continue;
        ++counted;
        time_ok += r.time_ok ? 1 : 0;
        perf_ok += r.perf_ok ? 1 : 0;
      }
      if (counted == 0) continue;
      ++row.clients_counted;
      row.mean_cum_time += static_cast<double>(time_ok) / static_cast<double>(counted);
      row.mean_cum_perf += static_cast<double>(perf_ok) / static_cast<double>(counted);
    }
    if (row.clients_counted > 0) {
      row.mean_cum_time /= row.clients_counted;
      row.mean_cum_perf /= row.clients_counted;
      row.mean_cum_both = 0.5 * (row.mean_cum_time + row.mean_cum_perf);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ComparisonResult compare_policies(const ExperimentSpec& spec, const fs::path& out_dir) {
  fs::create_directories(out_dir);

  const auto seeds = run_seeds(spec);
  const sim::GridSearchResult grid =
      sim::find_fixed_optimal(spec.scenario, std::min(spec.horizon, spec.scenario.n_rounds),
                              seeds);

  ComparisonResult result;
  result.fixed_config = grid.best;
  result.grid_scores = grid.mean_score;

  {
    auto out = open_out(out_dir / "fixed_config.json");
    out << "{\n  \"batch_size\": " << grid.best.batch_size
        << ",\n  \"learning_rate\": " << fmt_double(grid.best.learning_rate) << "\n}\n";
  }

  const std::vector<std::pair<std::string, sim::Policy>> policies = {
      {"aif", sim::Policy{sim::PolicyKind::aif, {}}},
      {"random", sim::Policy{sim::PolicyKind::random, {}}},
      {"fixed", sim::Policy{sim::PolicyKind::fixed, grid.best}},
  };

  auto compare_csv = open_out(out_dir / "compare.csv");
  compare_csv << "policy,run_seed,round,mean_cum_time_slo,mean_cum_perf_slo,mean_cum_both,"
                 "clients_counted\n";

  for (const auto& [name, policy] : policies) {
    ExperimentSpec variant = spec;
    variant.scenario.policies = {policy};

    auto rounds_csv = open_out(out_dir / ("rounds_" + name + ".csv"));
    rounds_csv << kRoundsHeader << "\n";

    for (std::uint64_t run_seed : seeds) {
      const sim::ScenarioTrace trace = sim::run_scenario(variant.scenario, run_seed);
      for (const sim::RoundRecord& r : trace.records) write_rounds_row(rounds_csv, run_seed, r);
      for (ComparisonRow& row : fulfillment_curves(variant, name, run_seed, trace)) {
        compare_csv << row.policy << "," << row.run_seed << "," << row.round << ","
                    << fmt_double(row.mean_cum_time) << "," << fmt_double(row.mean_cum_perf)
                    << "," << fmt_double(row.mean_cum_both) << "," << row.clients_counted << "\n";
        result.rows.push_back(std::move(row));
      }
    }
  }
  return result;
}

}  // namespace aifl::harness
