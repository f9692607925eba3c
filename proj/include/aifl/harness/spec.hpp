#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "aifl/sim/scenario.hpp"

namespace aifl::harness {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A scenario plus the repetition plan. Run k of `repetitions` uses seed
/// base_seed + k.
struct ExperimentSpec {
  std::string name = "experiment";
  int repetitions = 1;
  std::uint64_t base_seed = 1;
  int horizon = 50;  // round at which the fixed-optimal baseline is scored
  sim::Scenario scenario;
};

std::vector<std::uint64_t> run_seeds(const ExperimentSpec& spec);

/// Strict parse: unknown keys are rejected, values are validated, defaults
/// fill everything omitted. Throws ConfigError with a field path on failure.
ExperimentSpec parse_spec(const std::filesystem::path& path);
ExperimentSpec parse_spec_text(const std::string& json_text);

/// The spec with every default materialized, as pretty JSON.
std::string echo_spec(const ExperimentSpec& spec);

}  // namespace aifl::harness
