#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "aifl/sim/round.hpp"

namespace aifl::harness {

/// Shortest round-trip decimal text, identical across runs.
std::string fmt_double(double v);
std::string fmt_optional(const std::optional<double>& v);  // empty cell when absent

inline constexpr const char* kRoundsHeader =
    "run_seed,round,client_id,policy,batch_size,learning_rate,duration_s,val_accuracy,"
    "time_ok,perf_ok,lifelong,expected_ig,observed_ig,relearned";
inline constexpr const char* kEfeHeader =
    "run_seed,round,client_id,batch_size,learning_rate,pragmatic,info_gain,efe";
inline constexpr const char* kSummaryHeader =
    "run_seed,client_id,policy,cum_time_slo,cum_perf_slo,relearn_count";

void write_rounds_row(std::ostream& os, std::uint64_t run_seed, const sim::RoundRecord& r);
void write_efe_row(std::ostream& os, std::uint64_t run_seed, const sim::EfeLogRow& row);

}  // namespace aifl::harness
