#include "aifl/harness/csv.hpp"

#include <charconv>
#include <ostream>

namespace aifl::harness {

std::string fmt_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

std::string fmt_optional(const std::optional<double>& v) {
  return v.has_value() ? fmt_double(*v) : std::string{};
}

void write_rounds_row(std::ostream& os, std::uint64_t run_seed, const sim::RoundRecord& r) {
  os << run_seed << "," << r.round << "," << r.client_id << "," << sim::to_string(r.policy) << ","
     << r.config.batch_size << "," << fmt_double(r.config.learning_rate) << ","
     << fmt_double(r.duration_s) << "," << fmt_double(r.val_accuracy) << "," << int(r.time_ok)
     << "," << int(r.perf_ok) << "," << int(r.lifelong) << "," << fmt_optional(r.expected_ig)
     << "," << fmt_optional(r.observed_ig) << "," << int(r.relearned) << "\n";
}

void write_efe_row(std::ostream& os, std::uint64_t run_seed, const sim::EfeLogRow& row) {
  os << run_seed << "," << row.round << "," << row.client_id << ","
     << row.breakdown.config.batch_size << "," << fmt_double(row.breakdown.config.learning_rate)
     << "," << fmt_double(row.breakdown.pragmatic) << "," << fmt_double(row.breakdown.info_gain)
     << "," << fmt_double(row.breakdown.efe) << "\n";
}

}  // namespace aifl::harness
