#pragma once

#include <array>

namespace aifl::agent {

/// Round-level targets; both comparisons are inclusive.
struct SloSpec {
  double time_limit_s = 2.0;
  double accuracy_target = 0.97;
};

struct SloOutcome {
  bool time_ok = false;
  bool perf_ok = false;

  friend bool operator==(const SloOutcome&, const SloOutcome&) = default;
};

inline constexpr int kOutcomeCount = 4;

/// Joint outcome state, time bit most significant; (1,1) is the last state.
inline int outcome_index(SloOutcome o) {
  return static_cast<int>(o.time_ok) * 2 + static_cast<int>(o.perf_ok);
}

inline SloOutcome outcome_from_index(int idx) {
  return SloOutcome{(idx & 2) != 0, (idx & 1) != 0};
}

/// Log of the normalized joint preference over the four SLO outcomes.
struct PreferenceVector {
  std::array<double, kOutcomeCount> log_prefs{};
};

/// Joint preference as the normalized outer product of per-SLO
/// (unfulfilled, fulfilled) weights, time first.
PreferenceVector make_preferences(const std::array<double, 2>& time_weights,
                                  const std::array<double, 2>& perf_weights);

}  // namespace aifl::agent
