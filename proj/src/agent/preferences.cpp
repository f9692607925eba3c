#include "aifl/agent/slo.hpp"

#include <cmath>
#include <stdexcept>

namespace aifl::agent {

PreferenceVector make_preferences(const std::array<double, 2>& time_weights,
                                  const std::array<double, 2>& perf_weights) {
  for (double w : time_weights) {
    if (!(w > 0.0)) throw std::invalid_argument("make_preferences: nonpositive weight");
  }
  for (double w : perf_weights) {
    if (!(w > 0.0)) throw std::invalid_argument("make_preferences: nonpositive weight");
  }
  const double tz = time_weights[0] + time_weights[1];
  const double pz = perf_weights[0] + perf_weights[1];
  PreferenceVector prefs;
  for (int t = 0; t < 2; ++t) {
    for (int p = 0; p < 2; ++p) {
      prefs.log_prefs[t * 2 + p] = std::log((time_weights[t] / tz) * (perf_weights[p] / pz));
    }
  }
  return prefs;
}

}  // namespace aifl::agent
