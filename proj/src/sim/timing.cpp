#include "aifl/sim/timing.hpp"

#include <stdexcept>

namespace aifl::sim {

double synthetic_duration(const DeviceProfile& profile, long n_samples, int batch_size,
                          int epochs) {
  if (n_samples < 1 || batch_size < 1 || epochs < 1) {
    throw std::invalid_argument("synthetic_duration: nonpositive input");
  }
  const long batches = (n_samples + batch_size - 1) / batch_size;
  return static_cast<double>(epochs) *
         (static_cast<double>(batches) * profile.per_batch_overhead_s +
          static_cast<double>(n_samples) * profile.per_sample_cost_s);
}

}  // namespace aifl::sim
