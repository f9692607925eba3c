#pragma once

#include <string>

namespace aifl::sim {

/// Linear cost model standing in for one device class: a fixed overhead per
/// mini-batch plus a per-sample cost.
struct DeviceProfile {
  std::string name = "default";
  double per_batch_overhead_s = 0.01;
  double per_sample_cost_s = 1e-5;
};

/// epochs * (ceil(n/batch) * c0 + n * c1); strictly decreasing in batch size
/// for fixed n and epochs.
double synthetic_duration(const DeviceProfile& profile, long n_samples, int batch_size, int epochs);

/// Round-duration source. Synthetic mode is deterministic and is the default
/// for experiments; measured mode reports training wall time.
struct TimingProvider {
  enum class Mode { synthetic, measured };
  Mode mode = Mode::synthetic;
  DeviceProfile profile;

  double duration(long n_samples, int batch_size, int epochs, double measured_s) const {
    return mode == Mode::synthetic ? synthetic_duration(profile, n_samples, batch_size, epochs)
                                   : measured_s;
  }
};

}  // namespace aifl::sim
