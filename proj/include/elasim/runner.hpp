#ifndef ELASIM_RUNNER_HPP
#define ELASIM_RUNNER_HPP

#include <vector>

#include "elasim/config.hpp"
#include "elasim/trace.hpp"

namespace elasim {

struct RunResult {
    RunSummary summary;
    std::vector<TraceRecord> trace;
};

// Drives the full step loop: generate timings, feed the controller, forward
// resize requests to the scheduler, apply grants (charging the restart
// cost), and record every step. When config.trace_path is set the summary is
// computed from the re-read trace file, so the written artifacts are the
// single source of truth.
RunResult run_scenario(const ScenarioConfig& config);

struct SweepPoint {
    int cores = 0;
    EfficiencyMetrics metrics;
};

// CE/LB/PE of the workload across core counts. `noiseless` zeroes imbalance
// and noise; `anchor_step >= 0` freezes the iteration schedule at that step
// so drifting workloads can be probed regime by regime.
std::vector<SweepPoint> run_sweep(const WorkloadProfile& profile,
                                  const std::vector<int>& core_counts,
                                  std::int64_t steps_per_point,
                                  std::int64_t anchor_step = -1,
                                  bool noiseless = false);

} // namespace elasim

#endif
