#ifndef ELASIM_METRICS_HPP
#define ELASIM_METRICS_HPP

#include <cstdint>
#include <vector>

namespace elasim {

// Accumulated useful-work and communication time of one process over a
// measurement window, in seconds.
struct ProcessTiming {
    double work_time = 0.0;
    double comm_time = 0.0;
};

// Inclusive range of time-step indices covered by a window.
struct StepSpan {
    std::int64_t first = 0;
    std::int64_t last = 0;

    std::int64_t count() const { return last - first + 1; }
    bool operator==(const StepSpan&) const = default;
};

// Per-process timing accumulators for a window of time steps. The number of
// entries equals the core count active during the window.
struct TimingWindow {
    std::vector<ProcessTiming> per_process;
    StepSpan step_span;

    int process_count() const { return static_cast<int>(per_process.size()); }
};

// The efficiency metrics of a window together with the raw aggregates they
// derive from:
//   elapsed_time  t_e = max_i(t_w^i + t_c^i)
//   total_work    t_w = sum_i t_w^i
//   CE = max_i(t_w^i) / t_e
//   LB = t_w / (max_i(t_w^i) * P)
//   PE = t_w / (t_e * P) = CE * LB
struct EfficiencyMetrics {
    double elapsed_time = 0.0;
    double total_work = 0.0;
    double max_work = 0.0;
    double max_comm = 0.0;
    double ce = 0.0;
    double lb = 0.0;
    double pe = 0.0;
};

// Computes CE/LB/PE from accumulated timings. Throws InvalidInputError on an
// empty window or negative timings, DegenerateWindowError when no process
// did any useful work.
EfficiencyMetrics compute_metrics(const TimingWindow& window);

// Element-wise accumulation of two windows with identical process counts and
// adjacent step spans. Throws InvalidMergeError otherwise.
TimingWindow merge_windows(const TimingWindow& a, const TimingWindow& b);

} // namespace elasim

#endif
