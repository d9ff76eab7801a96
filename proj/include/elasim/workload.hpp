#ifndef ELASIM_WORKLOAD_HPP
#define ELASIM_WORKLOAD_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "elasim/metrics.hpp"

namespace elasim {

// Solver-iteration count as a function of the time step. The ramp variant is
// a plateau followed by a linear growth:
//   base                 for step <  jump_step
//   ramp_offset + step   for step >= jump_step
struct IterationSchedule {
    enum class Kind { Constant, HeavisideRamp };

    Kind kind = Kind::Constant;
    long constant_iterations = 20;
    long ramp_base = 20;
    std::int64_t ramp_jump_step = 50;
    long ramp_offset = 10;
};

long iterations_at(const IterationSchedule& schedule, std::int64_t step);

// Parameters of the synthetic parallel application. Per step and process:
//   t_w^i = (W / n) * (1 + beta * u_i)
//   t_c^i = kappa * iters(step) * (1 + alpha * log2(n / n_ref)) * (1 + sigma * v_i)
// where u_i is a fixed-per-partition imbalance draw and v_i a per-step noise
// draw, both uniform in [-1, 1]; negative results are truncated to zero.
struct WorkloadProfile {
    double total_work_per_step = 150.0; // W, core-seconds
    double comm_base = 0.0;             // kappa, seconds per solver iteration
    double comm_log_slope = 0.0;        // alpha
    double imbalance_amplitude = 0.0;   // beta, in [0, 0.5]
    double noise_amplitude = 0.0;       // sigma, in [0, 0.5]
    int reference_cores = 15;           // n_ref anchoring the log term
    IterationSchedule iteration_schedule;
    std::string scheme_label = "implicit";
    std::uint64_t rng_seed = 1;
    double restart_fixed_seconds = 1.0;       // per-restart constant cost
    double restart_size_core_seconds = 100.0; // divided by min core count
};

// Calibrated presets for the two solver schemes. The implicit preset is
// fitted so the noiseless CE at 15 cores is exactly 0.98; the explicit one
// carries lighter communication and stronger noise.
WorkloadProfile implicit_preset();
WorkloadProfile explicit_preset();

// Checkpoint-write + read + repartition cost of one restart:
//   fixed + size / min(cores_old, cores_new).
double restart_cost(const WorkloadProfile& profile, int cores_old,
                    int cores_new);

// Single-owner generator of per-step timings. All draws are counter-based
// hashes of (seed, partition epoch, step, rank), so the stream is a pure
// function of the call sequence: same seed, same steps, same timings.
// Imbalance draws are re-taken only when the core count changes (a new
// partition), mimicking a static partition's fixed imbalance.
class WorkloadGenerator {
public:
    explicit WorkloadGenerator(WorkloadProfile profile);

    TimingWindow generate_step(std::int64_t step, int cores);

    const WorkloadProfile& profile() const { return profile_; }
    int partition_epoch() const { return epoch_; }

private:
    WorkloadProfile profile_;
    int last_cores_ = 0;
    int epoch_ = -1;
};

// Aggregate metrics of `steps_per_point` generated steps at each core count,
// each point with a fresh partition. Serves as the brute-force oracle for
// the estimator's model and as plot data.
std::vector<std::pair<int, EfficiencyMetrics>> sweep_ce(
    const WorkloadProfile& profile, const std::vector<int>& core_counts,
    std::int64_t steps_per_point);

} // namespace elasim

#endif
