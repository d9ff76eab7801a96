#include "elasim/workload.hpp"

#include <algorithm>
#include <cmath>

#include "elasim/errors.hpp"

namespace elasim {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t kImbalanceTag = 0x696d62616cULL; // "imbal"
constexpr std::uint64_t kNoiseTag = 0x6e6f697365ULL;     // "noise"

// Uniform draw in [-1, 1), a pure function of its inputs.
double unit_draw(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                 std::uint64_t c, std::uint64_t tag) {
    std::uint64_t h = mix64(seed ^ mix64(a ^ mix64(b ^ mix64(c ^ tag))));
    return static_cast<double>(h >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

} // namespace

long iterations_at(const IterationSchedule& schedule, std::int64_t step) {
    if (step < 0) {
        throw InvalidInputError("iterations_at: negative step");
    }
    switch (schedule.kind) {
    case IterationSchedule::Kind::Constant:
        return schedule.constant_iterations;
    case IterationSchedule::Kind::HeavisideRamp:
        // Heaviside convention H(0) = 1: the jump step already ramps.
        if (step < schedule.ramp_jump_step) {
            return schedule.ramp_base;
        }
        return static_cast<long>(schedule.ramp_offset + step);
    }
    throw InvalidInputError("iterations_at: unknown schedule kind");
}

WorkloadProfile implicit_preset() {
    WorkloadProfile p;
    p.total_work_per_step = 150.0;
    // kappa = 1/98 makes the noiseless CE at 15 cores exactly
    // (150/15) / (150/15 + 20/98) = 0.98 with the default 20 iterations.
    p.comm_base = 1.0 / 98.0;
    p.comm_log_slope = 0.05;
    p.imbalance_amplitude = 0.05;
    p.noise_amplitude = 0.02;
    p.reference_cores = 15;
    p.iteration_schedule.kind = IterationSchedule::Kind::Constant;
    p.iteration_schedule.constant_iterations = 20;
    p.scheme_label = "implicit";
    return p;
}

WorkloadProfile explicit_preset() {
    WorkloadProfile p;
    p.total_work_per_step = 150.0;
    p.comm_base = 0.0156;
    p.comm_log_slope = 0.05;
    p.imbalance_amplitude = 0.03;
    p.noise_amplitude = 0.08; // explicit runs show noisier efficiency
    p.reference_cores = 15;
    p.iteration_schedule.kind = IterationSchedule::Kind::Constant;
    p.iteration_schedule.constant_iterations = 10;
    p.scheme_label = "explicit";
    return p;
}

double restart_cost(const WorkloadProfile& profile, int cores_old,
                    int cores_new) {
    if (cores_old < 1 || cores_new < 1) {
        throw InvalidInputError("restart_cost: core counts must be >= 1");
    }
    const int bottleneck = std::min(cores_old, cores_new);
    return profile.restart_fixed_seconds +
           profile.restart_size_core_seconds / bottleneck;
}

WorkloadGenerator::WorkloadGenerator(WorkloadProfile profile)
    : profile_(std::move(profile)) {}

TimingWindow WorkloadGenerator::generate_step(std::int64_t step, int cores) {
    if (cores < 1) {
        throw InvalidInputError("generate_step: core count must be >= 1");
    }
    if (cores != last_cores_) {
        ++epoch_; // new partition, new imbalance draws
        last_cores_ = cores;
    }

    const WorkloadProfile& p = profile_;
    const double work_share = p.total_work_per_step / cores;
    const long iters = iterations_at(p.iteration_schedule, step);
    const double log_growth =
        1.0 + p.comm_log_slope *
                  std::log2(static_cast<double>(cores) / p.reference_cores);
    const double comm_share = p.comm_base * static_cast<double>(iters) * log_growth;

    TimingWindow window;
    window.step_span = {step, step};
    window.per_process.resize(cores);
    const auto epoch = static_cast<std::uint64_t>(epoch_);
    for (int i = 0; i < cores; ++i) {
        const double u = unit_draw(p.rng_seed, epoch, 0,
                                   static_cast<std::uint64_t>(i), kImbalanceTag);
        const double v = unit_draw(p.rng_seed, epoch,
                                   static_cast<std::uint64_t>(step),
                                   static_cast<std::uint64_t>(i), kNoiseTag);
        window.per_process[i].work_time =
            std::max(0.0, work_share * (1.0 + p.imbalance_amplitude * u));
        window.per_process[i].comm_time =
            std::max(0.0, comm_share * (1.0 + p.noise_amplitude * v));
    }
    return window;
}

std::vector<std::pair<int, EfficiencyMetrics>> sweep_ce(
    const WorkloadProfile& profile, const std::vector<int>& core_counts,
    std::int64_t steps_per_point) {
    if (core_counts.empty()) {
        throw InvalidInputError("sweep_ce: empty core list");
    }
    if (steps_per_point < 1) {
        throw InvalidInputError("sweep_ce: steps_per_point must be >= 1");
    }

    std::vector<std::pair<int, EfficiencyMetrics>> out;
    out.reserve(core_counts.size());
    for (int cores : core_counts) {
        WorkloadGenerator gen(profile);
        TimingWindow acc = gen.generate_step(0, cores);
        for (std::int64_t s = 1; s < steps_per_point; ++s) {
            acc = merge_windows(acc, gen.generate_step(s, cores));
        }
        out.emplace_back(cores, compute_metrics(acc));
    }
    return out;
}

} // namespace elasim
