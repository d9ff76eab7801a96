#ifndef ELASIM_SCHEDULER_HPP
#define ELASIM_SCHEDULER_HPP

#include <cstdint>
#include <optional>
#include <random>

namespace elasim {

// How long a job extension takes to be provisioned. Shrinks never wait.
struct GrowLatency {
    enum class Kind { FixedSeconds, UniformSeconds, StepMultiple };

    Kind kind = Kind::StepMultiple;
    double fixed_seconds = 0.0;
    double uniform_lo_seconds = 0.0;
    double uniform_hi_seconds = 0.0;
    double step_multiple = 2.0; // multiples of the current step duration
};

// Static description of the simulated machine. The default mirrors a
// 16-node cluster used with 15 cores per node (240-core ceiling).
struct ClusterModel {
    int cores_per_node = 15;
    int total_nodes = 16;
    GrowLatency grow_latency;
    double contention_probability = 0.0; // chance a grow is delayed once more
    std::uint64_t rng_seed = 1;

    int capacity() const { return cores_per_node * total_nodes; }
};

struct GrantEvent {
    int cores = 0;
    double granted_at = 0.0;
};

// Resource-manager model for one malleable job: at most one resize request
// in flight; shrinks release nodes immediately, grows become ready after a
// provisioning latency (possibly delayed once by contention, never denied).
class SchedulerModel {
public:
    SchedulerModel(ClusterModel cluster, int initial_cores);

    // `step_duration` is the simulated duration of the step that triggered
    // the request; it anchors StepMultiple latencies.
    void request_resize(int target_cores, double now, double step_duration);

    // Delivers the pending grant iff its ready time has been reached.
    std::optional<GrantEvent> poll(double now);

    int active_cores() const { return active_cores_; }
    int allocated_nodes() const;
    bool has_pending() const { return pending_.has_value(); }

private:
    struct Pending {
        int requested_cores;
        double ready_at;
    };

    double sample_latency(double step_duration);

    ClusterModel cluster_;
    int active_cores_;
    std::optional<Pending> pending_;
    std::mt19937_64 rng_;
};

} // namespace elasim

#endif
