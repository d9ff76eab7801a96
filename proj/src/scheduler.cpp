#include "elasim/scheduler.hpp"

#include <string>

#include "elasim/errors.hpp"

namespace elasim {

SchedulerModel::SchedulerModel(ClusterModel cluster, int initial_cores)
    : cluster_(cluster), active_cores_(initial_cores), rng_(cluster.rng_seed) {
    if (initial_cores < 1 || initial_cores > cluster_.capacity()) {
        throw CapacityError("scheduler: initial allocation of " +
                            std::to_string(initial_cores) +
                            " cores outside cluster capacity " +
                            std::to_string(cluster_.capacity()));
    }
}

double SchedulerModel::sample_latency(double step_duration) {
    switch (cluster_.grow_latency.kind) {
    case GrowLatency::Kind::FixedSeconds:
        return cluster_.grow_latency.fixed_seconds;
    case GrowLatency::Kind::UniformSeconds: {
        std::uniform_real_distribution<double> dist(
            cluster_.grow_latency.uniform_lo_seconds,
            cluster_.grow_latency.uniform_hi_seconds);
        return dist(rng_);
    }
    case GrowLatency::Kind::StepMultiple:
        return cluster_.grow_latency.step_multiple * step_duration;
    }
    return 0.0;
}

void SchedulerModel::request_resize(int target_cores, double now,
                                    double step_duration) {
    if (target_cores < 1 || target_cores > cluster_.capacity()) {
        throw CapacityError("scheduler: requested " +
                            std::to_string(target_cores) +
                            " cores, capacity is " +
                            std::to_string(cluster_.capacity()));
    }
    if (pending_) {
        throw ProtocolError("scheduler: a resize request is already pending");
    }

    if (target_cores <= active_cores_) {
        // Node release is asynchronous: the shrink is effective right away.
        pending_ = Pending{target_cores, now};
        return;
    }

    double ready_at = now + sample_latency(step_duration);
    if (cluster_.contention_probability > 0.0) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        if (unit(rng_) < cluster_.contention_probability) {
            ready_at += sample_latency(step_duration);
        }
    }
    pending_ = Pending{target_cores, ready_at};
}

std::optional<GrantEvent> SchedulerModel::poll(double now) {
    if (!pending_ || pending_->ready_at > now) {
        return std::nullopt;
    }
    GrantEvent grant{pending_->requested_cores, pending_->ready_at};
    active_cores_ = grant.cores;
    pending_.reset();
    return grant;
}

int SchedulerModel::allocated_nodes() const {
    return (active_cores_ + cluster_.cores_per_node - 1) /
           cluster_.cores_per_node;
}

} // namespace elasim
