#ifndef ELASIM_CONTROLLER_HPP
#define ELASIM_CONTROLLER_HPP

#include <cstdint>
#include <optional>

#include "elasim/estimator.hpp"
#include "elasim/metrics.hpp"

namespace elasim {

enum class Phase {
    Warmup,            // before starting_step, measurements discarded
    Measuring,         // accumulating the averaging window
    AwaitingResources, // request issued, running on the old allocation
    Restarting,        // grant applied, next step absorbs the restart
    Done,
};

const char* phase_name(Phase phase);

struct ControllerConfig {
    TargetRange target_range;
    std::int64_t averaging_period = 10; // time steps per window
    ClampPolicy clamp;
    int initial_cores = 1;
    std::int64_t starting_step = 0; // first measured step
    std::int64_t total_steps = 0;
};

struct ResourceRequest {
    enum class Reason { BelowRange, AboveRange };

    int requested_cores = 0;
    std::int64_t issued_at_step = 0;
    Reason reason = Reason::BelowRange;
};

// Outcome of evaluating a full window against the target range.
struct ElasticityDecision {
    enum class Kind { Stay, Resize };

    Kind kind = Kind::Stay;
    int target_cores = 0; // meaningful for Resize only
    ResourceRequest::Reason reason = ResourceRequest::Reason::BelowRange;
};

// Stay when CE is inside the closed target range; otherwise the clamped
// closed-form estimate. A resize that lands back on current_cores degrades
// to Stay. Measured CE >= 1 (possible with near-zero communication) is
// clamped to 1 - 1e-9 so the loop stays live instead of erroring.
ElasticityDecision evaluate_window(const EfficiencyMetrics& metrics,
                                   int current_cores,
                                   const ControllerConfig& cfg);

// Event returned by the controller when an averaging window fills up.
struct WindowEvaluation {
    EfficiencyMetrics metrics;
    ElasticityDecision decision;
    StepSpan span;
    bool ce_clamped = false; // measured CE was >= 1 and clamped for estimation
};

// The elastic control loop as an explicit state machine, advanced once per
// completed time step by the simulation driver. Single-owner: transferable
// between threads, never mutated concurrently.
class Controller {
public:
    explicit Controller(const ControllerConfig& cfg);

    // Feeds the timings of one completed step. Returns an evaluation when
    // this step closed an averaging window. Timings are discarded during
    // warmup, while awaiting resources, and for the restart step itself.
    std::optional<WindowEvaluation> on_step_complete(
        const TimingWindow& step_timing);

    // Scheduler granted the pending request; the controller switches to the
    // new allocation and will skip the restart step.
    void on_resources_granted(int granted_cores);

    // Scheduler denied the pending request: drop it and resume measuring.
    void on_resources_denied();

    void finish() { phase_ = Phase::Done; }

    Phase phase() const { return phase_; }
    int current_cores() const { return current_cores_; }
    const std::optional<ResourceRequest>& pending_request() const {
        return pending_request_;
    }
    int optimization_step_count() const { return optimization_steps_; }

private:
    ControllerConfig cfg_;
    Phase phase_;
    int current_cores_;
    std::optional<TimingWindow> window_;
    std::optional<ResourceRequest> pending_request_;
    int optimization_steps_ = 0;
};

} // namespace elasim

#endif
