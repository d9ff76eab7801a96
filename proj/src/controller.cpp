#include "elasim/controller.hpp"

#include <string>

#include "elasim/errors.hpp"

namespace elasim {

namespace {
// Keeps the control loop live when jitter pushes the measured CE to 1.
constexpr double kCeCeiling = 1.0 - 1e-9;
} // namespace

const char* phase_name(Phase phase) {
    switch (phase) {
    case Phase::Warmup: return "WARMUP";
    case Phase::Measuring: return "MEASURING";
    case Phase::AwaitingResources: return "AWAITING_RESOURCES";
    case Phase::Restarting: return "RESTARTING";
    case Phase::Done: return "DONE";
    }
    return "?";
}

ElasticityDecision evaluate_window(const EfficiencyMetrics& metrics,
                                   int current_cores,
                                   const ControllerConfig& cfg) {
    ElasticityDecision decision;
    if (cfg.target_range.contains(metrics.ce)) {
        return decision; // Stay
    }

    const double ce = metrics.ce >= 1.0 ? kCeCeiling : metrics.ce;
    const double raw = estimate_cores(current_cores, ce, target_ce(cfg.target_range));
    const int target = clamp_and_round(raw, current_cores, cfg.clamp);
    if (target == current_cores) {
        return decision; // clamps brought it back: nothing to request
    }
    decision.kind = ElasticityDecision::Kind::Resize;
    decision.target_cores = target;
    decision.reason = metrics.ce < cfg.target_range.ce_min
                          ? ResourceRequest::Reason::BelowRange
                          : ResourceRequest::Reason::AboveRange;
    return decision;
}

Controller::Controller(const ControllerConfig& cfg)
    : cfg_(cfg),
      phase_(cfg.starting_step > 0 ? Phase::Warmup : Phase::Measuring),
      current_cores_(cfg.initial_cores) {}

std::optional<WindowEvaluation> Controller::on_step_complete(
    const TimingWindow& step_timing) {
    if (step_timing.process_count() != current_cores_) {
        throw ProtocolError(
            "controller: step timing has " +
            std::to_string(step_timing.process_count()) + " processes, " +
            std::to_string(current_cores_) + " cores are active");
    }
    const std::int64_t step = step_timing.step_span.last;

    switch (phase_) {
    case Phase::Warmup:
        if (step < cfg_.starting_step) {
            return std::nullopt; // measurements not active yet
        }
        phase_ = Phase::Measuring;
        break;
    case Phase::AwaitingResources:
        // The simulation keeps running on the old allocation, but no new
        // efficiency value is checked until the resources arrive.
        return std::nullopt;
    case Phase::Restarting:
        // Skip the restart step so checkpoint read time never pollutes CE.
        phase_ = Phase::Measuring;
        return std::nullopt;
    case Phase::Done:
        throw ProtocolError("controller: step after finish");
    case Phase::Measuring:
        break;
    }

    window_ = window_ ? merge_windows(*window_, step_timing) : step_timing;
    if (window_->step_span.count() < cfg_.averaging_period) {
        return std::nullopt;
    }

    WindowEvaluation eval;
    eval.metrics = compute_metrics(*window_);
    eval.span = window_->step_span;
    eval.ce_clamped = eval.metrics.ce >= 1.0 &&
                      !cfg_.target_range.contains(eval.metrics.ce);
    eval.decision = evaluate_window(eval.metrics, current_cores_, cfg_);
    window_.reset();

    if (eval.decision.kind == ElasticityDecision::Kind::Resize) {
        pending_request_ = ResourceRequest{eval.decision.target_cores, step,
                                           eval.decision.reason};
        phase_ = Phase::AwaitingResources;
    }
    return eval;
}

void Controller::on_resources_granted(int granted_cores) {
    if (phase_ != Phase::AwaitingResources || !pending_request_) {
        throw ProtocolError("controller: grant without a pending request");
    }
    if (granted_cores != pending_request_->requested_cores) {
        throw ProtocolError("controller: granted " +
                            std::to_string(granted_cores) + " cores, requested " +
                            std::to_string(pending_request_->requested_cores));
    }
    current_cores_ = granted_cores;
    pending_request_.reset();
    window_.reset();
    ++optimization_steps_;
    phase_ = Phase::Restarting;
}

void Controller::on_resources_denied() {
    if (phase_ != Phase::AwaitingResources || !pending_request_) {
        throw ProtocolError("controller: denial without a pending request");
    }
    pending_request_.reset();
    window_.reset();
    phase_ = Phase::Measuring; // may re-request at the next full window
}

} // namespace elasim
