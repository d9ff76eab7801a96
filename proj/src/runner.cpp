#include "elasim/runner.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include "elasim/errors.hpp"

namespace elasim {

namespace {

TraceRecord base_record(std::int64_t step, double now, int cores, Phase phase) {
    TraceRecord rec;
    rec.step = step;
    rec.simulated_time = now;
    rec.cores = cores;
    rec.phase = phase;
    return rec;
}

} // namespace

RunResult run_scenario(const ScenarioConfig& config) {
    validate_scenario(config);

    WorkloadGenerator generator(config.workload);
    Controller controller(config.controller);
    SchedulerModel scheduler(config.cluster, config.controller.initial_cores);

    std::unique_ptr<std::ofstream> trace_file;
    if (!config.trace_path.empty()) {
        trace_file = std::make_unique<std::ofstream>(config.trace_path);
        if (!*trace_file) {
            throw ConfigError("output.trace",
                              "cannot open '" + config.trace_path + "'");
        }
    }
    TraceWriter writer(trace_file.get());

    double now = 0.0;
    for (std::int64_t step = 0; step < config.controller.total_steps; ++step) {
        const int cores = controller.current_cores();
        const TimingWindow timing = generator.generate_step(step, cores);
        const EfficiencyMetrics instant = compute_metrics(timing);
        now += instant.elapsed_time;

        const auto evaluation = controller.on_step_complete(timing);

        TraceRecord rec = base_record(step, now, cores, controller.phase());
        rec.instantaneous_ce = instant.ce;
        if (evaluation) {
            rec.window_ce = evaluation->metrics.ce;
            rec.lb = evaluation->metrics.lb;
            rec.pe = evaluation->metrics.pe;
            rec.event = TraceEvent::WindowEvaluated;
        }
        writer.record(rec);

        if (evaluation && evaluation->ce_clamped) {
            TraceRecord clamped = base_record(step, now, cores, controller.phase());
            clamped.event = TraceEvent::CeClamped;
            writer.record(clamped);
        }
        if (evaluation &&
            evaluation->decision.kind == ElasticityDecision::Kind::Resize) {
            scheduler.request_resize(evaluation->decision.target_cores, now,
                                     instant.elapsed_time);
            TraceRecord req = base_record(step, now, cores, controller.phase());
            req.event = TraceEvent::ResizeRequested;
            writer.record(req);
        }

        if (const auto grant = scheduler.poll(now)) {
            const int old_cores = controller.current_cores();
            controller.on_resources_granted(grant->cores);

            TraceRecord granted =
                base_record(step, now, grant->cores, controller.phase());
            granted.event = TraceEvent::Granted;
            writer.record(granted);

            now += restart_cost(config.workload, old_cores, grant->cores);
            TraceRecord restarted =
                base_record(step, now, grant->cores, controller.phase());
            restarted.event = TraceEvent::Restarted;
            writer.record(restarted);
        }
    }
    controller.finish();

    RunResult result;
    if (trace_file) {
        trace_file->flush();
        trace_file.reset();
        std::ifstream reread(config.trace_path);
        result.trace = read_trace_csv(reread);
    } else {
        result.trace = writer.records();
    }
    result.summary =
        summarize(result.trace, config.controller, config.convergence_windows);

    if (!config.summary_path.empty()) {
        std::ofstream out(config.summary_path);
        if (!out) {
            throw ConfigError("output.summary",
                              "cannot open '" + config.summary_path + "'");
        }
        out << format_summary(result.summary);
    }
    return result;
}

std::vector<SweepPoint> run_sweep(const WorkloadProfile& profile,
                                  const std::vector<int>& core_counts,
                                  std::int64_t steps_per_point,
                                  std::int64_t anchor_step, bool noiseless) {
    WorkloadProfile probe = profile;
    if (noiseless) {
        probe.imbalance_amplitude = 0.0;
        probe.noise_amplitude = 0.0;
    }
    if (anchor_step >= 0) {
        const long iters = iterations_at(probe.iteration_schedule, anchor_step);
        probe.iteration_schedule.kind = IterationSchedule::Kind::Constant;
        probe.iteration_schedule.constant_iterations = iters;
    }

    std::vector<SweepPoint> out;
    for (const auto& [cores, metrics] :
         sweep_ce(probe, core_counts, steps_per_point)) {
        out.push_back(SweepPoint{cores, metrics});
    }
    return out;
}

} // namespace elasim
