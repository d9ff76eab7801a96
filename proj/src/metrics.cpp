#include "elasim/metrics.hpp"

#include <algorithm>
#include <string>

#include "elasim/errors.hpp"

namespace elasim {

EfficiencyMetrics compute_metrics(const TimingWindow& window) {
    const int p = window.process_count();
    if (p < 1) {
        throw InvalidInputError("compute_metrics: empty window");
    }
    if (window.step_span.count() < 1) {
        throw InvalidInputError("compute_metrics: empty step span");
    }

    EfficiencyMetrics m;
    for (const ProcessTiming& t : window.per_process) {
        if (t.work_time < 0.0 || t.comm_time < 0.0) {
            throw InvalidInputError("compute_metrics: negative timing");
        }
        m.total_work += t.work_time;
        m.max_work = std::max(m.max_work, t.work_time);
        m.max_comm = std::max(m.max_comm, t.comm_time);
        m.elapsed_time = std::max(m.elapsed_time, t.work_time + t.comm_time);
    }

    if (m.max_work <= 0.0) {
        throw DegenerateWindowError(
            "compute_metrics: no process recorded useful work over steps [" +
            std::to_string(window.step_span.first) + "," +
            std::to_string(window.step_span.last) + "]");
    }

    m.ce = m.max_work / m.elapsed_time;
    m.lb = m.total_work / (m.max_work * p);
    m.pe = m.total_work / (m.elapsed_time * p);
    return m;
}

TimingWindow merge_windows(const TimingWindow& a, const TimingWindow& b) {
    if (a.process_count() != b.process_count()) {
        throw InvalidMergeError(
            "merge_windows: process count changed (" +
            std::to_string(a.process_count()) + " vs " +
            std::to_string(b.process_count()) + ")");
    }
    const bool a_then_b = a.step_span.last + 1 == b.step_span.first;
    const bool b_then_a = b.step_span.last + 1 == a.step_span.first;
    if (!a_then_b && !b_then_a) {
        throw InvalidMergeError("merge_windows: step spans not adjacent");
    }

    TimingWindow out;
    out.per_process.resize(a.per_process.size());
    for (std::size_t i = 0; i < out.per_process.size(); ++i) {
        out.per_process[i].work_time =
            a.per_process[i].work_time + b.per_process[i].work_time;
        out.per_process[i].comm_time =
            a.per_process[i].comm_time + b.per_process[i].comm_time;
    }
    out.step_span = a_then_b ? StepSpan{a.step_span.first, b.step_span.last}
                             : StepSpan{b.step_span.first, a.step_span.last};
    return out;
}

} // namespace elasim
