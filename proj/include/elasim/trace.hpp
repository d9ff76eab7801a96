#ifndef ELASIM_TRACE_HPP
#define ELASIM_TRACE_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "elasim/controller.hpp"

namespace elasim {

// One event marker per record. A step may emit several records (window
// evaluation, resize request, grant, restart), all sharing the step index.
enum class TraceEvent {
    WindowEvaluated,
    ResizeRequested,
    Granted,
    Restarted,
    CeClamped, // measured CE >= 1 was clamped before estimation
};

const char* trace_event_name(TraceEvent event);

struct TraceRecord {
    std::int64_t step = 0;
    double simulated_time = 0.0;
    int cores = 0;
    std::optional<double> instantaneous_ce;
    std::optional<double> window_ce; // present exactly at window boundaries
    std::optional<double> lb;
    std::optional<double> pe;
    Phase phase = Phase::Measuring;
    std::optional<TraceEvent> event;
};

// Appends records in step order, mirroring them to an optional CSV stream
// (header written lazily, one flushed line per record).
class TraceWriter {
public:
    TraceWriter() = default;
    explicit TraceWriter(std::ostream* csv_out) : csv_out_(csv_out) {}

    void record(const TraceRecord& rec);

    const std::vector<TraceRecord>& records() const { return records_; }

private:
    std::vector<TraceRecord> records_;
    std::ostream* csv_out_ = nullptr;
    bool header_written_ = false;
    std::int64_t last_step_ = -1;
};

struct RunSummary {
    int optimization_steps = 0;
    int final_cores = 0;
    double final_window_ce = 0.0;
    bool converged = false;
    double core_hours = 0.0;          // core-seconds integrated over the run
    double baseline_core_hours = 0.0; // initial_cores held for the same time
    double restart_overhead_total = 0.0;
};

// Digests a full trace. converged means the last `convergence_windows`
// evaluated windows all landed inside the target range.
RunSummary summarize(std::span<const TraceRecord> trace,
                     const ControllerConfig& cfg, int convergence_windows = 3);

std::string trace_csv_header();
std::string trace_csv_row(const TraceRecord& rec);
void write_trace_csv(std::ostream& out, std::span<const TraceRecord> trace);
std::vector<TraceRecord> read_trace_csv(std::istream& in);

// Flat `key = value` rendering of a summary, one entry per line.
std::string format_summary(const RunSummary& summary);

// Shared 9-significant-digit float formatting for all emitted files.
std::string format_double(double value);

} // namespace elasim

#endif
