#include "elasim/trace.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "elasim/errors.hpp"

namespace elasim {

namespace {

const char* kHeader =
    "step,simulated_time,cores,instantaneous_ce,window_ce,lb,pe,phase,event";

std::string opt_field(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

Phase parse_phase(const std::string& s) {
    if (s == "WARMUP") return Phase::Warmup;
    if (s == "MEASURING") return Phase::Measuring;
    if (s == "AWAITING_RESOURCES") return Phase::AwaitingResources;
    if (s == "RESTARTING") return Phase::Restarting;
    if (s == "DONE") return Phase::Done;
    throw InvalidInputError("trace: unknown phase '" + s + "'");
}

std::optional<TraceEvent> parse_event(const std::string& s) {
    if (s.empty()) return std::nullopt;
    if (s == "WindowEvaluated") return TraceEvent::WindowEvaluated;
    if (s == "ResizeRequested") return TraceEvent::ResizeRequested;
    if (s == "Granted") return TraceEvent::Granted;
    if (s == "Restarted") return TraceEvent::Restarted;
    if (s == "CeClamped") return TraceEvent::CeClamped;
    throw InvalidInputError("trace: unknown event '" + s + "'");
}

std::optional<double> parse_opt_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return std::strtod(s.c_str(), nullptr);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

const char* trace_event_name(TraceEvent event) {
    switch (event) {
    case TraceEvent::WindowEvaluated: return "WindowEvaluated";
    case TraceEvent::ResizeRequested: return "ResizeRequested";
    case TraceEvent::Granted: return "Granted";
    case TraceEvent::Restarted: return "Restarted";
    case TraceEvent::CeClamped: return "CeClamped";
    }
    return "?";
}

void TraceWriter::record(const TraceRecord& rec) {
    if (rec.step < last_step_) {
        throw SequencingError("trace: step " + std::to_string(rec.step) +
                              " after step " + std::to_string(last_step_));
    }
    last_step_ = rec.step;
    records_.push_back(rec);
    if (csv_out_) {
        if (!header_written_) {
            *csv_out_ << trace_csv_header() << '\n';
            header_written_ = true;
        }
        *csv_out_ << trace_csv_row(rec) << '\n';
        csv_out_->flush();
    }
}

std::string trace_csv_header() { return kHeader; }

std::string trace_csv_row(const TraceRecord& rec) {
    std::ostringstream out;
    out << rec.step << ',' << format_double(rec.simulated_time) << ','
        << rec.cores << ',' << opt_field(rec.instantaneous_ce) << ','
        << opt_field(rec.window_ce) << ',' << opt_field(rec.lb) << ','
        << opt_field(rec.pe) << ',' << phase_name(rec.phase) << ','
        << (rec.event ? trace_event_name(*rec.event) : "");
    return out.str();
}

void write_trace_csv(std::ostream& out, std::span<const TraceRecord> trace) {
    out << trace_csv_header() << '\n';
    for (const TraceRecord& rec : trace) {
        out << trace_csv_row(rec) << '\n';
    }
}

std::vector<TraceRecord> read_trace_csv(std::istream& in) {
    std::vector<TraceRecord> out;
    std::string line;
    if (!std::getline(in, line)) {
        return out;
    }
    if (line != kHeader) {
        throw InvalidInputError("trace: unexpected header '" + line + "'");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 9) {
            throw InvalidInputError("trace: malformed row '" + line + "'");
        }
        TraceRecord rec;
        rec.step = std::strtoll(fields[0].c_str(), nullptr, 10);
        rec.simulated_time = std::strtod(fields[1].c_str(), nullptr);
        rec.cores = static_cast<int>(std::strtol(fields[2].c_str(), nullptr, 10));
        rec.instantaneous_ce = parse_opt_double(fields[3]);
        rec.window_ce = parse_opt_double(fields[4]);
        rec.lb = parse_opt_double(fields[5]);
        rec.pe = parse_opt_double(fields[6]);
        rec.phase = parse_phase(fields[7]);
        rec.event = parse_event(fields[8]);
        out.push_back(rec);
    }
    return out;
}

RunSummary summarize(std::span<const TraceRecord> trace,
                     const ControllerConfig& cfg, int convergence_windows) {
    RunSummary s;
    s.final_window_ce = std::numeric_limits<double>::quiet_NaN();
    if (trace.empty()) {
        return s;
    }

    std::vector<double> window_ces;
    double prev_time = 0.0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const TraceRecord& rec = trace[i];
        s.core_hours += rec.cores * (rec.simulated_time - prev_time);
        if (rec.event == TraceEvent::Granted) {
            ++s.optimization_steps;
        }
        if (rec.event == TraceEvent::Restarted && i > 0) {
            s.restart_overhead_total +=
                rec.simulated_time - trace[i - 1].simulated_time;
        }
        if (rec.window_ce) {
            window_ces.push_back(*rec.window_ce);
        }
        prev_time = rec.simulated_time;
    }

    s.final_cores = trace.back().cores;
    s.baseline_core_hours = cfg.initial_cores * trace.back().simulated_time;
    if (!window_ces.empty()) {
        s.final_window_ce = window_ces.back();
    }
    if (static_cast<int>(window_ces.size()) >= convergence_windows) {
        s.converged = true;
        for (std::size_t i = window_ces.size() - convergence_windows;
             i < window_ces.size(); ++i) {
            if (!cfg.target_range.contains(window_ces[i])) {
                s.converged = false;
                break;
            }
        }
    }
    return s;
}

std::string format_summary(const RunSummary& summary) {
    std::ostringstream out;
    out << "optimization_steps = " << summary.optimization_steps << '\n'
        << "final_cores = " << summary.final_cores << '\n'
        << "final_window_ce = " << format_double(summary.final_window_ce) << '\n'
        << "converged = " << (summary.converged ? "true" : "false") << '\n'
        << "core_hours = " << format_double(summary.core_hours) << '\n'
        << "baseline_core_hours = " << format_double(summary.baseline_core_hours)
        << '\n'
        << "restart_overhead_total = "
        << format_double(summary.restart_overhead_total) << '\n';
    return out.str();
}

} // namespace elasim
