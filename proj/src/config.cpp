#include "elasim/config.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "elasim/errors.hpp"

namespace elasim {

namespace {

struct Entry {
    std::string value;
    bool used = false;
};

using Section = std::map<std::string, Entry>;
using Document = std::map<std::string, Section>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Document read_document(std::istream& in) {
    Document doc;
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(lineno),
                                  "unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            doc[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno),
                              "expected key = value");
        }
        if (section.empty()) {
            throw ConfigError("line " + std::to_string(lineno),
                              "key outside any [section]");
        }
        const std::string key = trim(line.substr(0, eq));
        doc[section][key] = Entry{trim(line.substr(eq + 1)), false};
    }
    return doc;
}

class Reader {
public:
    explicit Reader(Document doc) : doc_(std::move(doc)) {}

    bool has(const std::string& section, const std::string& key) {
        auto s = doc_.find(section);
        return s != doc_.end() && s->second.count(key) > 0;
    }

    std::string raw(const std::string& section, const std::string& key) {
        auto& entry = doc_.at(section).at(key);
        entry.used = true;
        return entry.value;
    }

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) {
        return has(section, key) ? raw(section, key) : fallback;
    }

    double get_double(const std::string& section, const std::string& key,
                      double fallback) {
        if (!has(section, key)) return fallback;
        const std::string v = raw(section, key);
        char* end = nullptr;
        const double parsed = std::strtod(v.c_str(), &end);
        if (end == v.c_str() || *end != '\0') {
            throw ConfigError(section + "." + key, "not a number: '" + v + "'");
        }
        return parsed;
    }

    std::int64_t get_int(const std::string& section, const std::string& key,
                         std::int64_t fallback) {
        if (!has(section, key)) return fallback;
        const std::string v = raw(section, key);
        char* end = nullptr;
        const long long parsed = std::strtoll(v.c_str(), &end, 10);
        if (end == v.c_str() || *end != '\0') {
            throw ConfigError(section + "." + key, "not an integer: '" + v + "'");
        }
        return parsed;
    }

    bool get_bool(const std::string& section, const std::string& key,
                  bool fallback) {
        if (!has(section, key)) return fallback;
        const std::string v = raw(section, key);
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        throw ConfigError(section + "." + key, "not a boolean: '" + v + "'");
    }

    double require_double(const std::string& section, const std::string& key) {
        if (!has(section, key)) {
            throw ConfigError(section + "." + key, "required key missing");
        }
        return get_double(section, key, 0.0);
    }

    std::int64_t require_int(const std::string& section,
                             const std::string& key) {
        if (!has(section, key)) {
            throw ConfigError(section + "." + key, "required key missing");
        }
        return get_int(section, key, 0);
    }

    void reject_unused() const {
        for (const auto& [section, entries] : doc_) {
            for (const auto& [key, entry] : entries) {
                if (!entry.used) {
                    throw ConfigError(section + "." + key, "unknown key");
                }
            }
        }
    }

private:
    Document doc_;
};

void require(bool ok, const std::string& field, const std::string& message) {
    if (!ok) {
        throw ConfigError(field, message);
    }
}

WorkloadProfile parse_workload(Reader& r) {
    WorkloadProfile p;
    const std::string preset = r.get_string("workload", "preset", "");
    if (preset == "implicit") {
        p = implicit_preset();
    } else if (preset == "explicit") {
        p = explicit_preset();
    } else if (!preset.empty()) {
        throw ConfigError("workload.preset", "unknown preset '" + preset + "'");
    }

    p.total_work_per_step = r.get_double("workload", "work_per_step_core_seconds",
                                         p.total_work_per_step);
    p.comm_base = r.get_double("workload", "comm_base_seconds", p.comm_base);
    p.comm_log_slope = r.get_double("workload", "comm_log_slope", p.comm_log_slope);
    p.imbalance_amplitude =
        r.get_double("workload", "imbalance_amplitude", p.imbalance_amplitude);
    p.noise_amplitude =
        r.get_double("workload", "noise_amplitude", p.noise_amplitude);
    p.reference_cores = static_cast<int>(
        r.get_int("workload", "reference_cores", p.reference_cores));
    p.rng_seed =
        static_cast<std::uint64_t>(r.get_int("workload", "rng_seed", 1));
    p.restart_fixed_seconds = r.get_double("workload", "restart_fixed_seconds",
                                           p.restart_fixed_seconds);
    p.restart_size_core_seconds = r.get_double(
        "workload", "restart_size_core_seconds", p.restart_size_core_seconds);
    if (!preset.empty()) {
        p.scheme_label = preset;
    }

    const std::string schedule =
        r.get_string("workload", "iteration_schedule", "");
    if (schedule == "constant") {
        p.iteration_schedule.kind = IterationSchedule::Kind::Constant;
    } else if (schedule == "heaviside_ramp") {
        p.iteration_schedule.kind = IterationSchedule::Kind::HeavisideRamp;
    } else if (!schedule.empty()) {
        throw ConfigError("workload.iteration_schedule",
                          "unknown schedule '" + schedule + "'");
    }
    p.iteration_schedule.constant_iterations =
        static_cast<long>(r.get_int("workload", "iterations_per_step",
                                    p.iteration_schedule.constant_iterations));
    p.iteration_schedule.ramp_base = static_cast<long>(r.get_int(
        "workload", "ramp_base_iterations", p.iteration_schedule.ramp_base));
    p.iteration_schedule.ramp_jump_step = r.get_int(
        "workload", "ramp_jump_step", p.iteration_schedule.ramp_jump_step);
    p.iteration_schedule.ramp_offset = static_cast<long>(r.get_int(
        "workload", "ramp_offset_iterations", p.iteration_schedule.ramp_offset));
    return p;
}

ClusterModel parse_cluster(Reader& r) {
    ClusterModel c;
    c.cores_per_node =
        static_cast<int>(r.get_int("cluster", "cores_per_node", c.cores_per_node));
    c.total_nodes =
        static_cast<int>(r.get_int("cluster", "total_nodes", c.total_nodes));
    c.contention_probability = r.get_double("cluster", "contention_probability",
                                            c.contention_probability);
    c.rng_seed = static_cast<std::uint64_t>(r.get_int("cluster", "rng_seed", 1));

    const bool fixed = r.has("cluster", "grow_latency_seconds");
    const bool multiple = r.has("cluster", "grow_latency_step_multiple");
    const bool uniform = r.has("cluster", "grow_latency_uniform_seconds");
    if (fixed + multiple + uniform > 1) {
        throw ConfigError("cluster.grow_latency_seconds",
                          "choose a single grow-latency form");
    }
    if (fixed) {
        c.grow_latency.kind = GrowLatency::Kind::FixedSeconds;
        c.grow_latency.fixed_seconds =
            r.get_double("cluster", "grow_latency_seconds", 0.0);
    } else if (uniform) {
        const std::string v = r.raw("cluster", "grow_latency_uniform_seconds");
        const auto comma = v.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("cluster.grow_latency_uniform_seconds",
                              "expected 'lo,hi'");
        }
        c.grow_latency.kind = GrowLatency::Kind::UniformSeconds;
        c.grow_latency.uniform_lo_seconds = std::strtod(v.c_str(), nullptr);
        c.grow_latency.uniform_hi_seconds =
            std::strtod(v.c_str() + comma + 1, nullptr);
    } else {
        c.grow_latency.kind = GrowLatency::Kind::StepMultiple;
        c.grow_latency.step_multiple =
            r.get_double("cluster", "grow_latency_step_multiple", 2.0);
    }
    return c;
}

} // namespace

ScenarioConfig parse_scenario(std::istream& in) {
    Reader r(read_document(in));
    ScenarioConfig sc;

    sc.controller.target_range.ce_min = r.require_double("controller", "ce_min");
    sc.controller.target_range.ce_max = r.require_double("controller", "ce_max");
    sc.controller.averaging_period =
        r.get_int("controller", "averaging_period_steps", 10);
    sc.controller.clamp.rate_of_change =
        r.get_double("controller", "rate_of_change", 2.0);
    sc.controller.clamp.min_cores =
        static_cast<int>(r.get_int("controller", "min_cores", 1));
    sc.controller.initial_cores =
        static_cast<int>(r.require_int("controller", "initial_cores"));
    sc.controller.starting_step = r.get_int("controller", "starting_step", 0);
    sc.controller.total_steps = r.require_int("controller", "total_steps");
    sc.controller.clamp.snap_to_nodes =
        r.get_bool("controller", "snap_to_nodes", false);
    sc.convergence_windows =
        static_cast<int>(r.get_int("controller", "convergence_windows", 3));

    sc.workload = parse_workload(r);
    sc.cluster = parse_cluster(r);

    sc.controller.clamp.max_cores = static_cast<int>(
        r.get_int("controller", "max_cores", sc.cluster.capacity()));
    sc.controller.clamp.node_granularity = static_cast<int>(r.get_int(
        "controller", "node_granularity_cores", sc.cluster.cores_per_node));

    sc.trace_path = r.get_string("output", "trace", "");
    sc.summary_path = r.get_string("output", "summary", "");

    r.reject_unused();
    validate_scenario(sc);
    return sc;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path, "cannot open scenario file");
    }
    return parse_scenario(in);
}

void validate_scenario(const ScenarioConfig& sc) {
    const ControllerConfig& ctl = sc.controller;
    require(ctl.target_range.ce_min > 0.0 &&
                ctl.target_range.ce_min < ctl.target_range.ce_max &&
                ctl.target_range.ce_max < 1.0,
            "controller.ce_min", "target range must satisfy 0 < min < max < 1");
    require(ctl.averaging_period >= 1, "controller.averaging_period_steps",
            "must be >= 1");
    require(ctl.clamp.rate_of_change > 1.0, "controller.rate_of_change",
            "must be > 1");
    require(ctl.clamp.min_cores >= 1, "controller.min_cores", "must be >= 1");
    require(ctl.clamp.min_cores <= ctl.clamp.max_cores, "controller.max_cores",
            "must be >= min_cores");
    require(ctl.initial_cores >= ctl.clamp.min_cores &&
                ctl.initial_cores <= ctl.clamp.max_cores,
            "controller.initial_cores", "must lie in [min_cores, max_cores]");
    require(ctl.starting_step >= 0, "controller.starting_step", "must be >= 0");
    require(ctl.total_steps >= 0, "controller.total_steps", "must be >= 0");
    require(ctl.clamp.node_granularity >= 1, "controller.node_granularity_cores",
            "must be >= 1");
    require(sc.convergence_windows >= 1, "controller.convergence_windows",
            "must be >= 1");

    const WorkloadProfile& w = sc.workload;
    require(w.total_work_per_step > 0.0, "workload.work_per_step_core_seconds",
            "must be > 0");
    require(w.comm_base >= 0.0, "workload.comm_base_seconds", "must be >= 0");
    require(w.imbalance_amplitude >= 0.0 && w.imbalance_amplitude <= 0.5,
            "workload.imbalance_amplitude", "must lie in [0, 0.5]");
    require(w.noise_amplitude >= 0.0 && w.noise_amplitude <= 0.5,
            "workload.noise_amplitude", "must lie in [0, 0.5]");
    require(w.reference_cores >= 1, "workload.reference_cores", "must be >= 1");
    if (w.iteration_schedule.kind == IterationSchedule::Kind::Constant) {
        require(w.iteration_schedule.constant_iterations >= 1,
                "workload.iterations_per_step", "must be >= 1");
    } else {
        require(w.iteration_schedule.ramp_base >= 1,
                "workload.ramp_base_iterations", "must be >= 1");
        require(w.iteration_schedule.ramp_offset +
                        w.iteration_schedule.ramp_jump_step >= 1,
                "workload.ramp_offset_iterations",
                "iteration count must stay >= 1 at the jump");
    }
    require(w.restart_fixed_seconds >= 0.0, "workload.restart_fixed_seconds",
            "must be >= 0");
    require(w.restart_size_core_seconds >= 0.0,
            "workload.restart_size_core_seconds", "must be >= 0");

    const ClusterModel& c = sc.cluster;
    require(c.cores_per_node >= 1, "cluster.cores_per_node", "must be >= 1");
    require(c.total_nodes >= 1, "cluster.total_nodes", "must be >= 1");
    require(c.capacity() >= ctl.clamp.max_cores, "cluster.total_nodes",
            "cluster capacity must cover controller.max_cores");
    require(c.contention_probability >= 0.0 && c.contention_probability < 1.0,
            "cluster.contention_probability", "must lie in [0, 1)");
    if (c.grow_latency.kind == GrowLatency::Kind::FixedSeconds) {
        require(c.grow_latency.fixed_seconds >= 0.0,
                "cluster.grow_latency_seconds", "must be >= 0");
    } else if (c.grow_latency.kind == GrowLatency::Kind::UniformSeconds) {
        require(c.grow_latency.uniform_lo_seconds >= 0.0 &&
                    c.grow_latency.uniform_hi_seconds >=
                        c.grow_latency.uniform_lo_seconds,
                "cluster.grow_latency_uniform_seconds",
                "need 0 <= lo <= hi");
    } else {
        require(c.grow_latency.step_multiple >= 0.0,
                "cluster.grow_latency_step_multiple", "must be >= 0");
    }
}

} // namespace elasim
