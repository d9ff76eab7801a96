#ifndef ELASIM_CONFIG_HPP
#define ELASIM_CONFIG_HPP

#include <iosfwd>
#include <string>

#include "elasim/controller.hpp"
#include "elasim/scheduler.hpp"
#include "elasim/workload.hpp"

namespace elasim {

// Everything one simulated run needs, loaded from a sectioned key = value
// scenario file (sections [controller], [workload], [cluster], [output]).
struct ScenarioConfig {
    ControllerConfig controller;
    WorkloadProfile workload;
    ClusterModel cluster;
    int convergence_windows = 3; // K in-range windows that define convergence
    std::string trace_path;
    std::string summary_path;
};

// Parses and validates a scenario. Throws ConfigError with the dotted field
// path of the offending key.
ScenarioConfig load_scenario(const std::string& path);
ScenarioConfig parse_scenario(std::istream& in);

// Re-checks the cross-field invariants of an already-built config.
void validate_scenario(const ScenarioConfig& config);

} // namespace elasim

#endif
