#include <sstream>
#include <string>

#include <doctest.h>

#include "elasim/config.hpp"
#include "elasim/errors.hpp"

using namespace elasim;

namespace {

const char* kBaseConfig = R"(
# Minimal valid scenario
[controller]
ce_min = 0.9
ce_max = 0.92
averaging_period_steps = 10
rate_of_change = 2
min_cores = 15
max_cores = 240
initial_cores = 15
starting_step = 5
total_steps = 100

[workload]
preset = implicit
rng_seed = 1

[cluster]
cores_per_node = 15
total_nodes = 16
)";

ScenarioConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_scenario(in);
}

std::string base_with(const std::string& extra) {
    return std::string(kBaseConfig) + extra;
}

std::string expect_field_error(const std::string& text) {
    try {
        parse(text);
    } catch (const ConfigError& e) {
        return e.field;
    }
    return "";
}

} // namespace

TEST_CASE("a full scenario parses with preset defaults") {
    const auto sc = parse(kBaseConfig);
    CHECK(sc.controller.target_range.ce_min == doctest::Approx(0.9));
    CHECK(sc.controller.target_range.ce_max == doctest::Approx(0.92));
    CHECK(sc.controller.averaging_period == 10);
    CHECK(sc.controller.clamp.rate_of_change == doctest::Approx(2.0));
    CHECK(sc.controller.clamp.min_cores == 15);
    CHECK(sc.controller.clamp.max_cores == 240);
    CHECK(sc.controller.initial_cores == 15);
    CHECK(sc.controller.starting_step == 5);
    CHECK(sc.controller.total_steps == 100);
    CHECK_FALSE(sc.controller.clamp.snap_to_nodes);
    CHECK(sc.convergence_windows == 3);

    // Implicit preset values flow through.
    CHECK(sc.workload.scheme_label == "implicit");
    CHECK(sc.workload.total_work_per_step == doctest::Approx(150.0));
    CHECK(sc.workload.comm_base == doctest::Approx(1.0 / 98.0));
    CHECK(sc.workload.iteration_schedule.kind ==
          IterationSchedule::Kind::Constant);

    CHECK(sc.cluster.capacity() == 240);
    CHECK(sc.cluster.grow_latency.kind == GrowLatency::Kind::StepMultiple);
}

TEST_CASE("preset keys can be overridden") {
    const auto sc = parse(base_with("[workload]\n"
                                    "noise_amplitude = 0\n"
                                    "imbalance_amplitude = 0\n"
                                    "iterations_per_step = 60\n"));
    CHECK(sc.workload.noise_amplitude == 0.0);
    CHECK(sc.workload.imbalance_amplitude == 0.0);
    CHECK(sc.workload.iteration_schedule.constant_iterations == 60);
    CHECK(sc.workload.comm_base == doctest::Approx(1.0 / 98.0));
}

TEST_CASE("heaviside schedule is selectable") {
    const auto sc = parse(base_with("[workload]\n"
                                    "iteration_schedule = heaviside_ramp\n"));
    CHECK(sc.workload.iteration_schedule.kind ==
          IterationSchedule::Kind::HeavisideRamp);
    CHECK(sc.workload.iteration_schedule.ramp_base == 20);
    CHECK(sc.workload.iteration_schedule.ramp_jump_step == 50);
    CHECK(sc.workload.iteration_schedule.ramp_offset == 10);
}

TEST_CASE("grow latency forms") {
    auto sc = parse(base_with("[cluster]\ngrow_latency_seconds = 7.5\n"));
    CHECK(sc.cluster.grow_latency.kind == GrowLatency::Kind::FixedSeconds);
    CHECK(sc.cluster.grow_latency.fixed_seconds == doctest::Approx(7.5));

    sc = parse(base_with("[cluster]\ngrow_latency_uniform_seconds = 2,6\n"));
    CHECK(sc.cluster.grow_latency.kind == GrowLatency::Kind::UniformSeconds);
    CHECK(sc.cluster.grow_latency.uniform_lo_seconds == doctest::Approx(2.0));
    CHECK(sc.cluster.grow_latency.uniform_hi_seconds == doctest::Approx(6.0));

    CHECK(expect_field_error(
              base_with("[cluster]\ngrow_latency_seconds = 1\n"
                        "grow_latency_step_multiple = 2\n")) ==
          "cluster.grow_latency_seconds");
}

TEST_CASE("validation errors carry field paths") {
    CHECK(expect_field_error(base_with("[controller]\nce_min = 0.95\n")) ==
          "controller.ce_min");
    CHECK(expect_field_error(base_with("[controller]\nrate_of_change = 1\n")) ==
          "controller.rate_of_change");
    CHECK(expect_field_error(base_with("[controller]\ninitial_cores = 10\n")) ==
          "controller.initial_cores");
    CHECK(expect_field_error(base_with("[controller]\ntotal_steps = -1\n")) ==
          "controller.total_steps");
    CHECK(expect_field_error(base_with("[workload]\nnoise_amplitude = 0.7\n")) ==
          "workload.noise_amplitude");
    CHECK(expect_field_error(base_with("[cluster]\ntotal_nodes = 2\n")) ==
          "cluster.total_nodes"); // capacity below max_cores
    CHECK(expect_field_error(base_with("[controller]\nmystery_knob = 1\n")) ==
          "controller.mystery_knob");
}

TEST_CASE("missing required keys are reported") {
    const char* no_ce = R"(
[controller]
initial_cores = 15
total_steps = 10
)";
    CHECK(expect_field_error(no_ce) == "controller.ce_min");
}

TEST_CASE("type errors are reported") {
    CHECK(expect_field_error(base_with("[controller]\ntotal_steps = soon\n")) ==
          "controller.total_steps");
    CHECK(expect_field_error(base_with("[workload]\npreset = quantum\n")) ==
          "workload.preset");
}

TEST_CASE("output paths are read from the file") {
    const auto sc = parse(base_with("[output]\n"
                                    "trace = /tmp/t.csv\n"
                                    "summary = /tmp/s.txt\n"));
    CHECK(sc.trace_path == "/tmp/t.csv");
    CHECK(sc.summary_path == "/tmp/s.txt");
}
