#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <doctest.h>

#include "elasim/errors.hpp"
#include "elasim/runner.hpp"

using namespace elasim;

namespace {

// Noiseless Test-1-like scenario that converges quickly.
ScenarioConfig small_scenario() {
    ScenarioConfig sc;
    sc.controller.target_range = {0.9, 0.92};
    sc.controller.averaging_period = 10;
    sc.controller.clamp.rate_of_change = 2.0;
    sc.controller.clamp.min_cores = 15;
    sc.controller.clamp.max_cores = 240;
    sc.controller.initial_cores = 15;
    sc.controller.starting_step = 5;
    sc.controller.total_steps = 100;
    sc.workload = implicit_preset();
    sc.workload.imbalance_amplitude = 0.0;
    sc.workload.noise_amplitude = 0.0;
    sc.workload.rng_seed = 11;
    sc.cluster.cores_per_node = 15;
    sc.cluster.total_nodes = 16;
    sc.cluster.rng_seed = 12;
    return sc;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

TEST_CASE("zero steps yield an empty, non-converged run") {
    ScenarioConfig sc = small_scenario();
    sc.controller.total_steps = 0;
    const auto result = run_scenario(sc);
    CHECK(result.trace.empty());
    CHECK_FALSE(result.summary.converged);
    CHECK(result.summary.optimization_steps == 0);
}

TEST_CASE("a noiseless run converges into the target range") {
    const auto result = run_scenario(small_scenario());
    CHECK(result.summary.converged);
    CHECK(result.summary.optimization_steps >= 1);
    CHECK(result.summary.final_cores > 15);
    CHECK(result.summary.final_window_ce >= 0.9);
    CHECK(result.summary.final_window_ce <= 0.92);
}

TEST_CASE("every step is traced and grants match optimization steps") {
    const ScenarioConfig sc = small_scenario();
    const auto result = run_scenario(sc);

    std::set<std::int64_t> steps;
    int grants = 0;
    int restarts = 0;
    for (const auto& rec : result.trace) {
        steps.insert(rec.step);
        grants += rec.event == TraceEvent::Granted;
        restarts += rec.event == TraceEvent::Restarted;
    }
    CHECK(static_cast<std::int64_t>(steps.size()) == sc.controller.total_steps);
    CHECK(*steps.begin() == 0);
    CHECK(*steps.rbegin() == sc.controller.total_steps - 1);
    CHECK(grants == result.summary.optimization_steps);
    CHECK(restarts == grants);
}

TEST_CASE("window metrics appear exactly at window boundaries") {
    const auto result = run_scenario(small_scenario());
    for (const auto& rec : result.trace) {
        CHECK(rec.window_ce.has_value() ==
              (rec.event == TraceEvent::WindowEvaluated));
        CHECK(rec.lb.has_value() == rec.window_ce.has_value());
        CHECK(rec.pe.has_value() == rec.window_ce.has_value());
    }
}

TEST_CASE("simulated time is monotone and core hours are bounded") {
    const ScenarioConfig sc = small_scenario();
    const auto result = run_scenario(sc);
    double prev = 0.0;
    for (const auto& rec : result.trace) {
        CHECK(rec.simulated_time >= prev);
        prev = rec.simulated_time;
        CHECK(rec.cores >= sc.controller.clamp.min_cores);
        CHECK(rec.cores <= sc.controller.clamp.max_cores);
    }
    const double ceiling = sc.controller.clamp.max_cores * prev;
    CHECK(result.summary.core_hours <= ceiling);
    CHECK(result.summary.core_hours > 0.0);
}

TEST_CASE("identical seeds produce byte-identical artifacts") {
    ScenarioConfig sc = small_scenario();
    sc.workload.imbalance_amplitude = 0.05;
    sc.workload.noise_amplitude = 0.02;
    sc.trace_path = "runner_det_a.csv";
    sc.summary_path = "runner_det_a.txt";
    run_scenario(sc);
    sc.trace_path = "runner_det_b.csv";
    sc.summary_path = "runner_det_b.txt";
    run_scenario(sc);

    const std::string trace_a = slurp("runner_det_a.csv");
    CHECK(!trace_a.empty());
    CHECK(trace_a == slurp("runner_det_b.csv"));
    CHECK(slurp("runner_det_a.txt") == slurp("runner_det_b.txt"));

    for (const char* path : {"runner_det_a.csv", "runner_det_b.csv",
                             "runner_det_a.txt", "runner_det_b.txt"}) {
        std::remove(path);
    }
}

TEST_CASE("written summary matches the in-memory one") {
    ScenarioConfig sc = small_scenario();
    sc.trace_path = "runner_roundtrip.csv";
    sc.summary_path = "runner_roundtrip.txt";
    const auto result = run_scenario(sc);
    CHECK(slurp("runner_roundtrip.txt") == format_summary(result.summary));

    // Re-reading the written trace reproduces the summary exactly.
    std::ifstream in("runner_roundtrip.csv");
    const auto reread = read_trace_csv(in);
    const auto again =
        summarize(reread, sc.controller, sc.convergence_windows);
    CHECK(format_summary(again) == format_summary(result.summary));

    std::remove("runner_roundtrip.csv");
    std::remove("runner_roundtrip.txt");
}

TEST_CASE("sweeps can freeze a drifting schedule") {
    WorkloadProfile p = implicit_preset();
    p.iteration_schedule.kind = IterationSchedule::Kind::HeavisideRamp;
    const auto early = run_sweep(p, {42}, 5, 10, true);
    const auto late = run_sweep(p, {42}, 5, 80, true);
    // More solver iterations mean heavier communication, lower CE.
    CHECK(late.front().metrics.ce < early.front().metrics.ce);
}

TEST_CASE("noiseless sweeps zero the stochastic amplitudes") {
    WorkloadProfile p = implicit_preset();
    const auto noisy = run_sweep(p, {30}, 4, -1, false);
    const auto clean_a = run_sweep(p, {30}, 4, -1, true);
    const auto clean_b = run_sweep(p, {30}, 4, -1, true);
    CHECK(clean_a.front().metrics.ce == clean_b.front().metrics.ce);
    CHECK(clean_a.front().metrics.lb == doctest::Approx(1.0));
    CHECK(noisy.front().metrics.lb < 1.0);
}
