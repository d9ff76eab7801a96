#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elasim/errors.hpp"
#include "elasim/runner.hpp"

namespace {

using namespace elasim;

std::vector<int> parse_core_list(const std::string& csv) {
    std::vector<int> cores;
    std::string cur;
    for (std::size_t i = 0; i <= csv.size(); ++i) {
        if (i == csv.size() || csv[i] == ',') {
            if (!cur.empty()) {
                std::size_t used = 0;
                const int n = std::stoi(cur, &used);
                if (used != cur.size()) {
                    throw InvalidInputError("not a core count: '" + cur + "'");
                }
                cores.push_back(n);
                cur.clear();
            }
        } else {
            cur.push_back(csv[i]);
        }
    }
    return cores;
}

int cmd_run(const std::string& config_path, const std::string& trace_path,
            const std::string& summary_path, std::int64_t seed, bool has_seed) {
    ScenarioConfig config = load_scenario(config_path);
    if (!trace_path.empty()) config.trace_path = trace_path;
    if (!summary_path.empty()) config.summary_path = summary_path;
    if (has_seed) {
        config.workload.rng_seed = static_cast<std::uint64_t>(seed);
        config.cluster.rng_seed = static_cast<std::uint64_t>(seed) + 1;
    }

    const RunResult result = run_scenario(config);
    std::cout << format_summary(result.summary);
    return result.summary.converged ? 0 : 2;
}

int cmd_estimate(int cores, double ce, double ce_min, double ce_max, double rate,
                 int min_cores, int max_cores) {
    const TargetRange range{ce_min, ce_max};
    if (!(range.ce_min > 0.0 && range.ce_min < range.ce_max && range.ce_max < 1.0)) {
        throw InvalidInputError("target range must satisfy 0 < min < max < 1");
    }
    const double goal = target_ce(range);

    double measured = ce;
    if (measured >= 1.0) {
        measured = 1.0 - 1e-9;
        std::cout << "note = measured CE >= 1 clamped to "
                  << format_double(measured) << "\n";
    }
    if (range.contains(ce)) {
        std::cout << "note = measured CE already inside the target range\n";
    }

    ClampPolicy policy;
    policy.rate_of_change = rate;
    policy.min_cores = min_cores;
    policy.max_cores = max_cores;

    const double raw = estimate_cores(cores, measured, goal);
    const int clamped = clamp_and_round(raw, cores, policy);
    std::cout << "target_ce = " << format_double(goal) << "\n"
              << "raw_estimate = " << format_double(raw) << "\n"
              << "clamped_cores = " << clamped << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& cores_csv,
              std::int64_t steps_per_point, std::int64_t at_step, bool noiseless,
              const std::string& anchors_csv, const std::string& out_path) {
    const ScenarioConfig config = load_scenario(config_path);
    const std::vector<int> cores = parse_core_list(cores_csv);
    if (cores.empty()) {
        throw InvalidInputError("sweep: --cores list is empty");
    }

    const auto points =
        run_sweep(config.workload, cores, steps_per_point, at_step, noiseless);

    // Prediction curves are anchored at a reference core count: the model's
    // CE(n) as seen from that point's measured efficiency.
    const std::vector<int> anchors = parse_core_list(anchors_csv);
    std::map<int, double> anchor_ce;
    for (int a : anchors) {
        const auto probe =
            run_sweep(config.workload, {a}, steps_per_point, at_step, noiseless);
        anchor_ce[a] = probe.front().metrics.ce;
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            throw InvalidInputError("sweep: cannot open '" + out_path + "'");
        }
        out = &file;
    }

    *out << "n,ce,lb,pe";
    for (int a : anchors) {
        *out << ",pred_from_" << a;
    }
    *out << "\n";
    for (const SweepPoint& point : points) {
        *out << point.cores << ',' << format_double(point.metrics.ce) << ','
             << format_double(point.metrics.lb) << ','
             << format_double(point.metrics.pe);
        for (int a : anchors) {
            *out << ',' << format_double(predict_ce(a, anchor_ce[a], point.cores));
        }
        *out << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elastic-allocation simulator: runs a feedback loop that "
                 "keeps a parallel job's communication efficiency inside a "
                 "prescribed range"};
    app.require_subcommand(1);

    std::string config_path, trace_path, summary_path;
    std::int64_t seed = 0;
    auto* run = app.add_subcommand("run", "run a scenario file");
    run->add_option("config", config_path, "scenario file")->required();
    run->add_option("--trace", trace_path, "trace CSV output path");
    run->add_option("--summary", summary_path, "summary output path");
    auto* seed_opt = run->add_option("--seed", seed, "override the RNG seeds");

    int est_cores = 0, est_min_cores = 1, est_max_cores = 1 << 20;
    double est_ce = 0.0, est_ce_min = 0.0, est_ce_max = 0.0, est_rate = 2.0;
    auto* estimate = app.add_subcommand("estimate", "one-shot core estimate");
    estimate->add_option("--cores", est_cores, "current core count")->required();
    estimate->add_option("--ce", est_ce, "measured communication efficiency")
        ->required();
    estimate->add_option("--ce-min", est_ce_min, "target range lower bound")
        ->required();
    estimate->add_option("--ce-max", est_ce_max, "target range upper bound")
        ->required();
    estimate->add_option("--rate", est_rate, "rate-of-change clamp r");
    estimate->add_option("--min-cores", est_min_cores, "minimum core count");
    estimate->add_option("--max-cores", est_max_cores, "maximum core count");

    std::string sweep_config, sweep_cores, sweep_anchors, sweep_out;
    std::int64_t sweep_steps = 10, sweep_at_step = -1;
    bool sweep_noiseless = false;
    auto* sweep = app.add_subcommand("sweep", "CE/LB/PE across core counts");
    sweep->add_option("config", sweep_config, "scenario file")->required();
    sweep->add_option("--cores", sweep_cores, "comma-separated core counts")
        ->required();
    sweep->add_option("--steps-per-point", sweep_steps, "steps per core count");
    sweep->add_option("--at-step", sweep_at_step,
                      "freeze the iteration schedule at this step");
    sweep->add_flag("--noiseless", sweep_noiseless,
                    "zero imbalance and noise amplitudes");
    sweep->add_option("--anchors", sweep_anchors,
                      "emit prediction curves anchored at these core counts");
    sweep->add_option("--out", sweep_out, "write CSV here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(config_path, trace_path, summary_path, seed,
                           seed_opt->count() > 0);
        }
        if (estimate->parsed()) {
            return cmd_estimate(est_cores, est_ce, est_ce_min, est_ce_max,
                                est_rate, est_min_cores, est_max_cores);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_config, sweep_cores, sweep_steps,
                             sweep_at_step, sweep_noiseless, sweep_anchors,
                             sweep_out);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
