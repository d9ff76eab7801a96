#include "elasim/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elasim/errors.hpp"

namespace elasim {

namespace {

void check_efficiency(double ce, const char* name) {
    if (!(ce > 0.0)) {
        throw InvalidInputError(std::string(name) + " must be positive, got " +
                                std::to_string(ce));
    }
    if (ce >= 1.0) {
        throw SingularityError(std::string(name) + " = " + std::to_string(ce) +
                               ": the factor (1 - 1/CE) vanishes at CE = 1");
    }
}

} // namespace

double target_ce(const TargetRange& range) {
    return 0.5 * (range.ce_min + range.ce_max);
}

double estimate_cores(int current_cores, double ce_measured, double ce_target) {
    if (current_cores < 1) {
        throw InvalidInputError("estimate_cores: core count must be >= 1");
    }
    check_efficiency(ce_measured, "ce_measured");
    check_efficiency(ce_target, "ce_target");
    const double wanted = 1.0 - 1.0 / ce_target;
    const double measured = 1.0 - 1.0 / ce_measured;
    return current_cores * (wanted / measured);
}

double predict_ce(int current_cores, double ce_measured, double target_cores) {
    if (current_cores < 1 || !(target_cores >= 1.0)) {
        throw InvalidInputError("predict_ce: core counts must be >= 1");
    }
    check_efficiency(ce_measured, "ce_measured");
    const double ratio = target_cores / current_cores;
    const double denom = 1.0 - ratio * (1.0 - 1.0 / ce_measured);
    if (denom <= 0.0) {
        throw OutOfModelError("predict_ce: prediction not meaningful for n* = " +
                              std::to_string(target_cores));
    }
    return 1.0 / denom;
}

int clamp_and_round(double estimated_cores, int current_cores,
                    const ClampPolicy& policy) {
    if (!(estimated_cores > 0.0)) {
        throw InvalidInputError("clamp_and_round: estimate must be positive");
    }
    long long n = std::llround(estimated_cores);

    // Rate clamp first, bounds rounded outward so the window never excludes
    // the current count.
    const long long rate_lo = static_cast<long long>(
        std::floor(current_cores / policy.rate_of_change));
    const long long rate_hi = static_cast<long long>(
        std::ceil(current_cores * policy.rate_of_change));
    n = std::clamp(n, rate_lo, rate_hi);

    n = std::clamp(n, static_cast<long long>(policy.min_cores),
                   static_cast<long long>(policy.max_cores));

    if (policy.snap_to_nodes && policy.node_granularity > 1) {
        n = (n / policy.node_granularity) * policy.node_granularity;
        if (n == 0) {
            n = policy.node_granularity;
        }
    }
    return static_cast<int>(std::max(n, 1LL));
}

} // namespace elasim
