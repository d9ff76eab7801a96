#ifndef ELASIM_ESTIMATOR_HPP
#define ELASIM_ESTIMATOR_HPP

namespace elasim {

// User-prescribed closed interval of acceptable communication efficiency,
// 0 < ce_min < ce_max < 1.
struct TargetRange {
    double ce_min = 0.0;
    double ce_max = 0.0;

    bool contains(double ce) const { return ce >= ce_min && ce <= ce_max; }
};

// Limits applied to a raw core estimate before it becomes a request.
struct ClampPolicy {
    double rate_of_change = 2.0; // r > 1: each resize stays within [n/r, n*r]
    int min_cores = 1;
    int max_cores = 1;
    int node_granularity = 1;
    bool snap_to_nodes = false;
};

// Midpoint of the target range, the efficiency the estimator aims for.
double target_ce(const TargetRange& range);

// Closed-form target core count
//   n* = n * (1 - 1/ce_target) / (1 - 1/ce_measured),
// returned un-rounded and un-clamped. Both efficiencies must lie in (0,1):
// at CE = 1 the factor (1 - 1/CE) vanishes and the estimate is singular.
double estimate_cores(int current_cores, double ce_measured, double ce_target);

// Inverse of estimate_cores: the efficiency the model predicts when moving
// from current_cores (measured ce_measured) to target_cores,
//   CE* = [1 - (n*/n) * (1 - 1/ce_measured)]^-1.
// target_cores is real so the algebraic inverse holds without rounding.
double predict_ce(int current_cores, double ce_measured, double target_cores);

// Rounds a raw estimate half-away-from-zero, then clamps it to the rate
// window [current/r, current*r] (bounds rounded outward), then to
// [min_cores, max_cores], then optionally snaps down to a node multiple.
// Result is always >= 1.
int clamp_and_round(double estimated_cores, int current_cores,
                    const ClampPolicy& policy);

} // namespace elasim

#endif
