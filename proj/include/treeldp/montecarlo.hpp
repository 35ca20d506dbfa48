#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treeldp/box.hpp"
#include "treeldp/walk.hpp"

namespace treeldp {

/// Simulation request. If tilt is set, mu must be uniform: the exponential
/// change of measure is defined through the distance chain, which represents
/// l(Y_n) only for the uniform step law.
struct McConfig {
    StepDistribution mu;
    int n = 0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    std::optional<double> tilt;
};

/// Box-probability estimates, one slot per n. rate = -(1/n) log p with a
/// delta-method standard error. Slots with fewer than 30 hits carry NaN
/// rates and the "insufficient" flag; tilted slots whose relative standard
/// error exceeds 1/2 are flagged "high-variance".
struct RateEstimate {
    BoxSpec point;
    std::vector<int> n_values;
    std::vector<double> prob;
    std::vector<double> prob_stderr;
    std::vector<double> rate;
    std::vector<double> rate_stderr;
    std::vector<std::int64_t> hits;
    std::vector<std::string> flags;  // "ok" | "insufficient" | "high-variance"
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    std::optional<double> tilt;
    double stabilization = 0.0;
    bool stabilization_defined = false;
};

/// Crude Monte Carlo estimate of the box probability and its decay rate.
/// Deterministic for a given config (fixed block decomposition, per-block
/// seeds, in-order merge).
RateEstimate estimate_box(const McConfig& cfg, const BoxSpec& spec);

/// Importance-sampled estimate under the exponentially tilted distance
/// chain (up-weight prop. to ((d-1)/d)e^theta, down-weight to (1/d)e^-theta,
/// state 0 forced up). Unbiased via accumulated likelihood ratios. Requires
/// uniform mu and the endpoint grid J = (1.0).
RateEstimate tilted_estimate(const McConfig& cfg, const BoxSpec& spec);

/// Runs the configured estimator over a strictly increasing n list and adds
/// the stabilization diagnostic: max pairwise difference among the last
/// (up to) three rate estimates. Undefined (flagged) with fewer than two
/// usable values.
RateEstimate convergence_sweep(const McConfig& cfg, const BoxSpec& spec,
                               const std::vector<int>& n_list);

}  // namespace treeldp
