#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "treeldp/time_grid.hpp"
#include "treeldp/walk.hpp"

namespace treeldp {

/// Cartesian product grid in R^j, one sorted axis per checkpoint. Flat
/// indices run in lexicographic order with the first coordinate slowest, so
/// "smallest point" ties resolve deterministically.
struct LambdaGrid {
    std::vector<std::vector<double>> axes;

    static LambdaGrid uniform(std::size_t j, double lo = -8.0, double hi = 8.0,
                              std::size_t points = 65);

    std::size_t dim() const { return axes.size(); }
    std::size_t num_points() const;
    std::vector<std::size_t> multi_index(std::size_t flat) const;
    std::vector<double> point(std::size_t flat) const;
};

/// Scaled checkpointed log-MGF values: for each n in n_values,
/// values_by_n[.][p] = (1/n) log E exp(sum_i lambda_i l(Y_[n t_i])) at grid
/// point p, plus the extrapolated large-n limit with a conservative
/// halfwidth. The extrapolation model is c + a/n (recorded in metadata; no
/// sharper rate is available).
struct MgfTable {
    TimeGrid J{std::vector<double>{1.0}};
    LambdaGrid lambda_grid;
    std::vector<int> n_values;
    std::vector<std::vector<double>> values_by_n;  // aligned with n_values
    std::vector<double> extrapolated;
    std::vector<double> halfwidth;
    int d = 0;
    std::string extrapolation_model = "c + a/n";

    /// Worst violation of midpoint convexity along grid lines, over all
    /// value rows and the extrapolated row. Should be <= 1e-9.
    double max_convexity_violation() const;

    void validate() const;
};

/// (1/n) log E[exp(sum_i lambda_i l(Y_[n t_i]))] for the uniform walk,
/// computed exactly by propagating the distance-chain kernel with per-step
/// max rescaling in log space. Identically 0 when all weights vanish.
double checkpointed_mgf_simple(int d, const TimeGrid& J, std::span<const double> lambda, int n);

/// Same quantity for arbitrary mu by summing weight * exp(<lambda, profile>)
/// over all of S^n (log-sum-exp accumulation). Subject to the enumeration cap.
double checkpointed_mgf_bruteforce(const StepDistribution& mu, const TimeGrid& J,
                                   std::span<const double> lambda, int n,
                                   std::int64_t cap = kDefaultEnumerationCap);

/// Richardson-style limit from the last two values under the c + a/n model;
/// halfwidth is |last - previous|. Requires at least 4 values at increasing n.
std::pair<double, double> extrapolate_limit(const std::vector<int>& n_values,
                                            const std::vector<double>& values);

/// Evaluates the scaled log-MGF of the uniform walk on a full lambda grid
/// for each n in n_list (parallel over grid points) and extrapolates.
MgfTable build_mgf_table_simple(int d, const TimeGrid& J, const LambdaGrid& grid,
                                std::vector<int> n_list, unsigned threads = 0);

}  // namespace treeldp
