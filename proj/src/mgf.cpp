#include "treeldp/mgf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "treeldp/errors.hpp"
#include "treeldp/numeric.hpp"

namespace treeldp {

LambdaGrid LambdaGrid::uniform(std::size_t j, double lo, double hi, std::size_t points) {
    if (j == 0 || points < 2 || !(hi > lo))
        throw std::invalid_argument("LambdaGrid: bad grid request");
    std::vector<double> axis(points);
    for (std::size_t i = 0; i < points; ++i) {
        axis[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    // keep an exact zero node when the range straddles it symmetrically
    for (double& v : axis) {
        if (std::abs(v) < 1e-12) v = 0.0;
    }
    LambdaGrid g;
    g.axes.assign(j, axis);
    return g;
}

std::size_t LambdaGrid::num_points() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.size();
    return n;
}

std::vector<std::size_t> LambdaGrid::multi_index(std::size_t flat) const {
    std::vector<std::size_t> idx(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
        idx[k] = flat % axes[k].size();
        flat /= axes[k].size();
    }
    return idx;
}

std::vector<double> LambdaGrid::point(std::size_t flat) const {
    auto idx = multi_index(flat);
    std::vector<double> p(axes.size());
    for (std::size_t k = 0; k < axes.size(); ++k) p[k] = axes[k][idx[k]];
    return p;
}

namespace {

// Worst midpoint-convexity violation of one value row along every axis line.
double row_convexity_violation(const LambdaGrid& grid, const std::vector<double>& values) {
    double worst = 0.0;
    const std::size_t total = grid.num_points();
    for (std::size_t flat = 0; flat < total; ++flat) {
        auto idx = grid.multi_index(flat);
        for (std::size_t ax = 0; ax < grid.dim(); ++ax) {
            if (idx[ax] == 0 || idx[ax] + 1 >= grid.axes[ax].size()) continue;
            // stride of one step along axis ax
            std::size_t stride = 1;
            for (std::size_t k = ax + 1; k < grid.dim(); ++k) stride *= grid.axes[k].size();
            double mid = values[flat];
            double lo = values[flat - stride];
            double hi = values[flat + stride];
            worst = std::max(worst, mid - 0.5 * (lo + hi));
        }
    }
    return worst;
}

}  // namespace

double MgfTable::max_convexity_violation() const {
    double worst = 0.0;
    for (const auto& row : values_by_n) worst = std::max(worst, row_convexity_violation(lambda_grid, row));
    if (!extrapolated.empty()) worst = std::max(worst, row_convexity_violation(lambda_grid, extrapolated));
    return worst;
}

void MgfTable::validate() const {
    const std::size_t total = lambda_grid.num_points();
    if (lambda_grid.dim() != J.size()) throw std::logic_error("MgfTable: grid/J dim mismatch");
    if (values_by_n.size() != n_values.size()) throw std::logic_error("MgfTable: row count mismatch");
    for (const auto& row : values_by_n) {
        if (row.size() != total) throw std::logic_error("MgfTable: row size mismatch");
        for (double v : row) {
            if (!std::isfinite(v)) throw std::logic_error("MgfTable: non-finite value");
        }
    }
    for (std::size_t p = 0; p < total; ++p) {
        auto pt = lambda_grid.point(p);
        bool zero = std::all_of(pt.begin(), pt.end(), [](double l) { return l == 0.0; });
        if (!zero) continue;
        for (const auto& row : values_by_n) {
            if (row[p] != 0.0) throw std::logic_error("MgfTable: value at lambda = 0 must be 0");
        }
    }
}

double checkpointed_mgf_simple(int d, const TimeGrid& J, std::span<const double> lambda, int n) {
    if (d < 3) throw std::invalid_argument("checkpointed_mgf_simple: d must be >= 3");
    if (n < 1) throw std::invalid_argument("checkpointed_mgf_simple: n must be >= 1");
    if (lambda.size() != J.size())
        throw std::invalid_argument("checkpointed_mgf_simple: lambda/J size mismatch");
    if (std::all_of(lambda.begin(), lambda.end(), [](double l) { return l == 0.0; })) return 0.0;

    const double up = static_cast<double>(d - 1) / d;
    const double down = 1.0 / d;
    std::vector<int> cp = J.indices(n);

    std::vector<double> cur(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> next(static_cast<std::size_t>(n) + 1, 0.0);
    cur[0] = 1.0;
    double log_scale = 0.0;

    // e^{lambda k} spans far beyond double range for n lambda ~ 10^3, so a
    // checkpoint reweights in log space and renormalizes to max weight 1;
    // entries more than ~700 nats below the peak flush to zero harmlessly.
    auto apply_checkpoints = [&](int step, int support) {
        for (std::size_t i = 0; i < cp.size(); ++i) {
            if (cp[i] != step) continue;
            if (lambda[i] == 0.0) continue;
            double peak = -kInf;
            for (int k = 0; k <= support; ++k) {
                double w = cur[static_cast<std::size_t>(k)];
                if (w > 0.0) peak = std::max(peak, std::log(w) + lambda[i] * k);
            }
            for (int k = 0; k <= support; ++k) {
                double w = cur[static_cast<std::size_t>(k)];
                cur[static_cast<std::size_t>(k)] =
                    w > 0.0 ? std::exp(std::log(w) + lambda[i] * k - peak) : 0.0;
            }
            log_scale += peak;
        }
    };

    apply_checkpoints(0, 0);
    for (int step = 1; step <= n; ++step) {
        const int support = step - 1;
        for (int k = 0; k <= support + 1; ++k) next[static_cast<std::size_t>(k)] = 0.0;
        for (int k = 0; k <= support; ++k) {
            double w = cur[static_cast<std::size_t>(k)];
            if (w == 0.0) continue;
            if (k == 0) {
                next[1] += w;
            } else {
                next[static_cast<std::size_t>(k + 1)] += w * up;
                next[static_cast<std::size_t>(k - 1)] += w * down;
            }
        }
        cur.swap(next);
        apply_checkpoints(step, step);
        // max-rescale so weights survive e^{n lambda} growth
        double m = *std::max_element(cur.begin(), cur.begin() + step + 1);
        if (m > 0.0 && (m > 1e100 || m < 1e-100)) {
            for (int k = 0; k <= step; ++k) cur[static_cast<std::size_t>(k)] /= m;
            log_scale += std::log(m);
        }
    }
    double total = kahan_sum(std::span<const double>(cur.data(), static_cast<std::size_t>(n) + 1));
    return (std::log(total) + log_scale) / n;
}

double checkpointed_mgf_bruteforce(const StepDistribution& mu, const TimeGrid& J,
                                   std::span<const double> lambda, int n, std::int64_t cap) {
    if (n < 1) throw std::invalid_argument("checkpointed_mgf_bruteforce: n must be >= 1");
    if (lambda.size() != J.size())
        throw std::invalid_argument("checkpointed_mgf_bruteforce: lambda/J size mismatch");
    if (std::all_of(lambda.begin(), lambda.end(), [](double l) { return l == 0.0; })) return 0.0;

    std::vector<int> cp = J.indices(n);
    std::vector<double> terms;
    enumerate_paths(
        mu, n,
        [&](const LatticePath& path, double w) {
            double t = std::log(w);
            for (std::size_t i = 0; i < cp.size(); ++i)
                t += lambda[i] * path.prefix_lengths[static_cast<std::size_t>(cp[i])];
            terms.push_back(t);
        },
        cap);
    return log_sum_exp(terms) / n;
}

std::pair<double, double> extrapolate_limit(const std::vector<int>& n_values,
                                            const std::vector<double>& values) {
    if (n_values.size() != values.size())
        throw std::invalid_argument("extrapolate_limit: size mismatch");
    if (n_values.size() < 4)
        throw insufficient_data_error("extrapolate_limit: need values at >= 4 increasing n");
    for (std::size_t i = 1; i < n_values.size(); ++i) {
        if (n_values[i] <= n_values[i - 1])
            throw std::invalid_argument("extrapolate_limit: n_values must be increasing");
    }
    const std::size_t m = values.size();
    double n1 = n_values[m - 2], n2 = n_values[m - 1];
    double v1 = values[m - 2], v2 = values[m - 1];
    double estimate = (n2 * v2 - n1 * v1) / (n2 - n1);
    double halfwidth = std::abs(v2 - v1);
    return {estimate, halfwidth};
}

MgfTable build_mgf_table_simple(int d, const TimeGrid& J, const LambdaGrid& grid,
                                std::vector<int> n_list, unsigned threads) {
    if (grid.dim() != J.size())
        throw std::invalid_argument("build_mgf_table_simple: grid/J dim mismatch");
    std::sort(n_list.begin(), n_list.end());
    MgfTable table;
    table.d = d;
    table.J = J;
    table.lambda_grid = grid;
    table.n_values = n_list;
    const std::size_t total = grid.num_points();
    table.values_by_n.assign(n_list.size(), std::vector<double>(total, 0.0));
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        int n = n_list[ni];
        auto& row = table.values_by_n[ni];
        parallel_for(
            total,
            [&](std::size_t p) {
                auto lambda = grid.point(p);
                row[p] = checkpointed_mgf_simple(d, J, lambda, n);
            },
            threads);
    }
    table.extrapolated.resize(total);
    table.halfwidth.resize(total);
    std::vector<double> col(n_list.size());
    for (std::size_t p = 0; p < total; ++p) {
        for (std::size_t ni = 0; ni < n_list.size(); ++ni) col[ni] = table.values_by_n[ni][p];
        auto [est, hw] = extrapolate_limit(table.n_values, col);
        table.extrapolated[p] = est;
        table.halfwidth[p] = hw;
    }
    return table;
}

}  // namespace treeldp
