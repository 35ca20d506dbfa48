#include "treeldp/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "treeldp/errors.hpp"
#include "treeldp/numeric.hpp"

namespace treeldp {

std::size_t RateGrid::num_points() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.size();
    return n;
}

std::vector<std::size_t> RateGrid::multi_index(std::size_t flat) const {
    std::vector<std::size_t> idx(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
        idx[k] = flat % axes[k].size();
        flat /= axes[k].size();
    }
    return idx;
}

std::vector<double> RateGrid::point(std::size_t flat) const {
    auto idx = multi_index(flat);
    std::vector<double> p(axes.size());
    for (std::size_t k = 0; k < axes.size(); ++k) p[k] = axes[k][idx[k]];
    return p;
}

double RateGrid::value_at(std::span<const double> x) const {
    if (x.size() != axes.size()) throw std::invalid_argument("RateGrid::value_at: dim mismatch");
    std::vector<std::size_t> lo(axes.size());
    std::vector<double> frac(axes.size());
    for (std::size_t k = 0; k < axes.size(); ++k) {
        const auto& a = axes[k];
        if (x[k] < a.front() - 1e-12 || x[k] > a.back() + 1e-12)
            throw coverage_error("RateGrid::value_at: query outside grid hull");
        if (a.size() == 1) {
            lo[k] = 0;
            frac[k] = 0.0;
            continue;
        }
        auto it = std::upper_bound(a.begin(), a.end(), x[k]);
        std::size_t hi = static_cast<std::size_t>(it - a.begin());
        if (hi == 0) hi = 1;
        if (hi >= a.size()) hi = a.size() - 1;
        lo[k] = hi - 1;
        double w = (x[k] - a[lo[k]]) / (a[hi] - a[lo[k]]);
        frac[k] = std::clamp(w, 0.0, 1.0);
    }
    // accumulate over the 2^j cube corners
    double acc = 0.0;
    const std::size_t corners = std::size_t{1} << axes.size();
    for (std::size_t c = 0; c < corners; ++c) {
        double w = 1.0;
        std::size_t flat = 0;
        for (std::size_t k = 0; k < axes.size(); ++k) {
            bool high = (c >> k) & 1u;
            w *= high ? frac[k] : 1.0 - frac[k];
            flat = flat * axes[k].size() + (lo[k] + (high ? 1 : 0));
        }
        if (w == 0.0) continue;
        double v = values[flat];
        if (std::isinf(v)) return kInf;
        acc += w * v;
    }
    return acc;
}

namespace {

// Upper bound on sup_{lambda in [nodes[i-1], nodes[i+1]]} (x*lambda - f(lambda))
// minus the node-i value, using outer-secant under-estimates of the convex f.
// Golden-section on each bracket cell. Requires 1 <= i <= size-2: boundary
// arg-maxes are flagged upstream and never refined.
double secant_refinement_gap(const std::vector<double>& nodes, const std::vector<double>& vals,
                             std::size_t i, double x) {
    auto line = [](double xa, double ya, double xb, double yb, double q) {
        return ya + (yb - ya) * (q - xa) / (xb - xa);
    };
    const double center = x * nodes[i] - vals[i];
    double gap = 0.0;
    {  // cell [i-1, i]; the secant over [i, i+1] extended left stays below f
        auto under = [&](double q) {
            double u = line(nodes[i], vals[i], nodes[i + 1], vals[i + 1], q);
            if (i >= 2) u = std::max(u, line(nodes[i - 2], vals[i - 2], nodes[i - 1], vals[i - 1], q));
            return u;
        };
        double lam = golden_section_max([&](double q) { return x * q - under(q); },
                                        nodes[i - 1], nodes[i]);
        gap = std::max(gap, x * lam - under(lam) - center);
    }
    {  // cell [i, i+1]; the secant over [i-1, i] extended right stays below f
        auto under = [&](double q) {
            double u = line(nodes[i - 1], vals[i - 1], nodes[i], vals[i], q);
            if (i + 2 < nodes.size())
                u = std::max(u, line(nodes[i + 1], vals[i + 1], nodes[i + 2], vals[i + 2], q));
            return u;
        };
        double lam = golden_section_max([&](double q) { return x * q - under(q); },
                                        nodes[i], nodes[i + 1]);
        gap = std::max(gap, x * lam - under(lam) - center);
    }
    return std::max(gap, 0.0);
}

}  // namespace

RateGrid conjugate(const MgfTable& mgf, const std::vector<std::vector<double>>& x_axes) {
    const std::size_t total_lambda = mgf.lambda_grid.num_points();
    if (total_lambda == 0 || mgf.extrapolated.size() != total_lambda)
        throw std::invalid_argument("conjugate: MgfTable has no extrapolated grid");
    if (x_axes.size() != mgf.lambda_grid.dim())
        throw std::invalid_argument("conjugate: x grid dim mismatch");
    for (const auto& a : x_axes) {
        if (a.empty()) throw std::invalid_argument("conjugate: empty x axis");
    }

    RateGrid out;
    out.J = mgf.J;
    out.axes = x_axes;
    double radius = 0.0;
    for (const auto& a : mgf.lambda_grid.axes)
        radius = std::max(radius, std::max(std::abs(a.front()), std::abs(a.back())));
    out.lambda_radius = radius;

    const std::size_t total_x = out.num_points();
    out.values.resize(total_x);
    out.argmax_lambda.assign(total_x, {});
    out.boundary_flag.assign(total_x, 0);
    out.resolution_gap.assign(total_x, 0.0);

    // cache lambda points once; lex order makes the first strict max the tie-winner
    std::vector<std::vector<double>> lambda_points(total_lambda);
    for (std::size_t p = 0; p < total_lambda; ++p) lambda_points[p] = mgf.lambda_grid.point(p);

    for (std::size_t xi = 0; xi < total_x; ++xi) {
        auto x = out.point(xi);
        double best = -kInf;
        std::size_t best_flat = 0;
        for (std::size_t p = 0; p < total_lambda; ++p) {
            const auto& lam = lambda_points[p];
            double g = -mgf.extrapolated[p];
            for (std::size_t k = 0; k < x.size(); ++k) g += lam[k] * x[k];
            if (g > best) {
                best = g;
                best_flat = p;
            }
        }
        auto idx = mgf.lambda_grid.multi_index(best_flat);
        bool boundary = false;
        for (std::size_t ax = 0; ax < idx.size(); ++ax) {
            if (idx[ax] == 0 || idx[ax] + 1 == mgf.lambda_grid.axes[ax].size()) boundary = true;
        }
        out.values[xi] = best;
        out.argmax_lambda[xi] = lambda_points[best_flat];
        out.boundary_flag[xi] = boundary ? 1 : 0;
        if (!boundary) {
            double gap = 0.0;
            for (std::size_t ax = 0; ax < idx.size(); ++ax) {
                // values along the ax-line through the arg-max
                std::size_t stride = 1;
                for (std::size_t k = ax + 1; k < idx.size(); ++k)
                    stride *= mgf.lambda_grid.axes[k].size();
                std::size_t base = best_flat - idx[ax] * stride;
                const auto& nodes = mgf.lambda_grid.axes[ax];
                std::vector<double> vals(nodes.size());
                for (std::size_t j = 0; j < nodes.size(); ++j)
                    vals[j] = mgf.extrapolated[base + j * stride];
                gap += secant_refinement_gap(nodes, vals, idx[ax], x[ax]);
            }
            out.resolution_gap[xi] = gap;
        } else {
            out.resolution_gap[xi] = kInf;
        }
    }
    auto [ok, worst] = certify_midpoint_convexity(out);
    out.certificate = ConvexityCertificate{ok, worst};
    return out;
}

namespace {

inline double xlogx(double u) { return u > 0.0 ? u * std::log(u) : 0.0; }

double rate_formula(int d, double s) {
    // -(1+s)/2 log(d-1) + (1+s) log sqrt(1+s) + (1-s) log sqrt(1-s) + log(d/2)
    return -0.5 * (1.0 + s) * std::log(static_cast<double>(d - 1)) + 0.5 * xlogx(1.0 + s) +
           0.5 * xlogx(1.0 - s) + std::log(0.5 * d);
}

}  // namespace

double lambda_star_closed_form(int d, double x) {
    if (d < 3) throw std::invalid_argument("lambda_star_closed_form: d must be >= 3");
    if (x < 0.0 || x > 1.0) return kInf;
    return rate_formula(d, x);
}

double biased_increment_rate(int d, double s) {
    if (d < 3) throw std::invalid_argument("biased_increment_rate: d must be >= 3");
    if (s < -1.0 || s > 1.0) return kInf;
    return rate_formula(d, s);
}

double biased_increment_log_mgf(int d, double lambda) {
    const double q = static_cast<double>(d - 1) / d;
    if (lambda >= 0.0)
        return std::log(q) + lambda + std::log1p((1.0 - q) / q * std::exp(-2.0 * lambda));
    return std::log(1.0 - q) - lambda + std::log1p(q / (1.0 - q) * std::exp(2.0 * lambda));
}

double optimal_tilt(int d, double x) {
    if (!(x > -1.0 && x < 1.0)) throw std::invalid_argument("optimal_tilt: x must be in (-1,1)");
    return 0.5 * std::log((1.0 + x) / (1.0 - x) / (d - 1));
}

std::pair<bool, double> certify_midpoint_convexity(const RateGrid& grid, double tol) {
    const std::size_t total = grid.num_points();
    const std::size_t j = grid.dim();
    std::vector<std::vector<std::size_t>> idx_cache(total);
    for (std::size_t p = 0; p < total; ++p) idx_cache[p] = grid.multi_index(p);

    double worst = 0.0;
    for (std::size_t p = 0; p < total; ++p) {
        for (std::size_t q = p + 1; q < total; ++q) {
            std::size_t mid_flat = 0;
            bool closed = true;
            for (std::size_t k = 0; k < j; ++k) {
                std::size_t s = idx_cache[p][k] + idx_cache[q][k];
                if (s % 2 != 0) {
                    closed = false;
                    break;
                }
                // the index midpoint must also be the point midpoint
                // (axes need not be uniform)
                const auto& a = grid.axes[k];
                double midpt = 0.5 * (a[idx_cache[p][k]] + a[idx_cache[q][k]]);
                if (std::abs(a[s / 2] - midpt) > 1e-12 * std::max(1.0, std::abs(midpt))) {
                    closed = false;
                    break;
                }
                mid_flat = mid_flat * grid.axes[k].size() + s / 2;
            }
            if (!closed) continue;
            double lo = grid.values[p], hi = grid.values[q], mid = grid.values[mid_flat];
            if (std::isinf(lo) || std::isinf(hi)) continue;  // right side infinite
            if (std::isinf(mid)) return {false, kInf};
            worst = std::max(worst, mid - 0.5 * (lo + hi));
        }
    }
    return {worst <= tol, worst};
}

}  // namespace treeldp
