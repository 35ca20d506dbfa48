#include "treeldp/sample_path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "treeldp/errors.hpp"
#include "treeldp/numeric.hpp"

namespace treeldp {

StepFunctionPath StepFunctionPath::from_walk(const LatticePath& path) {
    StepFunctionPath z;
    z.n = path.n();
    z.lengths = path.prefix_lengths;
    return z;
}

std::vector<double> StepFunctionPath::values() const {
    std::vector<double> out(lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) out[i] = value(i);
    return out;
}

void StepFunctionPath::validate() const {
    if (n < 1 || lengths.size() != static_cast<std::size_t>(n) + 1 || lengths[0] != 0)
        throw std::logic_error("StepFunctionPath: bad shape");
    for (std::size_t i = 0; i + 1 < lengths.size(); ++i) {
        if (std::abs(lengths[i + 1] - lengths[i]) != 1)
            throw std::logic_error("StepFunctionPath: increment not +-1");
        if (lengths[i + 1] < 0) throw std::logic_error("StepFunctionPath: negative value");
    }
}

PolygonalPath::PolygonalPath(std::vector<double> times, std::vector<double> values)
    : t(std::move(times)), v(std::move(values)) {
    if (t.size() != v.size() || t.size() < 2)
        throw std::invalid_argument("PolygonalPath: need matching t/v with >= 2 breakpoints");
    if (t.front() != 0.0) throw std::invalid_argument("PolygonalPath: must start at t = 0");
    if (v.front() != 0.0) throw std::invalid_argument("PolygonalPath: value(0) must be 0");
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (!(t[i] > t[i - 1])) throw std::invalid_argument("PolygonalPath: t must increase");
    }
    if (t.back() > 1.0 + 1e-12) throw std::invalid_argument("PolygonalPath: t must stay within [0,1]");
}

double PolygonalPath::value_at(double tt) const {
    if (tt <= t.front()) return v.front();
    if (tt >= t.back()) return v.back();
    auto it = std::upper_bound(t.begin(), t.end(), tt);
    std::size_t hi = static_cast<std::size_t>(it - t.begin());
    std::size_t lo = hi - 1;
    double w = (tt - t[lo]) / (t[hi] - t[lo]);
    return v[lo] + w * (v[hi] - v[lo]);
}

PolygonalPath polygonal(const StepFunctionPath& z) {
    std::vector<double> t(z.lengths.size()), v(z.lengths.size());
    for (std::size_t i = 0; i < z.lengths.size(); ++i) {
        t[i] = static_cast<double>(i) / z.n;
        v[i] = z.value(i);
    }
    PolygonalPath p(std::move(t), std::move(v));
    p.from_walk = true;
    p.n = z.n;
    p.lengths = z.lengths;
    return p;
}

double lipschitz_constant(const PolygonalPath& p) {
    if (p.from_walk) {
        // slope of segment i is exactly lengths[i+1] - lengths[i]
        int worst = 0;
        for (std::size_t i = 0; i + 1 < p.lengths.size(); ++i)
            worst = std::max(worst, std::abs(p.lengths[i + 1] - p.lengths[i]));
        return static_cast<double>(worst);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < p.t.size(); ++i)
        worst = std::max(worst, std::abs((p.v[i + 1] - p.v[i]) / (p.t[i + 1] - p.t[i])));
    return worst;
}

double sup_distance(const PolygonalPath& p, const StepFunctionPath& z) {
    if (!p.from_walk || p.n != z.n || p.lengths != z.lengths)
        throw std::invalid_argument("sup_distance: polygonal path was not derived from this profile");
    // on [i/n, (i+1)/n) the gap grows linearly from 0 to |increment|/n
    int worst = 0;
    for (std::size_t i = 0; i + 1 < z.lengths.size(); ++i)
        worst = std::max(worst, std::abs(z.lengths[i + 1] - z.lengths[i]));
    return static_cast<double>(worst) / z.n;
}

std::string variant_name(RateVariant v) {
    return v == RateVariant::paper_literal ? "paper-literal" : "increment-rate";
}

RateFunctionalReport mogulskii_rate_simple(int d, const PolygonalPath& f, RateVariant variant) {
    if (d < 3) throw std::invalid_argument("mogulskii_rate_simple: d must be >= 3");
    RateFunctionalReport report;
    report.variant = variant;
    report.starts_at_zero = std::abs(f.v.front()) <= 1e-15;
    double lip = lipschitz_constant(f);
    report.lipschitz_ok = lip <= 1.0 + 1e-9;
    double vmin = *std::min_element(f.v.begin(), f.v.end());
    double vmax = *std::max_element(f.v.begin(), f.v.end());
    report.nonnegative = vmin >= -1e-12;
    report.sup_norm_le_1 = std::max(std::abs(vmin), std::abs(vmax)) <= 1.0 + 1e-12;

    report.segment_contributions.reserve(f.segments());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < f.t.size(); ++i) {
        double dt = f.t[i + 1] - f.t[i];
        double slope;
        if (f.from_walk) {
            slope = static_cast<double>(f.lengths[i + 1] - f.lengths[i]);
        } else {
            slope = (f.v[i + 1] - f.v[i]) / dt;
        }
        double local = variant == RateVariant::paper_literal ? lambda_star_closed_form(d, slope)
                                                             : biased_increment_rate(d, slope);
        double contrib = std::isinf(local) ? kInf : dt * local;
        report.segment_contributions.push_back(contrib);
        total += contrib;
    }
    report.value = report.in_domain() ? total : kInf;
    return report;
}

double assemble_rate(const PolygonalPath& f, std::span<const RateGrid> tables) {
    if (tables.empty()) throw std::invalid_argument("assemble_rate: no rate tables supplied");
    double best = -kInf;
    for (const RateGrid& table : tables) {
        std::vector<double> xq;
        xq.reserve(table.J.size());
        for (double t : table.J.times()) xq.push_back(f.value_at(t));
        best = std::max(best, table.value_at(xq));
    }
    return best;
}

}  // namespace treeldp
