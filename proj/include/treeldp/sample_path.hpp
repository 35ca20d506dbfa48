#pragma once

#include <span>
#include <string>
#include <vector>

#include "treeldp/legendre.hpp"
#include "treeldp/walk.hpp"

namespace treeldp {

/// Rescaled distance process Z_n at the lattice times i/n, backed by the
/// integer length profile so +-1 increment facts stay exact.
struct StepFunctionPath {
    int n = 0;
    std::vector<int> lengths;  // n + 1 entries, lengths[0] = 0

    static StepFunctionPath from_walk(const LatticePath& path);

    double value(std::size_t i) const { return static_cast<double>(lengths[i]) / n; }
    std::vector<double> values() const;
    void validate() const;
};

/// Piecewise-linear path on [0,1] starting at 0. Walk-derived instances keep
/// their integer backing, so slopes of +-1 are exact.
struct PolygonalPath {
    std::vector<double> t, v;
    bool from_walk = false;
    int n = 0;
    std::vector<int> lengths;

    PolygonalPath(std::vector<double> times, std::vector<double> values);

    double value_at(double tt) const;
    std::size_t segments() const { return t.size() - 1; }
};

/// Linear interpolation of Z_n through its lattice points.
PolygonalPath polygonal(const StepFunctionPath& z);

/// Max absolute segment slope. Exactly the integer max |increment| for
/// walk-derived paths (1 for every valid walk).
double lipschitz_constant(const PolygonalPath& p);

/// sup_{t in [0,1]} |polygonal - step| = max |increment| (attained just
/// before each lattice point); <= 1/n for walk paths.
double sup_distance(const PolygonalPath& p, const StepFunctionPath& z);

enum class RateVariant {
    paper_literal,   // segment cost Lambda*(slope), +inf for negative slopes
    increment_rate,  // segment cost = biased-increment conjugate, finite on [-1,1]
};

std::string variant_name(RateVariant v);

/// Path functional report: value = sum of dt * (local rate of slope) when
/// the domain flags pass, +inf otherwise. The increment_rate variant is a
/// labeled alternative local rate, finite on downward slopes; it is never
/// merged with the literal one.
struct RateFunctionalReport {
    RateVariant variant = RateVariant::paper_literal;
    double value = 0.0;
    std::vector<double> segment_contributions;
    bool starts_at_zero = false;
    bool lipschitz_ok = false;
    bool nonnegative = false;
    bool sup_norm_le_1 = false;

    bool in_domain() const { return starts_at_zero && lipschitz_ok && nonnegative && sup_norm_le_1; }
};

RateFunctionalReport mogulskii_rate_simple(int d, const PolygonalPath& f, RateVariant variant);

/// Finite-family lower bound for the path rate: max over the supplied
/// conjugate tables of the (multilinearly interpolated) table value at the
/// projected point p_J(f). Throws coverage_error when a projection falls
/// outside a table hull.
double assemble_rate(const PolygonalPath& f, std::span<const RateGrid> tables);

}  // namespace treeldp
