#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "treeldp/mgf.hpp"
#include "treeldp/time_grid.hpp"

namespace treeldp {

struct ConvexityCertificate {
    bool ok = false;
    double worst_violation = 0.0;
};

/// Tabulated conjugate values I_J(x) on a product x-grid. Values are
/// certified lower bounds (sup over a finite lambda grid); +inf is stored
/// explicitly. boundary_flag marks points whose arg-max hit the lambda-grid
/// boundary: there the true conjugate is unbounded at this grid radius and
/// the stored number is only the radius-limited bound. resolution_gap is the
/// per-point refinement estimate of how far the grid sup can sit below the
/// true sup (a certificate in one dimension, a per-axis estimate otherwise).
struct RateGrid {
    TimeGrid J{std::vector<double>{1.0}};
    std::vector<std::vector<double>> axes;        // per-coordinate x nodes
    std::vector<double> values;                   // flattened, may be +inf
    std::vector<std::vector<double>> argmax_lambda;
    std::vector<char> boundary_flag;
    std::vector<double> resolution_gap;
    double lambda_radius = 0.0;
    ConvexityCertificate certificate;

    std::size_t dim() const { return axes.size(); }
    std::size_t num_points() const;
    std::vector<std::size_t> multi_index(std::size_t flat) const;
    std::vector<double> point(std::size_t flat) const;

    /// Multilinear interpolation; throws coverage_error outside the hull.
    /// Any +inf corner makes the result +inf.
    double value_at(std::span<const double> x) const;
};

/// Fenchel-Legendre transform of the extrapolated table: for each x,
/// I_J(x) = max over grid lambda of <lambda, x> - Lambda(lambda), ties broken
/// toward the lexicographically smallest lambda, followed by one round of
/// golden-section refinement per coordinate around the arg-max (on the
/// outer-secant under-model of Lambda, which turns the refinement into a
/// bound on the grid-resolution gap rather than an uncertified bump of the
/// value). Fills the convexity certificate.
RateGrid conjugate(const MgfTable& mgf, const std::vector<std::vector<double>>& x_axes);

/// Closed-form endpoint rate function of the simple walk:
/// -(1+x)/2 log(d-1) + (1+x) log sqrt(1+x) + (1-x) log sqrt(1-x) + log(d/2)
/// on [0,1], +inf otherwise; 0*log 0 = 0 at x = 1.
double lambda_star_closed_form(int d, double x);

/// The same algebraic expression extended to slopes in [-1,1]: the convex
/// conjugate of the biased-increment log-MGF. +inf outside [-1,1].
double biased_increment_rate(int d, double s);

/// log((d-1)/d e^lambda + 1/d e^-lambda), evaluated overflow-safe.
double biased_increment_log_mgf(int d, double lambda);

/// Maximizer of lambda*x - biased_increment_log_mgf for x in (-1,1):
/// 0.5 log(((1+x)/(1-x))/(d-1)).
double optimal_tilt(int d, double x);

/// Checks I(x/2 + y/2) <= I(x)/2 + I(y)/2 + tol over every grid pair whose
/// midpoint is again a grid point. Returns (ok, worst violation >= 0).
std::pair<bool, double> certify_midpoint_convexity(const RateGrid& grid, double tol = 1e-6);

}  // namespace treeldp
