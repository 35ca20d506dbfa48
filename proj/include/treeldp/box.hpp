#pragma once

#include <stdexcept>
#include <vector>

#include "treeldp/time_grid.hpp"

namespace treeldp {

/// Open box target for the rescaled length profile: paths with
/// max_i |l(g([n t_i]))/n - x_i| < rho. Used with j = 2 by the
/// concatenation machinery and with j >= 1 by the Monte Carlo estimators.
struct BoxSpec {
    TimeGrid J;
    std::vector<double> x;
    double rho = 0.0;

    BoxSpec(TimeGrid grid, std::vector<double> center, double radius)
        : J(std::move(grid)), x(std::move(center)), rho(radius) {
        if (x.size() != J.size())
            throw std::invalid_argument("BoxSpec: x must have one coordinate per checkpoint");
        if (!(rho > 0.0)) throw std::invalid_argument("BoxSpec: rho must be > 0");
        for (double xi : x) {
            if (xi < 0.0) throw std::invalid_argument("BoxSpec: x must be nonnegative");
        }
    }

    /// Strict membership test for a rescaled profile.
    bool contains(const std::vector<int>& profile, int n) const {
        for (std::size_t i = 0; i < x.size(); ++i) {
            double z = static_cast<double>(profile[i]) / n;
            if (!(std::abs(z - x[i]) < rho)) return false;
        }
        return true;
    }
};

}  // namespace treeldp
