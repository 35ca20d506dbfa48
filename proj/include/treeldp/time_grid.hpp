#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace treeldp {

/// Integer part [n*t] with a snap window: products that land within 1e-9 of
/// an integer are treated as that integer, so grids like t = 0.1 hit the
/// mathematically intended index despite binary rounding.
inline int floor_index(int n, double t) {
    double v = static_cast<double>(n) * t;
    double r = std::round(v);
    if (std::abs(v - r) < 1e-9 * std::max(1.0, std::abs(v))) v = r;
    return static_cast<int>(std::floor(v));
}

/// Ordered finite set of checkpoint times (t_1, ..., t_j), 0 < t_1 < ... <= 1.
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> times) : times_(std::move(times)) {
        if (times_.empty()) throw std::invalid_argument("TimeGrid: empty");
        double prev = 0.0;
        for (double t : times_) {
            if (!(t > prev)) throw std::invalid_argument("TimeGrid: times must be strictly increasing and > 0");
            prev = t;
        }
        if (times_.back() > 1.0) throw std::invalid_argument("TimeGrid: times must lie in (0, 1]");
    }

    std::size_t size() const { return times_.size(); }
    double operator[](std::size_t i) const { return times_[i]; }
    const std::vector<double>& times() const { return times_; }

    /// Checkpoint step indices [n*t_i].
    std::vector<int> indices(int n) const {
        std::vector<int> idx;
        idx.reserve(times_.size());
        for (double t : times_) idx.push_back(floor_index(n, t));
        return idx;
    }

    friend bool operator==(const TimeGrid& a, const TimeGrid& b) { return a.times_ == b.times_; }

private:
    std::vector<double> times_;
};

}  // namespace treeldp
