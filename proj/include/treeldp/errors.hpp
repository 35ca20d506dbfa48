#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace treeldp {

/// Thrown when a brute-force enumeration would visit more than the
/// configured number of paths. Carries d^n so callers can report it.
class cap_exceeded_error : public std::runtime_error {
public:
    cap_exceeded_error(int d, int n, double requested_paths, std::int64_t cap)
        : std::runtime_error("enumeration cap exceeded: d=" + std::to_string(d) +
                             ", n=" + std::to_string(n) + " gives " +
                             std::to_string(requested_paths) + " paths > cap " +
                             std::to_string(cap)),
          d_(d), n_(n), requested_paths_(requested_paths), cap_(cap) {}

    int d() const noexcept { return d_; }
    int n() const noexcept { return n_; }
    double requested_paths() const noexcept { return requested_paths_; }
    std::int64_t cap() const noexcept { return cap_; }

private:
    int d_;
    int n_;
    double requested_paths_;
    std::int64_t cap_;
};

/// Thrown by limit extrapolation when fewer than the required number of
/// finite-n values are available.
class insufficient_data_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a query point falls outside the hull of a tabulated grid.
class coverage_error : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

}  // namespace treeldp
