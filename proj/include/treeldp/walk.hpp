#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "treeldp/rng.hpp"
#include "treeldp/time_grid.hpp"
#include "treeldp/words.hpp"

namespace treeldp {

inline constexpr std::int64_t kDefaultEnumerationCap = 2'000'000;

/// Step law mu = (p_1, ..., p_d) on the generators; all entries positive,
/// summing to 1 within 1e-12.
class StepDistribution {
public:
    StepDistribution(int d, std::vector<double> probs);
    static StepDistribution uniform(int d);

    int d() const { return d_; }
    const std::vector<double>& probs() const { return probs_; }
    double prob(Letter s) const { return probs_[static_cast<std::size_t>(s.index - 1)]; }
    bool is_uniform(double tol = 1e-12) const;

    /// Inverse-CDF draw; deterministic given the Rng state.
    Letter sample(Rng& rng) const;

private:
    int d_;
    std::vector<double> probs_;
    std::vector<double> cum_;
};

/// An n-step path in S^n together with the cached length profile of its
/// reduced prefixes: prefix_lengths[i] = l(g(i)), prefix_lengths[0] = 0.
struct LatticePath {
    std::vector<Letter> steps;
    std::vector<int> prefix_lengths;

    static LatticePath from_steps(std::vector<Letter> steps);

    int n() const { return static_cast<int>(steps.size()); }

    /// Reduced word g(i) of the first i steps (replays the prefix).
    ReducedWord word_at(int i) const;

    /// Endpoint word g(n).
    ReducedWord endpoint() const { return word_at(n()); }

    /// Checks the +-1 increment structure; throws on violation.
    void validate() const;
};

/// Escape rate of the simple walk, (d-2)/d.
inline double escape_rate(int d) { return static_cast<double>(d - 2) / d; }

/// d^n as a double (for cap checks and error reporting).
double path_count(int d, int n);

/// i.i.d. mu-walk of n >= 1 steps; bit-reproducible for a given seed.
LatticePath simulate_walk(const StepDistribution& mu, int n, std::uint64_t seed);

/// Visits every path in S^n exactly once (lexicographic order by letter
/// index) with its product weight. Throws cap_exceeded_error if d^n > cap.
void enumerate_paths(const StepDistribution& mu, int n,
                     const std::function<void(const LatticePath&, double)>& visit,
                     std::int64_t cap = kDefaultEnumerationCap);

/// (l(g([n t_1])), ..., l(g([n t_j]))) for the checkpoint grid.
std::vector<int> length_profile_at(const LatticePath& path, const TimeGrid& times, int n);

}  // namespace treeldp
