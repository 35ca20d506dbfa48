#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "treeldp/walk.hpp"

namespace treeldp {

using rational = boost::multiprecision::cpp_rational;

/// Exact law of a distance process at time n: probs[k] = P(distance = k),
/// k = 0..support_max. Entries with k > n or k of the wrong parity are zero.
struct DistanceDistribution {
    int n = 0;
    int support_max = 0;
    std::vector<double> probs;

    double prob(int k) const {
        return (k >= 0 && k <= support_max) ? probs[static_cast<std::size_t>(k)] : 0.0;
    }
    double sum() const;
    double mean() const;
    void validate(double tol = 1e-12) const;
};

/// Law of the biased walk R_n on Z, positions -n..n stored at index pos + n.
struct SignedDistribution {
    int n = 0;
    std::vector<double> probs;  // size 2n + 1

    double prob(int pos) const {
        int i = pos + n;
        return (i >= 0 && i <= 2 * n) ? probs[static_cast<std::size_t>(i)] : 0.0;
    }
    double sum() const;
    void validate(double tol = 1e-12) const;
};

/// Law of l(Y_n) for the simple walk on the d-regular tree, by forward DP on
/// the chain with p(0,1) = 1, p(u,u+1) = (d-1)/d, p(u,u-1) = 1/d for u > 0.
DistanceDistribution simple_walk_distance_dist(int d, int n);

/// Law of R_n for the biased walk on Z: p(0,+-1) = 1/2 and away-from-origin
/// probability (d-1)/d on either half-line.
SignedDistribution biased_walk_dist(int d, int n);

/// Pushforward under |.|; folding a biased-walk law reproduces the simple
/// walk distance law (the coupling l(Y_n) ~ |R_n|).
DistanceDistribution abs_pushforward(const SignedDistribution& s);

/// Law of l(Y_n) for arbitrary mu by full enumeration of S^n. This is the
/// oracle for general step laws, where the distance alone is not Markov.
DistanceDistribution brute_force_distance_dist(const StepDistribution& mu, int n,
                                               std::int64_t cap = kDefaultEnumerationCap);

/// Exact-arithmetic variants of the two chain DPs, for n <= 64. Index k of
/// the simple result is P(l(Y_n) = k); index i of the biased result is
/// P(R_n = i - n).
std::vector<rational> simple_walk_distance_dist_exact(int d, int n);
std::vector<rational> biased_walk_dist_exact(int d, int n);

}  // namespace treeldp
