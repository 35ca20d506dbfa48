#include "treeldp/distance_chain.hpp"

#include <cmath>
#include <stdexcept>

#include "treeldp/numeric.hpp"

namespace treeldp {

double DistanceDistribution::sum() const { return kahan_sum(probs); }

double DistanceDistribution::mean() const {
    double m = 0.0, comp = 0.0;
    for (int k = 0; k <= support_max; ++k) {
        double x = static_cast<double>(k) * probs[static_cast<std::size_t>(k)];
        double y = x - comp;
        double t = m + y;
        comp = (t - m) - y;
        m = t;
    }
    return m;
}

void DistanceDistribution::validate(double tol) const {
    if (std::abs(sum() - 1.0) > tol)
        throw std::logic_error("DistanceDistribution: mass not conserved");
    for (int k = 0; k <= support_max; ++k) {
        double p = probs[static_cast<std::size_t>(k)];
        if ((k > n || ((k - n) % 2 != 0)) && p != 0.0)
            throw std::logic_error("DistanceDistribution: support/parity violation");
        if (p < 0.0) throw std::logic_error("DistanceDistribution: negative probability");
    }
}

double SignedDistribution::sum() const { return kahan_sum(probs); }

void SignedDistribution::validate(double tol) const {
    if (std::abs(sum() - 1.0) > tol)
        throw std::logic_error("SignedDistribution: mass not conserved");
    for (int i = 0; i <= 2 * n; ++i) {
        int pos = i - n;
        if (((pos - n) % 2 != 0) && probs[static_cast<std::size_t>(i)] != 0.0)
            throw std::logic_error("SignedDistribution: parity violation");
    }
}

namespace {

// One forward step of the reflected chain; cur has support 0..n_max.
template <typename Scalar>
void simple_step(std::vector<Scalar>& cur, std::vector<Scalar>& next, int support,
                 const Scalar& up, const Scalar& down) {
    for (int k = 0; k <= support + 1; ++k) next[static_cast<std::size_t>(k)] = Scalar(0);
    for (int k = 0; k <= support; ++k) {
        const Scalar& p = cur[static_cast<std::size_t>(k)];
        if (p == Scalar(0)) continue;
        if (k == 0) {
            next[1] += p;  // forced up from the root
        } else {
            next[static_cast<std::size_t>(k + 1)] += p * up;
            next[static_cast<std::size_t>(k - 1)] += p * down;
        }
    }
}

template <typename Scalar>
std::vector<Scalar> simple_dp(int d, int n) {
    const Scalar up = Scalar(d - 1) / Scalar(d);
    const Scalar down = Scalar(1) / Scalar(d);
    std::vector<Scalar> cur(static_cast<std::size_t>(n) + 1, Scalar(0));
    std::vector<Scalar> next(static_cast<std::size_t>(n) + 1, Scalar(0));
    cur[0] = Scalar(1);
    for (int step = 1; step <= n; ++step) {
        simple_step(cur, next, step - 1, up, down);
        cur.swap(next);
    }
    return cur;
}

template <typename Scalar>
std::vector<Scalar> biased_dp(int d, int n) {
    const Scalar away = Scalar(d - 1) / Scalar(d);
    const Scalar back = Scalar(1) / Scalar(d);
    const Scalar half = Scalar(1) / Scalar(2);
    const int size = 2 * n + 1;  // positions -n..n at index pos + n
    std::vector<Scalar> cur(static_cast<std::size_t>(size), Scalar(0));
    std::vector<Scalar> next(static_cast<std::size_t>(size), Scalar(0));
    cur[static_cast<std::size_t>(n)] = Scalar(1);
    for (int step = 1; step <= n; ++step) {
        for (int i = 0; i < size; ++i) next[static_cast<std::size_t>(i)] = Scalar(0);
        for (int pos = -(step - 1); pos <= step - 1; ++pos) {
            const Scalar& p = cur[static_cast<std::size_t>(pos + n)];
            if (p == Scalar(0)) continue;
            if (pos == 0) {
                next[static_cast<std::size_t>(1 + n)] += p * half;
                next[static_cast<std::size_t>(-1 + n)] += p * half;
            } else if (pos > 0) {
                next[static_cast<std::size_t>(pos + 1 + n)] += p * away;
                next[static_cast<std::size_t>(pos - 1 + n)] += p * back;
            } else {
                next[static_cast<std::size_t>(pos - 1 + n)] += p * away;
                next[static_cast<std::size_t>(pos + 1 + n)] += p * back;
            }
        }
        cur.swap(next);
    }
    return cur;
}

}  // namespace

DistanceDistribution simple_walk_distance_dist(int d, int n) {
    if (d < 3) throw std::invalid_argument("simple_walk_distance_dist: d must be >= 3");
    if (n < 0) throw std::invalid_argument("simple_walk_distance_dist: n must be >= 0");
    DistanceDistribution out;
    out.n = n;
    out.support_max = n;
    out.probs = simple_dp<double>(d, n);
    return out;
}

SignedDistribution biased_walk_dist(int d, int n) {
    if (d < 3) throw std::invalid_argument("biased_walk_dist: d must be >= 3");
    if (n < 0) throw std::invalid_argument("biased_walk_dist: n must be >= 0");
    SignedDistribution out;
    out.n = n;
    out.probs = biased_dp<double>(d, n);
    return out;
}

DistanceDistribution abs_pushforward(const SignedDistribution& s) {
    DistanceDistribution out;
    out.n = s.n;
    out.support_max = s.n;
    out.probs.assign(static_cast<std::size_t>(s.n) + 1, 0.0);
    out.probs[0] = s.prob(0);
    for (int k = 1; k <= s.n; ++k)
        out.probs[static_cast<std::size_t>(k)] = s.prob(k) + s.prob(-k);
    return out;
}

DistanceDistribution brute_force_distance_dist(const StepDistribution& mu, int n,
                                               std::int64_t cap) {
    DistanceDistribution out;
    out.n = n;
    out.support_max = n;
    out.probs.assign(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> comp(static_cast<std::size_t>(n) + 1, 0.0);
    enumerate_paths(
        mu, n,
        [&](const LatticePath& path, double w) {
            auto k = static_cast<std::size_t>(path.prefix_lengths.back());
            double y = w - comp[k];
            double t = out.probs[k] + y;
            comp[k] = (t - out.probs[k]) - y;
            out.probs[k] = t;
        },
        cap);
    return out;
}

std::vector<rational> simple_walk_distance_dist_exact(int d, int n) {
    if (n > 64) throw std::invalid_argument("exact DP limited to n <= 64");
    return simple_dp<rational>(d, n);
}

std::vector<rational> biased_walk_dist_exact(int d, int n) {
    if (n > 64) throw std::invalid_argument("exact DP limited to n <= 64");
    return biased_dp<rational>(d, n);
}

}  // namespace treeldp
