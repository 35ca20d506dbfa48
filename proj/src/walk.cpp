#include "treeldp/walk.hpp"

#include <cmath>
#include <stdexcept>

#include "treeldp/errors.hpp"
#include "treeldp/numeric.hpp"

namespace treeldp {

StepDistribution::StepDistribution(int d, std::vector<double> probs)
    : d_(d), probs_(std::move(probs)) {
    if (d_ < 3) throw std::invalid_argument("StepDistribution: d must be >= 3");
    if (static_cast<int>(probs_.size()) != d_)
        throw std::invalid_argument("StepDistribution: probs size must equal d");
    for (double p : probs_) {
        if (!(p > 0.0)) throw std::invalid_argument("StepDistribution: entries must be > 0");
    }
    if (std::abs(kahan_sum(probs_) - 1.0) > 1e-12)
        throw std::invalid_argument("StepDistribution: entries must sum to 1");
    cum_.resize(probs_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        acc += probs_[i];
        cum_[i] = acc;
    }
    cum_.back() = 1.0;
}

StepDistribution StepDistribution::uniform(int d) {
    if (d < 3) throw std::invalid_argument("StepDistribution: d must be >= 3");
    return StepDistribution(d, std::vector<double>(static_cast<std::size_t>(d), 1.0 / d));
}

bool StepDistribution::is_uniform(double tol) const {
    for (double p : probs_) {
        if (std::abs(p - 1.0 / d_) > tol) return false;
    }
    return true;
}

Letter StepDistribution::sample(Rng& rng) const {
    double u = rng.unit();
    for (int i = 0; i < d_ - 1; ++i) {
        if (u < cum_[static_cast<std::size_t>(i)]) return Letter{i + 1};
    }
    return Letter{d_};
}

LatticePath LatticePath::from_steps(std::vector<Letter> steps) {
    LatticePath p;
    p.steps = std::move(steps);
    p.prefix_lengths.reserve(p.steps.size() + 1);
    p.prefix_lengths.push_back(0);
    ReducedWord w;
    for (const Letter& s : p.steps) {
        w.push(s);
        p.prefix_lengths.push_back(static_cast<int>(w.length()));
    }
    return p;
}

ReducedWord LatticePath::word_at(int i) const {
    ReducedWord w;
    for (int k = 0; k < i; ++k) w.push(steps[static_cast<std::size_t>(k)]);
    return w;
}

void LatticePath::validate() const {
    if (prefix_lengths.size() != steps.size() + 1 || prefix_lengths[0] != 0)
        throw std::logic_error("LatticePath: bad profile shape");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        int diff = prefix_lengths[i + 1] - prefix_lengths[i];
        if (diff != 1 && diff != -1) throw std::logic_error("LatticePath: increment not +-1");
        if (prefix_lengths[i + 1] < 0) throw std::logic_error("LatticePath: negative length");
    }
    if (!steps.empty() && prefix_lengths[1] != 1)
        throw std::logic_error("LatticePath: first increment must be +1");
}

double path_count(int d, int n) {
    return std::pow(static_cast<double>(d), static_cast<double>(n));
}

LatticePath simulate_walk(const StepDistribution& mu, int n, std::uint64_t seed) {
    if (n < 1) throw std::domain_error("simulate_walk: n must be >= 1");
    Rng rng(seed);
    LatticePath p;
    p.steps.reserve(static_cast<std::size_t>(n));
    p.prefix_lengths.reserve(static_cast<std::size_t>(n) + 1);
    p.prefix_lengths.push_back(0);
    ReducedWord w;
    for (int i = 0; i < n; ++i) {
        Letter s = mu.sample(rng);
        p.steps.push_back(s);
        w.push(s);
        p.prefix_lengths.push_back(static_cast<int>(w.length()));
    }
    return p;
}

namespace {

struct Enumerator {
    const StepDistribution& mu;
    int n;
    const std::function<void(const LatticePath&, double)>& visit;
    LatticePath path;
    std::vector<double> weight_stack;  // weight_stack[i] = weight of first i steps
    ReducedWord word;

    void recurse(int depth) {
        if (depth == n) {
            visit(path, weight_stack.back());
            return;
        }
        for (int i = 1; i <= mu.d(); ++i) {
            Letter s{i};
            path.steps.push_back(s);
            word.push(s);
            path.prefix_lengths.push_back(static_cast<int>(word.length()));
            weight_stack.push_back(weight_stack.back() * mu.prob(s));
            recurse(depth + 1);
            weight_stack.pop_back();
            path.prefix_lengths.pop_back();
            word.push(s);  // involution undoes push/pop
            path.steps.pop_back();
        }
    }
};

}  // namespace

void enumerate_paths(const StepDistribution& mu, int n,
                     const std::function<void(const LatticePath&, double)>& visit,
                     std::int64_t cap) {
    if (n < 0) throw std::invalid_argument("enumerate_paths: n must be >= 0");
    double total = path_count(mu.d(), n);
    if (total > static_cast<double>(cap)) throw cap_exceeded_error(mu.d(), n, total, cap);
    Enumerator e{mu, n, visit, LatticePath{}, {1.0}, ReducedWord{}};
    e.path.prefix_lengths.push_back(0);
    e.recurse(0);
}

std::vector<int> length_profile_at(const LatticePath& path, const TimeGrid& times, int n) {
    std::vector<int> out;
    out.reserve(times.size());
    for (int idx : times.indices(n)) {
        out.push_back(path.prefix_lengths[static_cast<std::size_t>(idx)]);
    }
    return out;
}

}  // namespace treeldp
