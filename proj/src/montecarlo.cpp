#include "treeldp/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "treeldp/numeric.hpp"
#include "treeldp/rng.hpp"

namespace treeldp {

namespace {

constexpr std::int64_t kBlockSize = 16384;
constexpr std::int64_t kMinHits = 30;

struct BlockMoments {
    double sum_w = 0.0;    // sum of (indicator * likelihood ratio)
    double sum_w2 = 0.0;   // sum of squares
    std::int64_t hits = 0;
};

// Fills one estimate slot from in-order merged block moments.
void finish_slot(RateEstimate& est, int n, std::int64_t samples,
                 const std::vector<BlockMoments>& blocks) {
    double sum_w = 0.0, sum_w2 = 0.0;
    std::int64_t hits = 0;
    for (const auto& b : blocks) {
        sum_w += b.sum_w;
        sum_w2 += b.sum_w2;
        hits += b.hits;
    }
    double p = sum_w / static_cast<double>(samples);
    double var = sum_w2 / static_cast<double>(samples) - p * p;
    if (var < 0.0) var = 0.0;
    double se_p = std::sqrt(var / static_cast<double>(samples));

    est.n_values.push_back(n);
    est.hits.push_back(hits);
    est.prob.push_back(p);
    est.prob_stderr.push_back(se_p);
    if (hits < kMinHits) {
        est.rate.push_back(std::numeric_limits<double>::quiet_NaN());
        est.rate_stderr.push_back(std::numeric_limits<double>::quiet_NaN());
        est.flags.emplace_back("insufficient");
        return;
    }
    double rate = p >= 1.0 ? 0.0 : -std::log(p) / n;
    est.rate.push_back(rate);
    est.rate_stderr.push_back(se_p / (p * n));
    est.flags.emplace_back(se_p > 0.5 * p ? "high-variance" : "ok");
}

RateEstimate make_estimate(const McConfig& cfg, const BoxSpec& spec) {
    RateEstimate est{spec, {}, {}, {}, {}, {}, {}, {}, cfg.samples, cfg.seed, cfg.tilt, 0.0, false};
    return est;
}

void run_crude(const McConfig& cfg, const BoxSpec& spec, int n, RateEstimate& est) {
    const auto ckpt = spec.J.indices(n);
    const std::int64_t blocks = (cfg.samples + kBlockSize - 1) / kBlockSize;
    std::vector<BlockMoments> moments(static_cast<std::size_t>(blocks));
    parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t b) {
        Rng rng(block_seed(cfg.seed, b));
        std::int64_t lo = static_cast<std::int64_t>(b) * kBlockSize;
        std::int64_t hi = std::min(cfg.samples, lo + kBlockSize);
        BlockMoments m;
        std::vector<Letter> stack;
        stack.reserve(static_cast<std::size_t>(n));
        std::vector<int> profile(ckpt.size());
        for (std::int64_t s = lo; s < hi; ++s) {
            stack.clear();
            std::size_t next_cp = 0;
            while (next_cp < ckpt.size() && ckpt[next_cp] == 0) {
                profile[next_cp++] = 0;
            }
            for (int i = 1; i <= n && next_cp < ckpt.size(); ++i) {
                Letter step = cfg.mu.sample(rng);
                if (!stack.empty() && stack.back() == step) {
                    stack.pop_back();
                } else {
                    stack.push_back(step);
                }
                while (next_cp < ckpt.size() && ckpt[next_cp] == i) {
                    profile[next_cp++] = static_cast<int>(stack.size());
                }
            }
            if (spec.contains(profile, n)) {
                m.sum_w += 1.0;
                m.sum_w2 += 1.0;
                ++m.hits;
            }
        }
        moments[b] = m;
    });
    finish_slot(est, n, cfg.samples, moments);
}

void run_tilted(const McConfig& cfg, const BoxSpec& spec, int n, RateEstimate& est) {
    const int d = cfg.mu.d();
    const double theta = *cfg.tilt;
    const double q = static_cast<double>(d - 1) / d;
    const double wu = q * std::exp(theta);
    const double wd = (1.0 - q) * std::exp(-theta);
    const double q_tilt = wu / (wu + wd);
    const double llr_up = std::log(q / q_tilt);          // per up-step away from 0
    const double llr_down = std::log((1.0 - q) / (1.0 - q_tilt));
    const double x0 = spec.x[0];
    const double rho = spec.rho;

    const std::int64_t blocks = (cfg.samples + kBlockSize - 1) / kBlockSize;
    std::vector<BlockMoments> moments(static_cast<std::size_t>(blocks));
    parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t b) {
        Rng rng(block_seed(cfg.seed, b));
        std::int64_t lo = static_cast<std::int64_t>(b) * kBlockSize;
        std::int64_t hi = std::min(cfg.samples, lo + kBlockSize);
        BlockMoments m;
        for (std::int64_t s = lo; s < hi; ++s) {
            int state = 0;
            double llr = 0.0;
            for (int i = 0; i < n; ++i) {
                if (state == 0) {
                    ++state;  // both kernels force up: likelihood ratio 1
                } else if (rng.unit() < q_tilt) {
                    ++state;
                    llr += llr_up;
                } else {
                    --state;
                    llr += llr_down;
                }
            }
            double z = static_cast<double>(state) / n;
            if (std::abs(z - x0) < rho) {
                double w = std::exp(llr);
                m.sum_w += w;
                m.sum_w2 += w * w;
                ++m.hits;
            }
        }
        moments[b] = m;
    });
    finish_slot(est, n, cfg.samples, moments);
}

}  // namespace

RateEstimate estimate_box(const McConfig& cfg, const BoxSpec& spec) {
    if (cfg.samples < 1) throw std::invalid_argument("estimate_box: samples must be >= 1");
    if (cfg.n < 1) throw std::invalid_argument("estimate_box: n must be >= 1");
    RateEstimate est = make_estimate(cfg, spec);
    run_crude(cfg, spec, cfg.n, est);
    return est;
}

RateEstimate tilted_estimate(const McConfig& cfg, const BoxSpec& spec) {
    if (cfg.samples < 1) throw std::invalid_argument("tilted_estimate: samples must be >= 1");
    if (cfg.n < 1) throw std::invalid_argument("tilted_estimate: n must be >= 1");
    if (!cfg.tilt) throw std::invalid_argument("tilted_estimate: tilt parameter required");
    if (!cfg.mu.is_uniform())
        throw std::invalid_argument("tilted_estimate: only the uniform step law has a distance-chain representation");
    if (spec.J.size() != 1 || spec.J[0] != 1.0)
        throw std::invalid_argument("tilted_estimate: only the endpoint grid J = (1.0) is supported");
    RateEstimate est = make_estimate(cfg, spec);
    run_tilted(cfg, spec, cfg.n, est);
    return est;
}

RateEstimate convergence_sweep(const McConfig& cfg, const BoxSpec& spec,
                               const std::vector<int>& n_list) {
    if (n_list.empty()) throw std::invalid_argument("convergence_sweep: empty n list");
    for (std::size_t i = 1; i < n_list.size(); ++i) {
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("convergence_sweep: n list must be strictly increasing");
    }
    const bool tilted = cfg.tilt.has_value();
    RateEstimate est = make_estimate(cfg, spec);
    for (int n : n_list) {
        McConfig one = cfg;
        one.n = n;
        if (tilted) {
            RateEstimate slot = tilted_estimate(one, spec);
            est.n_values.push_back(n);
            est.hits.push_back(slot.hits[0]);
            est.prob.push_back(slot.prob[0]);
            est.prob_stderr.push_back(slot.prob_stderr[0]);
            est.rate.push_back(slot.rate[0]);
            est.rate_stderr.push_back(slot.rate_stderr[0]);
            est.flags.push_back(slot.flags[0]);
        } else {
            run_crude(one, spec, n, est);
        }
    }
    // diagnostic: max pairwise spread of the last up-to-3 usable rates
    std::vector<double> tail;
    for (std::size_t i = est.rate.size() >= 3 ? est.rate.size() - 3 : 0; i < est.rate.size(); ++i) {
        if (!std::isnan(est.rate[i])) tail.push_back(est.rate[i]);
    }
    if (tail.size() >= 2) {
        double lo = *std::min_element(tail.begin(), tail.end());
        double hi = *std::max_element(tail.begin(), tail.end());
        est.stabilization = hi - lo;
        est.stabilization_defined = true;
    }
    return est;
}

}  // namespace treeldp
