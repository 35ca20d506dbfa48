#include "treeldp/path_concat.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "treeldp/numeric.hpp"
#include "treeldp/rng.hpp"

namespace treeldp {

namespace {

void require_two_checkpoints(const BoxSpec& spec, const char* who) {
    if (spec.J.size() != 2)
        throw std::invalid_argument(std::string(who) + ": BoxSpec must have exactly two checkpoints");
}

}  // namespace

PathAnatomy anatomy(const LatticePath& path, const TimeGrid& J, int n) {
    if (J.size() != 2) throw std::invalid_argument("anatomy: J must have exactly two checkpoints");
    if (path.n() < n) throw std::invalid_argument("anatomy: path shorter than n");
    const int i1 = floor_index(n, J[0]);
    const int i2 = floor_index(n, J[1]);

    PathAnatomy a;
    a.y1 = path.word_at(i1);
    a.y2 = path.word_at(i2);
    a.meet_word = meet(a.y1, a.y2);
    a.L0 = static_cast<int>(a.meet_word.length());
    a.L1 = static_cast<int>(a.y1.length());
    a.L2 = static_cast<int>(a.y2.length());

    // single scan locating the last visit of the meet before i1 and the
    // first visit at or after i1; match = common-prefix length with the meet
    ReducedWord cur;
    int match = 0;
    int m1 = -1, m2 = -1;
    auto at_meet = [&]() { return static_cast<int>(cur.length()) == a.L0 && match == a.L0; };
    if (at_meet()) {
        m1 = 0;
        if (i1 == 0) m2 = 0;
    }
    for (int i = 1; i <= i2; ++i) {
        Letter s = path.steps[static_cast<std::size_t>(i - 1)];
        const int len_before = static_cast<int>(cur.length());
        cur.push(s);
        if (static_cast<int>(cur.length()) > len_before) {
            if (match == len_before && len_before < a.L0 && s == a.meet_word[static_cast<std::size_t>(len_before)])
                ++match;
        } else if (match > static_cast<int>(cur.length())) {
            match = static_cast<int>(cur.length());
        }
        if (at_meet()) {
            if (i <= i1) m1 = i;
            if (i >= i1 && m2 < 0) m2 = i;
        }
    }
    if (m1 < 0 || m2 < 0 || m1 > i1 || m2 < i1 || m2 > i2)
        throw std::logic_error("anatomy: meet visit times out of order");
    a.m1 = m1;
    a.m2 = m2;
    return a;
}

ClassKey class_key(const LatticePath& path, const TimeGrid& J, int n) {
    PathAnatomy a = anatomy(path, J, n);
    const int i2 = floor_index(n, J[1]);
    ClassKey key;
    key.L0 = a.L0;
    key.L1 = a.L1;
    key.L2 = a.L2;
    key.m1 = a.m1;
    key.m2 = a.m2;
    if (a.L0 > 0) {
        key.letters[0] = a.meet_word.first().index;
        key.letters[1] = a.meet_word.last().index;
    }
    if (a.L1 > a.L0) {
        key.letters[2] = a.y1[static_cast<std::size_t>(a.L0)].index;
        key.letters[3] = a.y1[static_cast<std::size_t>(a.L1 - 1)].index;
    }
    if (a.L2 > a.L0) {
        key.letters[4] = a.y2[static_cast<std::size_t>(a.L0)].index;
        key.letters[5] = a.y2[static_cast<std::size_t>(a.L2 - 1)].index;
    } else if (a.m2 < i2) {
        // the stretch (m2, i2] loops at the meet; its first and last step
        // letters take over the unused slot pair
        key.loop_case = true;
        key.letters[4] = path.steps[static_cast<std::size_t>(a.m2)].index;
        key.letters[5] = path.steps[static_cast<std::size_t>(i2 - 1)].index;
    }
    return key;
}

BoxSetResult box_set(const StepDistribution& mu, const BoxSpec& spec, int n, std::int64_t cap) {
    require_two_checkpoints(spec, "box_set");
    const int i1 = floor_index(n, spec.J[0]);
    const int i2 = floor_index(n, spec.J[1]);
    BoxSetResult out;
    double comp = 0.0;
    enumerate_paths(
        mu, n,
        [&](const LatticePath& path, double w) {
            double z1 = static_cast<double>(path.prefix_lengths[static_cast<std::size_t>(i1)]) / n;
            double z2 = static_cast<double>(path.prefix_lengths[static_cast<std::size_t>(i2)]) / n;
            if (std::abs(z1 - spec.x[0]) < spec.rho && std::abs(z2 - spec.x[1]) < spec.rho) {
                out.paths.push_back(path);
                double y = w - comp;
                double t = out.measure + y;
                comp = (t - out.measure) - y;
                out.measure = t;
            }
        },
        cap);
    return out;
}

namespace {

Letter pick_letter(int d, int avoid1, int avoid2) {
    for (int i = 1; i <= d; ++i) {
        if (i != avoid1 && i != avoid2) return Letter{i};
    }
    throw std::logic_error("pick_letter: no admissible letter (d < 3?)");
}

// Separator letters for a class, following the degenerate-segment rules:
// empty segments impose no constraint (the letter defaults to a_1), and an
// empty w2 borrows its avoidance set from the meet's last letter and w1's
// first letter. Sets fallback when the meet is empty and that rule has
// nothing to avoid on the meet side.
void choose_letters(const ClassKey& key, int d, Letter& a, Letter& b, Letter& c,
                    bool& c_fallback) {
    a = pick_letter(d, key.letters[0], key.letters[1]);
    b = pick_letter(d, key.letters[2], key.letters[3]);
    if (key.L2 > key.L0) {
        c = pick_letter(d, key.letters[4], key.letters[5]);
        c_fallback = false;
    } else {
        const int meet_last = key.letters[1];   // 0 when the meet is empty
        const int w1_first = key.letters[2];    // 0 when w1 is empty
        c = pick_letter(d, meet_last, w1_first);
        c_fallback = (key.L0 == 0);
    }
}

double path_measure(const LatticePath& path, const StepDistribution& mu) {
    double w = 1.0;
    for (const Letter& s : path.steps) w *= mu.prob(s);
    return w;
}

}  // namespace

SelectResult select_class(const std::vector<LatticePath>& paths, const StepDistribution& mu,
                          const TimeGrid& J, int n) {
    if (paths.empty()) throw std::invalid_argument("select_class: empty path set");
    struct Group {
        double measure = 0.0;
        std::vector<std::size_t> indices;
    };
    std::map<ClassKey, Group> groups;
    double total = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        ClassKey key = class_key(paths[i], J, n);
        double w = path_measure(paths[i], mu);
        auto& g = groups[key];
        g.measure += w;
        g.indices.push_back(i);
        double y = w - comp;
        double t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    // map iteration is in key order, so the first strict maximum is the
    // lexicographically smallest maximal class
    const ClassKey* best_key = nullptr;
    const Group* best = nullptr;
    for (const auto& [key, group] : groups) {
        if (!best || group.measure > best->measure) {
            best_key = &key;
            best = &group;
        }
    }

    SelectResult out;
    out.total_measure = total;
    out.class_measure = best->measure;
    out.num_classes = groups.size();
    out.plan.key = *best_key;
    out.plan.n = n;
    out.plan.J = J;
    out.plan.i1 = floor_index(n, J[0]);
    out.plan.i2 = floor_index(n, J[1]);
    choose_letters(*best_key, mu.d(), out.plan.a, out.plan.b, out.plan.c,
                   out.plan.c_fallback_used);
    out.plan.members.reserve(best->indices.size());
    for (std::size_t idx : best->indices) out.plan.members.push_back(paths[idx]);
    double pigeonhole = std::pow(static_cast<double>(n + 1), 5.0) *
                        std::pow(static_cast<double>(mu.d()), 6.0);
    out.bound_ok = out.class_measure >= total / pigeonhole * (1.0 - 1e-9);
    return out;
}

ConcatPlan harvest_class_by_sampling(const StepDistribution& mu, const BoxSpec& spec, int n,
                                     std::int64_t samples, std::uint64_t seed) {
    require_two_checkpoints(spec, "harvest_class_by_sampling");
    constexpr std::size_t kMaxStoredPerClass = 20000;
    const int i1 = floor_index(n, spec.J[0]);
    const int i2 = floor_index(n, spec.J[1]);
    struct Bucket {
        std::int64_t hits = 0;
        std::vector<LatticePath> members;
    };
    std::map<ClassKey, Bucket> buckets;
    Rng rng(seed);
    LatticePath path;
    for (std::int64_t s = 0; s < samples; ++s) {
        path.steps.clear();
        path.prefix_lengths.assign(1, 0);
        ReducedWord w;
        for (int i = 0; i < n; ++i) {
            Letter step = mu.sample(rng);
            path.steps.push_back(step);
            w.push(step);
            path.prefix_lengths.push_back(static_cast<int>(w.length()));
        }
        double z1 = static_cast<double>(path.prefix_lengths[static_cast<std::size_t>(i1)]) / n;
        double z2 = static_cast<double>(path.prefix_lengths[static_cast<std::size_t>(i2)]) / n;
        if (!(std::abs(z1 - spec.x[0]) < spec.rho && std::abs(z2 - spec.x[1]) < spec.rho)) continue;
        ClassKey key = class_key(path, spec.J, n);
        Bucket& b = buckets[key];
        ++b.hits;
        if (b.members.size() < kMaxStoredPerClass) b.members.push_back(path);
    }
    if (buckets.empty())
        throw std::runtime_error("harvest_class_by_sampling: no sampled walk hit the box");
    const ClassKey* best_key = nullptr;
    Bucket* best = nullptr;
    for (auto& [key, bucket] : buckets) {
        if (!best || bucket.hits > best->hits) {
            best_key = &key;
            best = &bucket;
        }
    }
    ConcatPlan plan;
    plan.key = *best_key;
    plan.n = n;
    plan.J = spec.J;
    plan.i1 = i1;
    plan.i2 = i2;
    plan.members = std::move(best->members);
    plan.sampled_members = true;
    choose_letters(*best_key, mu.d(), plan.a, plan.b, plan.c, plan.c_fallback_used);
    return plan;
}

LatticePath concatenate(const ConcatPlan& plan, const std::vector<LatticePath>& members, int n) {
    const int k = static_cast<int>(members.size());
    if (k < 2) throw std::invalid_argument("concatenate: k >= 2 members required");
    if (n != plan.n) throw std::invalid_argument("concatenate: n differs from the plan");
    std::vector<PathAnatomy> parts;
    parts.reserve(members.size());
    for (const auto& m : members) {
        if (!(class_key(m, plan.J, n) == plan.key))
            throw std::invalid_argument("concatenate: mixed-class members");
        parts.push_back(anatomy(m, plan.J, n));
    }
    const int m1 = plan.key.m1, m2 = plan.key.m2;
    const int i1 = plan.i1, i2 = plan.i2;

    std::vector<Letter> steps;
    steps.reserve(static_cast<std::size_t>(k) * static_cast<std::size_t>(n) + 4 * (k - 1));
    ReducedWord running;   // actual reduced word of the assembled path
    ReducedWord expected;  // group product of the intended block factors

    auto append_range = [&](const LatticePath& g, int from, int to) {
        for (int i = from; i < to; ++i) {
            Letter s = g.steps[static_cast<std::size_t>(i)];
            steps.push_back(s);
            running.push(s);
        }
    };
    auto append_sep = [&](Letter s) {
        steps.push_back(s);
        running.push(s);
        expected.push(s);
    };

    // block 1: prefixes up to the meet, joined by a
    for (int i = 0; i < k; ++i) {
        if (i > 0) append_sep(plan.a);
        append_range(members[static_cast<std::size_t>(i)], 0, m1);
        expected = reduce_product(std::move(expected), parts[static_cast<std::size_t>(i)].meet_word);
    }
    // block 2: meet -> y1 segments, joined by b
    for (int i = 0; i < k; ++i) {
        if (i > 0) append_sep(plan.b);
        append_range(members[static_cast<std::size_t>(i)], m1, i1);
        const auto& p = parts[static_cast<std::size_t>(i)];
        expected = reduce_product(std::move(expected),
                                  p.y1.subword(static_cast<std::size_t>(p.L0),
                                               static_cast<std::size_t>(p.L1 - p.L0)));
    }
    // block 3: y1 -> meet segments in reversed member order, joined by b
    for (int i = k - 1; i >= 0; --i) {
        if (i < k - 1) append_sep(plan.b);
        append_range(members[static_cast<std::size_t>(i)], i1, m2);
        const auto& p = parts[static_cast<std::size_t>(i)];
        expected = reduce_product(std::move(expected),
                                  p.y1.subword(static_cast<std::size_t>(p.L0),
                                               static_cast<std::size_t>(p.L1 - p.L0))
                                      .inverse());
    }
    // block 4: meet -> y2 segments, joined by c
    for (int i = 0; i < k; ++i) {
        if (i > 0) append_sep(plan.c);
        append_range(members[static_cast<std::size_t>(i)], m2, i2);
        const auto& p = parts[static_cast<std::size_t>(i)];
        expected = reduce_product(std::move(expected),
                                  p.y2.subword(static_cast<std::size_t>(p.L0),
                                               static_cast<std::size_t>(p.L2 - p.L0)));
    }
    if (!(running == expected))
        throw std::logic_error("concatenate: assembled word disagrees with block factorization");
    // block 5: free tails
    for (int i = 0; i < k; ++i) append_range(members[static_cast<std::size_t>(i)], i2, n);

    LatticePath h = LatticePath::from_steps(std::move(steps));
    const int expect_steps = k * n + 4 * (k - 1);
    if (h.n() != expect_steps) throw std::logic_error("concatenate: wrong step length");
    return h;
}

ConcatAnchors concat_anchors(const ConcatPlan& plan, int k) {
    ConcatAnchors a;
    a.t1_step = k * plan.i1 + 2 * (k - 1);
    a.mid_step = k * plan.key.m2 + 3 * (k - 1);
    a.t2_step = k * plan.i2 + 4 * (k - 1);
    a.expected_l_t1 = k * plan.key.L1 + 2 * (k - 1);
    a.expected_l_mid = k * plan.key.L0 + (k - 1);
    a.expected_l_t2 = k * plan.key.L2 + 2 * (k - 1);
    a.exact = plan.key.L0 >= 1 && plan.key.L1 > plan.key.L0 && plan.key.L2 > plan.key.L0;
    return a;
}

ContainmentReport verify_containment(const ConcatPlan& plan, int k, const BoxSpec& spec,
                                     double rho_prime, int n, int trials, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("verify_containment: k >= 2 required");
    require_two_checkpoints(spec, "verify_containment");
    if (!(rho_prime > spec.rho))
        throw std::invalid_argument("verify_containment: rho' must exceed rho");
    if (plan.members.empty()) throw std::invalid_argument("verify_containment: plan has no members");
    if (!(plan.J == spec.J)) throw std::invalid_argument("verify_containment: J mismatch");

    ContainmentReport report;
    report.k = k;
    report.rho_prime = rho_prime;
    report.seed = seed;
    report.n_required = 4.0 * (spec.x[0] + spec.x[1] + 4.0) / (rho_prime - spec.rho);
    report.hypothesis_ok = static_cast<double>(n) >= report.n_required;

    const int n_tilde = k * n + 4 * (k - 1);
    const int j1 = floor_index(n_tilde, spec.J[0]);
    const int j2 = floor_index(n_tilde, spec.J[1]);

    Rng rng(seed);
    std::vector<LatticePath> tuple(static_cast<std::size_t>(k));
    for (int t = 0; t < trials; ++t) {
        ContainmentReport::Tuple rec;
        rec.member_idx.resize(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            auto idx = static_cast<std::size_t>(rng.unit() * static_cast<double>(plan.members.size()));
            if (idx >= plan.members.size()) idx = plan.members.size() - 1;
            rec.member_idx[static_cast<std::size_t>(i)] = idx;
            tuple[static_cast<std::size_t>(i)] = plan.members[idx];
        }
        LatticePath h = concatenate(plan, tuple, n);
        rec.step_length = h.n();
        rec.projection[0] = static_cast<double>(h.prefix_lengths[static_cast<std::size_t>(j1)]) / n_tilde;
        rec.projection[1] = static_cast<double>(h.prefix_lengths[static_cast<std::size_t>(j2)]) / n_tilde;
        rec.contained = std::abs(rec.projection[0] - spec.x[0]) < rho_prime &&
                        std::abs(rec.projection[1] - spec.x[1]) < rho_prime;
        if (rec.contained) ++report.num_pass;
        report.tuples.push_back(std::move(rec));
    }
    return report;
}

}  // namespace treeldp
