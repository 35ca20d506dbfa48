#pragma once

#include <array>
#include <cstdint>
#include <tuple>
#include <vector>

#include "treeldp/box.hpp"
#include "treeldp/time_grid.hpp"
#include "treeldp/walk.hpp"
#include "treeldp/words.hpp"

namespace treeldp {

/// Decomposition data of one path relative to the two checkpoints:
/// y1 = g([n t1]), y2 = g([n t2]), their meet, the three word lengths, and
/// the last/first visit times m1 <= [n t1] <= m2 of the meet around t1.
struct PathAnatomy {
    ReducedWord y1, y2, meet_word;
    int L0 = 0, L1 = 0, L2 = 0;
    int m1 = 0, m2 = 0;
};

/// Pigeonhole class label: segment lengths, visit times, and the boundary
/// letters of the three reduced segments (meet, meet^-1 y1, meet^-1 y2).
/// 0 encodes "no letter" (empty segment). When L0 == L2 and the stretch
/// (m2, [n t2]] forms a loop at the meet, the third letter pair holds the
/// loop's first and last step letters instead.
struct ClassKey {
    int L0 = 0, L1 = 0, L2 = 0;
    int m1 = 0, m2 = 0;
    bool loop_case = false;
    std::array<int, 6> letters{};  // w0 first/last, w1 first/last, w2-or-loop first/last

    auto tie() const {
        return std::tie(L0, L1, L2, m1, m2, loop_case, letters);
    }
    friend bool operator==(const ClassKey& a, const ClassKey& b) { return a.tie() == b.tie(); }
    friend bool operator<(const ClassKey& a, const ClassKey& b) { return a.tie() < b.tie(); }
};

/// Everything needed to concatenate members of one class: the separator
/// letters chosen to avoid cancellation at the guaranteed junctions, the
/// checkpoint indices, and the member paths.
struct ConcatPlan {
    ClassKey key;
    Letter a{1}, b{1}, c{1};
    int n = 0;
    TimeGrid J{std::vector<double>{0.5, 1.0}};
    int i1 = 0, i2 = 0;  // [n t1], [n t2]
    std::vector<LatticePath> members;
    bool sampled_members = false;  // true when harvested by rejection sampling
    bool c_fallback_used = false;  // degenerate c-choice had no meet letter to avoid
};

/// Anatomy of one path for a two-checkpoint grid.
PathAnatomy anatomy(const LatticePath& path, const TimeGrid& J, int n);

/// Class label of one path (anatomy plus boundary-letter conventions).
ClassKey class_key(const LatticePath& path, const TimeGrid& J, int n);

struct BoxSetResult {
    std::vector<LatticePath> paths;
    double measure = 0.0;
};

/// All n-step paths in the box (strict inequality) with their total measure.
/// Enumeration-capped.
BoxSetResult box_set(const StepDistribution& mu, const BoxSpec& spec, int n,
                     std::int64_t cap = kDefaultEnumerationCap);

struct SelectResult {
    ConcatPlan plan;
    double class_measure = 0.0;
    double total_measure = 0.0;
    std::size_t num_classes = 0;
    bool bound_ok = false;  // class_measure >= total_measure / ((n+1)^5 d^6)
};

/// Groups paths by ClassKey, keeps a maximal-measure class (lexicographically
/// smallest key on ties) and chooses the separator letters a, b, c.
SelectResult select_class(const std::vector<LatticePath>& paths, const StepDistribution& mu,
                          const TimeGrid& J, int n);

/// Harvests members of the most-hit class among simulated walks that land in
/// the box. For n beyond the enumeration cap; the measure bound is not
/// checked in this mode (plan.sampled_members is set).
ConcatPlan harvest_class_by_sampling(const StepDistribution& mu, const BoxSpec& spec, int n,
                                     std::int64_t samples, std::uint64_t seed);

/// Interleaves k >= 2 members of one class into the five-block path
/// g_1(m1) a g_2(m1) a ... | up-segments joined by b | down-segments in
/// reversed order joined by b | w2-segments joined by c | free tails.
/// The result has exactly k n + 4(k-1) steps. Throws on mixed-class members.
LatticePath concatenate(const ConcatPlan& plan, const std::vector<LatticePath>& members, int n);

/// Step indices and exact reduced lengths of the three block anchors of a
/// k-fold concatenation. `exact` is false in degenerate classes (an empty
/// segment makes separators cancel each other, shifting the anchor length by
/// O(k); the containment claim is unaffected).
struct ConcatAnchors {
    int t1_step = 0, mid_step = 0, t2_step = 0;
    int expected_l_t1 = 0, expected_l_mid = 0, expected_l_t2 = 0;
    bool exact = false;
};
ConcatAnchors concat_anchors(const ConcatPlan& plan, int k);

struct ContainmentReport {
    bool hypothesis_ok = false;
    double n_required = 0.0;
    int k = 0;
    double rho_prime = 0.0;
    std::uint64_t seed = 0;
    struct Tuple {
        std::vector<std::size_t> member_idx;
        int step_length = 0;
        std::array<double, 2> projection{};
        bool contained = false;
    };
    std::vector<Tuple> tuples;
    std::size_t num_pass = 0;
};

/// Samples `trials` random k-tuples from plan.members, concatenates each and
/// checks the rescaled projections against the enlarged box B(x, rho').
/// Also reports whether n >= 4 (x1 + x2 + 4) / (rho' - rho) held; failures
/// are permitted (and reported) when it did not.
ContainmentReport verify_containment(const ConcatPlan& plan, int k, const BoxSpec& spec,
                                     double rho_prime, int n, int trials, std::uint64_t seed);

}  // namespace treeldp
