#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tcx/class_search.hpp"
#include "tcx/errors.hpp"

namespace tcx {

// Answer of a feasibility oracle on a set of facets.
enum class feasibility { yes, no, unknown };

// Smallest number of feasible generated subcomplexes needed to cover every
// facet of the ambient complex, bracketed from both sides. `upper` is empty
// when no cover was found within budget; `exact` means the interval collapsed
// to a single proven value. `cover` holds the facet masks witnessing `upper`.
// When `cover_impossible` is set, some facet provably lies in no feasible set,
// so no cover of any size exists; `lower` then exceeds the facet count.
struct cover_outcome {
    int lower = 1;
    std::optional<int> upper;
    bool exact = false;
    bool cover_impossible = false;
    std::vector<uint64_t> cover;
    uint64_t oracle_calls = 0;
    std::vector<std::string> notes;
};

namespace detail {

// Exact set cover by branch and bound over an explicit family of facet masks.
// Deterministic: the family is sorted, the most constrained facet is chosen
// first, and ties break toward lower indices. A greedy pass seeds the best
// known cover so the search starts with a finite bound to prune against.
class cover_search {
  public:
    cover_search(int facet_count, std::vector<uint64_t> family,
                 steady::time_point deadline)
        : n_(facet_count), family_(std::move(family)), deadline_(deadline) {
        std::sort(family_.begin(), family_.end());
        family_.erase(std::unique(family_.begin(), family_.end()), family_.end());
        all_ = facet_count == 64 ? ~uint64_t{0} : (uint64_t{1} << facet_count) - 1;
        for (const uint64_t s : family_) max_size_ = std::max(max_size_, popcount(s));
    }

    // Runs the search. Returns the minimum cover size, or nullopt when the
    // family cannot cover all facets. `proved` reports whether the search
    // exhausted the space (false after a deadline abort, in which case the
    // returned size is only the best cover found).
    std::optional<int> run() {
        uint64_t reach = 0;
        for (const uint64_t s : family_) reach |= s;
        if ((reach & all_) != all_) {
            proved_ = true;
            return std::nullopt;
        }
        greedy();
        chosen_.clear();
        dfs(0);
        proved_ = !aborted_;
        return best_;
    }

    bool proved() const { return proved_; }
    const std::vector<uint64_t>& best_sets() const { return best_sets_; }
    uint64_t nodes() const { return nodes_; }

  private:
    static int popcount(uint64_t m) { return __builtin_popcountll(m); }

    void greedy() {
        uint64_t covered = 0;
        std::vector<uint64_t> picks;
        while ((covered & all_) != all_) {
            uint64_t pick = 0;
            int gain = -1;
            for (const uint64_t s : family_) {
                int g = popcount(s & all_ & ~covered);
                if (g > gain) {
                    gain = g;
                    pick = s;
                }
            }
            picks.push_back(pick);
            covered |= pick;
        }
        best_ = static_cast<int>(picks.size());
        best_sets_ = std::move(picks);
    }

    void dfs(uint64_t covered) {
        if (aborted_) return;
        if ((++nodes_ & 1023) == 0 && steady::now() > deadline_) {
            aborted_ = true;
            return;
        }
        if ((covered & all_) == all_) {
            if (static_cast<int>(chosen_.size()) < best_) {
                best_ = static_cast<int>(chosen_.size());
                best_sets_ = chosen_;
            }
            return;
        }
        int depth = static_cast<int>(chosen_.size());
        int remaining = popcount(all_ & ~covered);
        if (depth + (remaining + max_size_ - 1) / max_size_ >= best_) return;

        int pick = -1, pick_count = 0;
        for (int f = 0; f < n_; ++f) {
            if (covered & (uint64_t{1} << f)) continue;
            int count = 0;
            for (const uint64_t s : family_)
                if (s & (uint64_t{1} << f)) ++count;
            if (pick < 0 || count < pick_count) {
                pick = f;
                pick_count = count;
            }
        }
        for (const uint64_t s : family_) {
            if (!(s & (uint64_t{1} << pick))) continue;
            chosen_.push_back(s);
            dfs(covered | s);
            chosen_.pop_back();
            if (aborted_) return;
        }
    }

    int n_;
    std::vector<uint64_t> family_;
    steady::time_point deadline_;
    uint64_t all_ = 0;
    int max_size_ = 1;
    int best_ = 0;
    std::vector<uint64_t> best_sets_;
    std::vector<uint64_t> chosen_;
    uint64_t nodes_ = 0;
    bool aborted_ = false;
    bool proved_ = false;
};

// Keeps only the masks that have no strict superset within the vector.
inline std::vector<uint64_t> maximal_masks(std::vector<uint64_t> masks) {
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    std::vector<uint64_t> out;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < masks.size() && !dominated; ++j)
            dominated = i != j && (masks[i] & masks[j]) == masks[i];
        if (!dominated) out.push_back(masks[i]);
    }
    return out;
}

}  // namespace detail

// Minimum number of feasible generated subcomplexes covering all facets of an
// ambient complex with `facet_count` facets. The oracle answers feasibility of
// a facet subset given as a bit mask and must be monotone decreasing: every
// nonempty subset of a feasible set is feasible. Up to `full_sweep_max` facets
// the entire subset lattice is classified level by level, definitive answers
// propagate upward for free, and an exact branch-and-bound set cover runs over
// the maximal feasible sets twice: once treating unknown answers as infeasible
// (upper bound) and once treating them as feasible (lower bound). The result
// is exact whenever the two searches agree. Beyond the sweep limit, one
// maximal feasible set is grown greedily from each facet and the exact cover
// search runs over those candidates, which bounds the minimum from above; the
// lower bound then comes from probing the full facet set.
inline cover_outcome min_cover_masks(
    int facet_count, const std::function<feasibility(uint64_t)>& oracle,
    detail::steady::time_point deadline, int full_sweep_max = 16) {
    if (facet_count < 1)
        throw precondition_violated("cover search needs at least one facet");
    if (facet_count > 64)
        throw too_large("cover search supports at most 64 facets, got " +
                        std::to_string(facet_count));

    cover_outcome out;
    const int n = facet_count;
    const uint64_t all = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;

    auto finish_exact = [&](int value, uint64_t refuted_family_size) {
        out.lower = value;
        out.upper = value;
        out.exact = true;
        if (value > 1)
            out.notes.push_back(
                "covers of size " + std::to_string(value - 1) +
                " were exhaustively refuted by branch-and-bound over " +
                std::to_string(refuted_family_size) + " maximal feasible facet sets");
    };

    if (n <= full_sweep_max) {
        // Complete classification of the subset lattice, smallest sets first,
        // encoded so that a worse status always dominates: 0 = yes,
        // 1 = unknown, 2 = no. A set with an infeasible subset is infeasible
        // without asking; a set with an unknown subset stays unknown because
        // the oracle is only trusted on sets whose subsets are all feasible.
        std::vector<uint8_t> feas(uint64_t{1} << n, 1);
        std::vector<std::vector<uint64_t>> by_size(n + 1);
        for (uint64_t m = 1; m <= all && m != 0; ++m)
            by_size[__builtin_popcountll(m)].push_back(m);

        bool timed_out = false;
        uint64_t unknown_count = 0;
        for (int k = 1; k <= n; ++k) {
            for (const uint64_t m : by_size[k]) {
                uint8_t inherited = 0;
                if (k > 1) {
                    for (uint64_t rest = m; rest && inherited != 2;) {
                        uint64_t bit = rest & (~rest + 1);
                        rest ^= bit;
                        inherited = std::max(inherited, feas[m ^ bit]);
                    }
                }
                if (inherited == 2) {
                    feas[m] = 2;
                    continue;
                }
                if (inherited == 1 || timed_out) {
                    feas[m] = 1;
                    ++unknown_count;
                    continue;
                }
                if (detail::steady::now() > deadline) {
                    timed_out = true;
                    feas[m] = 1;
                    ++unknown_count;
                    continue;
                }
                ++out.oracle_calls;
                switch (oracle(m)) {
                    case feasibility::yes: feas[m] = 0; break;
                    case feasibility::no: feas[m] = 2; break;
                    case feasibility::unknown:
                        feas[m] = 1;
                        ++unknown_count;
                        break;
                }
            }
        }
        if (timed_out)
            out.notes.push_back(
                "time budget exhausted during the subset sweep; unclassified "
                "subsets were treated as unknown");

        std::vector<uint64_t> proven, optimistic;
        for (uint64_t m = 1; m <= all && m != 0; ++m) {
            if (feas[m] == 0) proven.push_back(m);
            if (feas[m] != 2) optimistic.push_back(m);
        }
        proven = detail::maximal_masks(std::move(proven));
        optimistic = detail::maximal_masks(std::move(optimistic));

        detail::cover_search pess(n, proven, deadline);
        std::optional<int> k_yes = pess.run();
        detail::cover_search opt(n, optimistic, deadline);
        std::optional<int> k_opt = opt.run();

        if (!k_opt) {
            // Optimistic sets exclude only definitive answers, so failure to
            // cover means some facet is provably in no feasible set.
            out.cover_impossible = true;
            out.lower = n + 1;
            for (int f = 0; f < n; ++f)
                if (feas[uint64_t{1} << f] == 2) {
                    out.notes.push_back("no finite cover exists: facet " +
                                        std::to_string(f) +
                                        " lies in no feasible subcomplex");
                    break;
                }
            return out;
        }
        if (k_yes) {
            out.upper = *k_yes;
            out.cover = pess.best_sets();
        }
        out.lower = opt.proved() ? *k_opt : 1;
        if (k_yes && opt.proved() && *k_yes == *k_opt) {
            finish_exact(*k_yes, optimistic.size());
            out.cover = pess.best_sets();
        } else if (unknown_count > 0) {
            out.notes.push_back(std::to_string(unknown_count) +
                                " subsets had unknown feasibility; the interval "
                                "treats them as infeasible for the upper bound "
                                "and feasible for the lower bound");
        }
        if (!opt.proved())
            out.notes.push_back(
                "time budget exhausted inside the cover search; the lower "
                "bound falls back to 1");
        return out;
    }

    // Too many facets for the full sweep: grow one maximal feasible candidate
    // from each facet, in ascending order, and cover with those.
    out.notes.push_back("facet count " + std::to_string(n) +
                        " exceeds the exhaustive sweep limit " +
                        std::to_string(full_sweep_max) +
                        "; candidates grown greedily from each facet");

    auto timed_oracle = [&](uint64_t m) {
        if (detail::steady::now() > deadline) return feasibility::unknown;
        ++out.oracle_calls;
        return oracle(m);
    };

    feasibility full = timed_oracle(all);
    if (full == feasibility::yes) {
        out.cover = {all};
        finish_exact(1, 1);
        return out;
    }
    if (full == feasibility::no) {
        out.lower = 2;
        out.notes.push_back(
            "single-element cover refuted: the full facet set is infeasible");
    }

    std::vector<uint64_t> candidates;
    bool all_seeds_feasible = true;
    for (int f = 0; f < n; ++f) {
        uint64_t seed = uint64_t{1} << f;
        feasibility sf = timed_oracle(seed);
        if (sf == feasibility::no) {
            out.cover_impossible = true;
            out.lower = n + 1;
            out.notes.push_back("no finite cover exists: facet " +
                                std::to_string(f) +
                                " lies in no feasible subcomplex");
            return out;
        }
        if (sf != feasibility::yes) {
            all_seeds_feasible = false;
            continue;
        }
        uint64_t grown = seed;
        for (int j = 0; j < n; ++j) {
            uint64_t bit = uint64_t{1} << j;
            if (grown & bit) continue;
            if (timed_oracle(grown | bit) == feasibility::yes) grown |= bit;
        }
        candidates.push_back(grown);
    }
    if (!all_seeds_feasible) {
        out.notes.push_back(
            "some facets could not be confirmed feasible within budget; no "
            "cover was assembled");
        return out;
    }

    detail::cover_search search(n, detail::maximal_masks(std::move(candidates)),
                                deadline);
    std::optional<int> k_cand = search.run();
    if (k_cand) {
        out.upper = *k_cand;
        out.cover = search.best_sets();
        if (out.lower == *k_cand) {
            out.exact = true;
            out.notes.push_back(
                "interval closed: the lower bound from refuting smaller covers "
                "meets the cover found");
        }
    }
    return out;
}

}  // namespace tcx
