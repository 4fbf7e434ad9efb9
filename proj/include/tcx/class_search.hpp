#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "tcx/collapse.hpp"
#include "tcx/complex.hpp"
#include "tcx/contiguity.hpp"
#include "tcx/errors.hpp"

namespace tcx {

namespace detail {

using steady = std::chrono::steady_clock;

inline steady::time_point deadline_after_ms(std::uint64_t ms) {
    return steady::now() + std::chrono::milliseconds(static_cast<long long>(ms));
}

// Vertex assignments as byte strings; vertex indices fit in a byte because
// complexes are capped at 256 vertices.
using map_key = std::string;

inline map_key key_of(const std::vector<std::int32_t>& assign) {
    map_key k(assign.size(), '\0');
    for (std::size_t i = 0; i < assign.size(); ++i)
        k[i] = static_cast<char>(static_cast<unsigned char>(assign[i]));
    return k;
}

inline std::vector<std::int32_t> assign_of(const map_key& k) {
    std::vector<std::int32_t> a(k.size());
    for (std::size_t i = 0; i < k.size(); ++i)
        a[i] = static_cast<std::int32_t>(static_cast<unsigned char>(k[i]));
    return a;
}

/**
 * Breadth-first search over the moves that change a single vertex image.
 * A move at v from phi to phi[v -> w] is allowed exactly when for every
 * facet F containing v the set phi(F) ∪ {w} is a simplex of the codomain,
 * which is precisely contiguity of the two maps. Every contiguity step
 * decomposes into such moves (changing one vertex at a time inside the
 * spanning simplices stays contiguous), so reachability here decides the
 * contiguity class; the partition test in the suite exercises that claim.
 *
 * Neighbor generation is ordered (vertices ascending, then target vertices
 * ascending), so searches are deterministic.
 */
struct reach_request {
    const complex* dom = nullptr;
    const complex* cod = nullptr;
    std::vector<std::int32_t> start;
    std::vector<std::vector<std::int32_t>> targets;
    bool any_constant = false;   // also look for any constant map
    bool run_to_exhaustion = false;
    std::uint64_t max_states = 1'000'000;
    steady::time_point deadline;
    bool collect_keys = false;
};

struct reach_outcome {
    bool exhausted = false;
    std::uint64_t states = 0;
    // Index into the arena for each target (-1 if not reached), likewise for
    // the first constant map encountered.
    std::vector<std::int64_t> target_at;
    std::int64_t constant_at = -1;
    std::vector<map_key> arena;
    std::vector<std::int64_t> parent;
    std::unordered_set<map_key> keys;  // filled when collect_keys
};

inline reach_outcome reach(const reach_request& rq) {
    const complex& dom = *rq.dom;
    const complex& cod = *rq.cod;
    const int nd = dom.vertex_count();
    const int nc = cod.vertex_count();

    reach_outcome out;
    out.target_at.assign(rq.targets.size(), -1);

    std::unordered_map<map_key, std::int64_t> index_of;
    std::unordered_map<map_key, std::vector<std::size_t>> target_index;
    for (std::size_t t = 0; t < rq.targets.size(); ++t)
        target_index[key_of(rq.targets[t])].push_back(t);

    auto is_constant_key = [&](const map_key& k) {
        for (std::size_t i = 1; i < k.size(); ++i)
            if (k[i] != k[0]) return false;
        return true;
    };

    std::size_t targets_missing = rq.targets.size();
    bool constant_missing = rq.any_constant;

    auto note_state = [&](const map_key& k, std::int64_t idx) {
        auto it = target_index.find(k);
        if (it != target_index.end()) {
            for (std::size_t t : it->second) {
                if (out.target_at[t] < 0) {
                    out.target_at[t] = idx;
                    --targets_missing;
                }
            }
        }
        if (constant_missing && is_constant_key(k)) {
            out.constant_at = idx;
            constant_missing = false;
        }
    };

    auto done_early = [&] {
        return !rq.run_to_exhaustion && !rq.collect_keys && targets_missing == 0 &&
               !constant_missing;
    };

    map_key start_key = key_of(rq.start);
    out.arena.push_back(start_key);
    out.parent.push_back(-1);
    index_of.emplace(start_key, 0);
    note_state(start_key, 0);
    out.states = 1;

    std::deque<std::int64_t> queue;
    queue.push_back(0);

    bool budget_hit = false;
    std::vector<vertex_set> images(static_cast<std::size_t>(dom.facet_count()));

    while (!queue.empty() && !done_early()) {
        if (steady::now() > rq.deadline) {
            budget_hit = true;
            break;
        }
        std::int64_t cur = queue.front();
        queue.pop_front();
        map_key cur_key = out.arena[static_cast<std::size_t>(cur)];

        for (int fi = 0; fi < dom.facet_count(); ++fi) {
            vertex_set img;
            dom.facets()[static_cast<std::size_t>(fi)].for_each([&](int v) {
                img.set(static_cast<unsigned char>(cur_key[static_cast<std::size_t>(v)]));
            });
            images[static_cast<std::size_t>(fi)] = img;
        }

        for (int v = 0; v < nd && !done_early(); ++v) {
            int old = static_cast<unsigned char>(cur_key[static_cast<std::size_t>(v)]);
            for (int w = 0; w < nc; ++w) {
                if (w == old) continue;
                bool legal = true;
                for (std::int32_t fi : dom.star(v)) {
                    vertex_set u = images[static_cast<std::size_t>(fi)];
                    u.set(w);
                    if (!cod.contains(u)) {
                        legal = false;
                        break;
                    }
                }
                if (!legal) continue;
                map_key next = cur_key;
                next[static_cast<std::size_t>(v)] = static_cast<char>(w);
                if (index_of.count(next)) continue;
                if (out.states >= rq.max_states) {
                    budget_hit = true;
                    break;
                }
                std::int64_t idx = static_cast<std::int64_t>(out.arena.size());
                out.arena.push_back(next);
                out.parent.push_back(cur);
                index_of.emplace(std::move(next), idx);
                ++out.states;
                note_state(out.arena.back(), idx);
                queue.push_back(idx);
            }
            if (budget_hit) break;
        }
        if (budget_hit) break;
    }

    out.exhausted = !budget_hit && queue.empty();
    if (done_early()) out.exhausted = false;  // stopped early; class may be larger
    if (rq.collect_keys)
        for (const auto& k : out.arena) out.keys.insert(k);
    return out;
}

// Path from the start state to the given arena index, as assignments.
inline std::vector<std::vector<std::int32_t>> reach_path(const reach_outcome& out,
                                                         std::int64_t at) {
    std::vector<std::vector<std::int32_t>> path;
    for (std::int64_t i = at; i >= 0; i = out.parent[static_cast<std::size_t>(i)])
        path.push_back(assign_of(out.arena[static_cast<std::size_t>(i)]));
    std::reverse(path.begin(), path.end());
    return path;
}

inline core_result trivial_core(const complex_ptr& k) {
    return core_result{k, {}, identity_map(k), identity_map(k)};
}

// r_cod ∘ m ∘ i_dom as a plain assignment between the cores.
inline std::vector<std::int32_t> conjugate_assign(const simplicial_map& m,
                                                  const core_result& dom_core,
                                                  const core_result& cod_core) {
    const int n = dom_core.core->vertex_count();
    std::vector<std::int32_t> a(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        a[static_cast<std::size_t>(v)] = cod_core.retraction(m(dom_core.inclusion(v)));
    return a;
}

/**
 * Expands a core-level path into a chain between the original maps:
 *
 *   phi ... (i_L r_L) phi ... (i_L r_L) phi (i_K r_K) = lifted start
 *       ... lifted path ...
 *   lifted end = (i_L r_L) psi (i_K r_K) ... (i_L r_L) psi ... psi
 *
 * The outer sections come from the collapse certificates of the two cores;
 * pre- and post-composition with a fixed simplicial map preserve contiguity,
 * so every consecutive pair stays contiguous. Consecutive duplicates are
 * merged.
 */
inline contiguity_chain expand_core_path(const simplicial_map& phi, const simplicial_map& psi,
                                         const std::vector<std::vector<std::int32_t>>& core_path,
                                         const core_result& dc, const core_result& cc,
                                         const contiguity_chain& dom_chain,
                                         const contiguity_chain& cod_chain) {
    std::vector<simplicial_map> maps;

    auto push = [&](simplicial_map m) {
        if (maps.empty() || !(maps.back() == m)) maps.push_back(std::move(m));
    };

    // cod_chain entries c_t : L -> L run from the identity to i_L ∘ r_L.
    for (const auto& c : cod_chain.maps()) push(compose(c, phi));
    // dom_chain entries k_t : K -> K run from the identity to i_K ∘ r_K.
    const simplicial_map& lr = cod_chain.maps().back();
    for (const auto& kt : dom_chain.maps()) push(compose(compose(lr, phi), kt));

    for (const auto& a : core_path) {
        simplicial_map mid(dc.core, cc.core, a);
        push(compose(cc.inclusion, compose(mid, dc.retraction)));
    }

    for (auto it = dom_chain.maps().rbegin(); it != dom_chain.maps().rend(); ++it)
        push(compose(compose(lr, psi), *it));
    for (auto it = cod_chain.maps().rbegin(); it != cod_chain.maps().rend(); ++it)
        push(compose(*it, psi));

    return contiguity_chain(std::move(maps), phi, psi);
}

struct multi_decision {
    std::vector<verdict> per_target;
    verdict constant_verdict = verdict::unknown;
    std::uint64_t states_explored = 0;
    bool exhausted = false;
    std::vector<std::optional<contiguity_chain>> chains;
    std::optional<contiguity_chain> constant_chain;
};

// Process-wide cache of definitive verdicts for single-target and
// constant-reachability queries, keyed by the conjugated problem.
struct memo_entry {
    verdict v;
    std::uint64_t states;
    std::uint64_t budget_states;  // budget under which an unknown was recorded
};

inline std::unordered_map<std::string, memo_entry>& memo_table() {
    static std::unordered_map<std::string, memo_entry> table;
    return table;
}

inline std::mutex& memo_mutex() {
    static std::mutex m;
    return m;
}

inline std::string memo_key(const complex& dom, const complex& cod,
                            const std::vector<std::int32_t>& start,
                            const std::vector<std::vector<std::int32_t>>& targets,
                            bool any_constant) {
    std::string key;
    key.reserve(64);
    auto put_complex = [&](const complex& c) {
        key += std::to_string(c.vertex_count());
        key += ':';
        for (const auto& f : c.facets()) {
            f.for_each([&](int v) {
                key += static_cast<char>(static_cast<unsigned char>(v));
            });
            key += '|';
        }
        key += ';';
    };
    put_complex(dom);
    put_complex(cod);
    key += key_of(start);
    key += ';';
    for (const auto& t : targets) {
        key += key_of(t);
        key += ',';
    }
    key += any_constant ? "C" : "-";
    return key;
}

/**
 * Decides which of the given maps (and optionally any constant map) lie in
 * the contiguity class of phi. Runs one search from phi, by default after
 * collapsing both complexes to their cores; the conjugated problem has the
 * same answer because pre/post-composing with the collapse retractions maps
 * chains to chains in both directions, and found witnesses are expanded back
 * through the collapse certificates.
 */
inline multi_decision decide_class(const simplicial_map& phi,
                                   const std::vector<simplicial_map>& targets,
                                   bool any_constant, const search_budget& budget,
                                   steady::time_point deadline, bool reduce,
                                   bool want_chains) {
    budget.validate();
    for (const auto& t : targets) {
        if (!same_structure(*t.domain(), *phi.domain()) ||
            !same_structure(*t.codomain(), *phi.codomain()))
            throw domain_mismatch(
                "class query requires maps with equal domain and codomain");
    }

    // One-step resolution first: a direct contiguity hit gives the shortest
    // possible chain and skips the search for every question it answers.
    multi_decision fast;
    fast.per_target.assign(targets.size(), verdict::unknown);
    fast.chains.resize(targets.size());
    fast.states_explored = 1;
    bool fast_complete = true;
    auto two_step = [&](const simplicial_map& a, const simplicial_map& b) {
        std::vector<simplicial_map> maps{a};
        if (!(a == b)) maps.push_back(b);
        return contiguity_chain(std::move(maps), a, b);
    };
    for (std::size_t t = 0; t < targets.size(); ++t) {
        if (is_contiguous(phi, targets[t])) {
            fast.per_target[t] = verdict::yes;
            if (want_chains) fast.chains[t] = two_step(phi, targets[t]);
        } else {
            fast_complete = false;
        }
    }
    if (any_constant) {
        fast.constant_verdict = verdict::unknown;
        for (int w = 0; w < phi.codomain()->vertex_count(); ++w) {
            simplicial_map cw = constant_map(phi.domain(), phi.codomain(), w);
            if (is_contiguous(phi, cw)) {
                fast.constant_verdict = verdict::yes;
                if (want_chains) fast.constant_chain = two_step(phi, cw);
                break;
            }
        }
        if (fast.constant_verdict != verdict::yes) fast_complete = false;
    }
    if (fast_complete) return fast;

    core_result dc = reduce ? core(phi.domain()) : trivial_core(phi.domain());
    core_result cc = reduce ? core(phi.codomain()) : trivial_core(phi.codomain());

    // Only the questions the direct check left open go to the search; targets
    // it already answered would make the search stop later, not sooner.
    std::vector<std::size_t> open;
    for (std::size_t t = 0; t < targets.size(); ++t)
        if (fast.per_target[t] != verdict::yes) open.push_back(t);
    bool open_constant = any_constant && fast.constant_verdict != verdict::yes;

    reach_request rq;
    rq.dom = dc.core.get();
    rq.cod = cc.core.get();
    rq.start = conjugate_assign(phi, dc, cc);
    rq.targets.reserve(open.size());
    for (std::size_t t : open) rq.targets.push_back(conjugate_assign(targets[t], dc, cc));
    rq.any_constant = open_constant;
    rq.max_states = budget.max_states;
    rq.deadline = deadline;

    // Cache definitive verdicts for the single-question forms.
    std::string mkey;
    bool memo_usable = open.size() + (open_constant ? 1 : 0) == 1 &&
                       targets.size() + (any_constant ? 1 : 0) == 1 && !want_chains;
    if (memo_usable) {
        mkey = memo_key(*rq.dom, *rq.cod, rq.start, rq.targets, rq.any_constant);
        std::lock_guard<std::mutex> lock(memo_mutex());
        auto it = memo_table().find(mkey);
        if (it != memo_table().end()) {
            const memo_entry& e = it->second;
            bool fresh_enough =
                e.v != verdict::unknown || e.budget_states >= budget.max_states;
            if (fresh_enough) {
                multi_decision md;
                md.states_explored = e.states;
                md.exhausted = e.v != verdict::unknown;
                if (any_constant) {
                    md.constant_verdict = e.v;
                } else {
                    md.per_target.assign(1, e.v);
                    md.chains.resize(1);
                }
                return md;
            }
        }
    }

    reach_outcome out = reach(rq);

    multi_decision md = std::move(fast);
    md.states_explored = out.states;
    md.exhausted = out.exhausted;
    for (std::size_t i = 0; i < open.size(); ++i) {
        if (out.target_at[i] >= 0)
            md.per_target[open[i]] = verdict::yes;
        else
            md.per_target[open[i]] = out.exhausted ? verdict::no : verdict::unknown;
    }
    if (open_constant)
        md.constant_verdict = out.constant_at >= 0
                                  ? verdict::yes
                                  : (out.exhausted ? verdict::no : verdict::unknown);

    if (want_chains) {
        contiguity_chain dom_chain = core_identity_chain(phi.domain(), dc);
        contiguity_chain cod_chain = core_identity_chain(phi.codomain(), cc);
        for (std::size_t i = 0; i < open.size(); ++i) {
            if (out.target_at[i] < 0) continue;
            md.chains[open[i]] = expand_core_path(phi, targets[open[i]],
                                                  reach_path(out, out.target_at[i]), dc,
                                                  cc, dom_chain, cod_chain);
        }
        if (open_constant && out.constant_at >= 0) {
            auto path = reach_path(out, out.constant_at);
            int core_target = path.back()[0];
            simplicial_map psi =
                constant_map(phi.domain(), phi.codomain(), cc.inclusion(core_target));
            md.constant_chain =
                expand_core_path(phi, psi, path, dc, cc, dom_chain, cod_chain);
        }
    }

    if (memo_usable) {
        verdict v = rq.any_constant ? md.constant_verdict : md.per_target[open[0]];
        std::lock_guard<std::mutex> lock(memo_mutex());
        memo_table()[mkey] = memo_entry{v, md.states_explored, budget.max_states};
    }
    return md;
}

}  // namespace detail

/**
 * Decides whether phi and psi lie in the same contiguity class. Searches
 * breadth-first over single-vertex moves from phi, after collapsing both
 * complexes to their cores; a "yes" carries a chain between the original
 * maps, shortest at core level. "no" means the whole class was enumerated.
 */
inline class_decision same_contiguity_class(const simplicial_map& phi,
                                            const simplicial_map& psi,
                                            const search_budget& budget = {},
                                            bool reduce = true) {
    auto md = detail::decide_class(phi, {psi}, false, budget,
                                   detail::deadline_after_ms(budget.max_millis), reduce,
                                   true);
    class_decision d;
    d.v = md.per_target[0];
    d.states_explored = md.states_explored;
    d.chain = std::move(md.chains[0]);
    return d;
}

/**
 * Decides whether the contiguity class of phi contains a constant map; this
 * is the feasibility question behind the category covers. A "yes" carries a
 * chain from phi to a concrete constant map.
 */
inline class_decision class_contains_constant(const simplicial_map& phi,
                                              const search_budget& budget = {},
                                              bool reduce = true) {
    auto md = detail::decide_class(phi, {}, true, budget,
                                   detail::deadline_after_ms(budget.max_millis), reduce,
                                   true);
    class_decision d;
    d.v = md.constant_verdict;
    d.states_explored = md.states_explored;
    d.chain = std::move(md.constant_chain);
    return d;
}

/**
 * Enumerates every vertex assignment of the maps dom -> cod, as the full
 * contiguity class of phi seen by the raw move search (no core reduction).
 * Exposes the class partition for cross-checking against the definition;
 * throws too_large when the class would exceed the state budget.
 */
inline std::vector<std::vector<std::int32_t>> contiguity_class_members(
    const simplicial_map& phi, const search_budget& budget = {}) {
    budget.validate();
    detail::reach_request rq;
    rq.dom = phi.domain().get();
    rq.cod = phi.codomain().get();
    rq.start = phi.assignment();
    rq.run_to_exhaustion = true;
    rq.max_states = budget.max_states;
    rq.deadline = detail::deadline_after_ms(budget.max_millis);
    detail::reach_outcome out = detail::reach(rq);
    if (!out.exhausted)
        throw too_large("contiguity class exceeds the search budget");
    std::vector<std::vector<std::int32_t>> members;
    members.reserve(out.arena.size());
    for (const auto& k : out.arena) members.push_back(detail::assign_of(k));
    return members;
}

/**
 * All simplicial maps dom -> cod, enumerated by backtracking over vertex
 * images with face-feasibility pruning. Throws too_large if there are more
 * than limit maps. Exponential by nature; meant for small complexes and for
 * cross-checking the searches against definitions.
 */
inline std::vector<std::vector<std::int32_t>> all_simplicial_maps(
    const complex& dom, const complex& cod, std::uint64_t limit = 1'000'000) {
    const int nd = dom.vertex_count();
    const int nc = cod.vertex_count();
    std::vector<std::vector<std::int32_t>> out;
    std::vector<std::int32_t> assign(static_cast<std::size_t>(nd), -1);

    // Partial images must already be faces; they only grow along the branch.
    auto feasible = [&](int just_set) {
        for (std::int32_t fi : dom.star(just_set)) {
            vertex_set img;
            dom.facets()[static_cast<std::size_t>(fi)].for_each([&](int v) {
                if (assign[static_cast<std::size_t>(v)] >= 0)
                    img.set(assign[static_cast<std::size_t>(v)]);
            });
            if (!cod.contains(img)) return false;
        }
        return true;
    };

    auto dfs = [&](auto&& self, int v) -> void {
        if (v == nd) {
            if (out.size() >= limit)
                throw too_large("simplicial map enumeration exceeds the budget");
            out.push_back(assign);
            return;
        }
        for (int w = 0; w < nc; ++w) {
            assign[static_cast<std::size_t>(v)] = w;
            if (feasible(v)) self(self, v + 1);
        }
        assign[static_cast<std::size_t>(v)] = -1;
    };
    dfs(dfs, 0);
    return out;
}

}  // namespace tcx
