#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcx/complex.hpp"
#include "tcx/contiguity.hpp"
#include "tcx/errors.hpp"

namespace tcx {

/**
 * A vertex v is dominated by v' != v when every facet containing v also
 * contains v'. Deleting a dominated vertex is a strong collapse step and
 * does not change the strong homotopy type.
 *
 * Returns the smallest dominating vertex, or nullopt.
 */
inline std::optional<std::int32_t> is_dominated(const complex& k, int v) {
    if (v < 0 || v >= k.vertex_count())
        throw unknown_vertex("vertex index " + std::to_string(v) +
                             " outside the complex");
    vertex_set inter;
    bool first = true;
    for (std::int32_t fi : k.star(v)) {
        const vertex_set& f = k.facets()[static_cast<std::size_t>(fi)];
        inter = first ? f : (inter & f);
        first = false;
    }
    inter.reset(v);
    if (inter.empty()) return std::nullopt;
    return inter.lowest();
}

// One strong collapse step, in the vertex indices of the original complex.
struct collapse_step {
    std::int32_t deleted;
    std::int32_t dominator;
};

/**
 * Result of iterated strong collapsing. The retraction sends each deleted
 * vertex to its dominator, resolved through later deletions; inclusion
 * embeds the core back. retraction ∘ inclusion is the identity on the core.
 */
struct core_result {
    complex_ptr core;
    std::vector<collapse_step> steps;
    simplicial_map retraction;  // original -> core
    simplicial_map inclusion;   // core -> original
};

namespace detail {

// Dominator search on a working facet list restricted to live vertices.
inline std::optional<std::int32_t> dominated_in(const std::vector<vertex_set>& facets,
                                                int v) {
    vertex_set inter;
    bool first = true;
    for (const auto& f : facets) {
        if (!f.test(v)) continue;
        inter = first ? f : (inter & f);
        first = false;
    }
    if (first) return std::nullopt;  // not covered; cannot happen for live vertices
    inter.reset(v);
    if (inter.empty()) return std::nullopt;
    return inter.lowest();
}

}  // namespace detail

/**
 * Iterated strong collapse: repeatedly deletes the smallest dominated vertex
 * (using its smallest dominator) until no vertex is dominated. The result is
 * the unique core up to isomorphism; the fixed deletion order makes this
 * function deterministic.
 */
inline core_result core(const complex_ptr& kp) {
    const complex& k = *kp;
    const int n = k.vertex_count();
    std::vector<vertex_set> cur = k.facets();
    std::vector<bool> live(static_cast<std::size_t>(n), true);
    std::vector<std::int32_t> dominator_of(static_cast<std::size_t>(n), -1);
    std::vector<collapse_step> steps;

    for (;;) {
        int deleted = -1;
        for (int v = 0; v < n && deleted < 0; ++v) {
            if (!live[static_cast<std::size_t>(v)]) continue;
            if (auto d = detail::dominated_in(cur, v)) {
                steps.push_back({v, *d});
                dominator_of[static_cast<std::size_t>(v)] = *d;
                live[static_cast<std::size_t>(v)] = false;
                for (auto& f : cur) f.reset(v);
                cur = detail::prune_maximal(std::move(cur));
                deleted = v;
            }
        }
        if (deleted < 0) break;
    }

    std::vector<std::int32_t> to_core(static_cast<std::size_t>(n), -1);
    std::vector<std::int32_t> to_orig;
    std::vector<std::string> labels;
    for (int v = 0; v < n; ++v) {
        if (!live[static_cast<std::size_t>(v)]) continue;
        to_core[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(to_orig.size());
        to_orig.push_back(v);
        labels.push_back(k.label(v));
    }
    std::vector<vertex_set> core_facets;
    core_facets.reserve(cur.size());
    for (const auto& f : cur) {
        vertex_set g;
        f.for_each([&](int v) { g.set(to_core[static_cast<std::size_t>(v)]); });
        core_facets.push_back(g);
    }
    complex_ptr core_cx = complex::from_masks(std::move(core_facets), std::move(labels));

    std::vector<std::int32_t> retr(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        int x = v;
        while (!live[static_cast<std::size_t>(x)]) x = dominator_of[static_cast<std::size_t>(x)];
        retr[static_cast<std::size_t>(v)] = to_core[static_cast<std::size_t>(x)];
    }
    simplicial_map r(kp, core_cx, std::move(retr));
    simplicial_map i(core_cx, kp, to_orig);
    return core_result{core_cx, std::move(steps), std::move(r), std::move(i)};
}

inline bool is_strongly_collapsible(const complex_ptr& kp) {
    return core(kp).core->vertex_count() == 1;
}

/**
 * Certificate that the identity of K and inclusion ∘ retraction lie in the
 * same contiguity class. Entry t resolves the first t collapse steps, so
 * consecutive entries differ by redirecting one deleted vertex to its
 * dominator, which is contiguous by the domination property.
 */
inline contiguity_chain core_identity_chain(const complex_ptr& kp, const core_result& c) {
    const int n = kp->vertex_count();
    std::vector<std::int32_t> del_step(static_cast<std::size_t>(n), -1);
    std::vector<std::int32_t> dominator_of(static_cast<std::size_t>(n), -1);
    for (std::size_t t = 0; t < c.steps.size(); ++t) {
        del_step[static_cast<std::size_t>(c.steps[t].deleted)] = static_cast<std::int32_t>(t);
        dominator_of[static_cast<std::size_t>(c.steps[t].deleted)] = c.steps[t].dominator;
    }
    auto resolve_prefix = [&](int v, int t) {
        int x = v;
        while (del_step[static_cast<std::size_t>(x)] >= 0 &&
               del_step[static_cast<std::size_t>(x)] < t)
            x = dominator_of[static_cast<std::size_t>(x)];
        return x;
    };
    std::vector<simplicial_map> maps;
    maps.reserve(c.steps.size() + 1);
    for (int t = 0; t <= static_cast<int>(c.steps.size()); ++t) {
        std::vector<std::int32_t> assign(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v)
            assign[static_cast<std::size_t>(v)] = resolve_prefix(v, t);
        maps.emplace_back(kp, kp, std::move(assign));
    }
    simplicial_map first = maps.front();
    simplicial_map last = maps.back();
    return contiguity_chain(std::move(maps), std::move(first), std::move(last));
}

namespace detail {

struct splitmix64 {
    std::uint64_t state;
    explicit splitmix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t operator()() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Uniform enough for fixture generation; bias is irrelevant here.
    std::uint64_t below(std::uint64_t bound) { return (*this)() % bound; }
};

}  // namespace detail

/**
 * Inverse of a strong collapse step: adds one fresh vertex w attached so
 * that an existing vertex dominates it. Picks a seeded-random vertex v and a
 * nonempty random subset S of the facets containing v, and replaces each
 * F in S by F ∪ {w}. The facet count is unchanged and the core is unchanged
 * up to isomorphism. Deterministic for a fixed seed.
 */
inline complex_ptr strong_expansion(const complex_ptr& kp, std::uint64_t seed) {
    const complex& k = *kp;
    detail::splitmix64 rng(seed);
    int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(k.vertex_count())));
    std::vector<std::int32_t> star = k.star(v);
    std::uint64_t pick = 1 + rng.below(star.size());
    for (std::uint64_t i = 0; i < pick; ++i) {
        std::uint64_t j = i + rng.below(star.size() - i);
        std::swap(star[static_cast<std::size_t>(i)], star[static_cast<std::size_t>(j)]);
    }
    star.resize(static_cast<std::size_t>(pick));

    std::string fresh;
    for (int t = 0;; ++t) {
        fresh = "x" + std::to_string(t);
        if (k.vertex_index(fresh) < 0) break;
    }
    std::vector<std::string> labels = k.labels();
    labels.push_back(fresh);
    int w = k.vertex_count();

    std::vector<vertex_set> facets = k.facets();
    for (std::int32_t fi : star) facets[static_cast<std::size_t>(fi)].set(w);
    return complex::from_masks(std::move(facets), std::move(labels));
}

}  // namespace tcx
