#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "tcx/complex.hpp"

namespace tcx {

namespace detail {

// Per-vertex invariant: sorted sizes of the facets containing the vertex.
inline std::vector<std::vector<int>> vertex_signatures(const complex& k) {
    std::vector<std::vector<int>> sig(static_cast<std::size_t>(k.vertex_count()));
    for (int v = 0; v < k.vertex_count(); ++v) {
        for (std::int32_t fi : k.star(v))
            sig[static_cast<std::size_t>(v)].push_back(
                k.facets()[static_cast<std::size_t>(fi)].count());
        std::sort(sig[static_cast<std::size_t>(v)].begin(),
                  sig[static_cast<std::size_t>(v)].end());
    }
    return sig;
}

}  // namespace detail

/**
 * Searches for a facet-structure-preserving vertex bijection from a to b.
 * Returns the assignment (a-vertex index -> b-vertex index) or nullopt.
 * Backtracking over vertices, most constrained first, with facet-size
 * signatures as the pruning invariant. Intended for core-sized complexes.
 */
inline std::optional<std::vector<std::int32_t>> is_isomorphic(const complex& a,
                                                              const complex& b) {
    const int n = a.vertex_count();
    if (n != b.vertex_count() || a.facet_count() != b.facet_count()) return std::nullopt;
    {
        std::vector<int> sa, sb;
        for (const auto& f : a.facets()) sa.push_back(f.count());
        for (const auto& f : b.facets()) sb.push_back(f.count());
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
    }

    auto sig_a = detail::vertex_signatures(a);
    auto sig_b = detail::vertex_signatures(b);

    std::vector<std::vector<std::int32_t>> candidates(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        for (int w = 0; w < n; ++w)
            if (sig_a[static_cast<std::size_t>(v)] == sig_b[static_cast<std::size_t>(w)])
                candidates[static_cast<std::size_t>(v)].push_back(w);
        if (candidates[static_cast<std::size_t>(v)].empty()) return std::nullopt;
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return candidates[static_cast<std::size_t>(x)].size() <
               candidates[static_cast<std::size_t>(y)].size();
    });

    std::vector<std::int32_t> assign(static_cast<std::size_t>(n), -1);
    vertex_set used;

    // Partial consistency: facets of a whose assigned part maps outside every
    // b-facet of the right size can never extend to an isomorphism.
    auto consistent = [&](int just_assigned) {
        for (std::int32_t fi : a.star(just_assigned)) {
            const vertex_set& f = a.facets()[static_cast<std::size_t>(fi)];
            vertex_set img;
            int assigned_in_f = 0;
            bool complete = true;
            f.for_each([&](int v) {
                if (assign[static_cast<std::size_t>(v)] >= 0) {
                    img.set(assign[static_cast<std::size_t>(v)]);
                    ++assigned_in_f;
                } else {
                    complete = false;
                }
            });
            if (complete) {
                if (b.facet_index(img) < 0) return false;
            } else {
                bool fits = false;
                int need = f.count();
                for (const auto& g : b.facets()) {
                    if (g.count() == need && img.subset_of(g)) {
                        fits = true;
                        break;
                    }
                }
                if (!fits) return false;
                (void)assigned_in_f;
            }
        }
        return true;
    };

    auto dfs = [&](auto&& self, int depth) -> bool {
        if (depth == n) return true;
        int v = order[static_cast<std::size_t>(depth)];
        for (std::int32_t w : candidates[static_cast<std::size_t>(v)]) {
            if (used.test(w)) continue;
            assign[static_cast<std::size_t>(v)] = w;
            used.set(w);
            if (consistent(v) && self(self, depth + 1)) return true;
            used.reset(w);
            assign[static_cast<std::size_t>(v)] = -1;
        }
        return false;
    };

    if (!dfs(dfs, 0)) return std::nullopt;
    return assign;
}

}  // namespace tcx
