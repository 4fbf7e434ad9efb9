#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "tcx/collapse.hpp"
#include "tcx/complex.hpp"
#include "tcx/contiguity.hpp"
#include "tcx/isomorphism.hpp"

namespace tcx {

// Same chain read backwards; contiguity is symmetric.
inline contiguity_chain reverse_chain(const contiguity_chain& c) {
    std::vector<simplicial_map> maps(c.maps().rbegin(), c.maps().rend());
    return contiguity_chain(std::move(maps), c.declared_last(), c.declared_first());
}

/**
 * Witness for a strong homotopy equivalence: maps in both directions plus
 * chains certifying that the two round trips are in the contiguity classes
 * of the respective identities.
 */
struct homotopy_equivalence {
    simplicial_map to;                // a -> b
    simplicial_map from;              // b -> a
    contiguity_chain round_trip_a;    // from ∘ to  ~ identity of a
    contiguity_chain round_trip_b;    // to ∘ from  ~ identity of b
};

/**
 * Decides strong homotopy equivalence by collapsing both complexes to their
 * cores and matching the cores up to isomorphism; cores are unique up to
 * isomorphism, so this is a complete criterion. The round-trip composites
 * equal inclusion ∘ retraction on each side, whose chains to the identity
 * come from the collapse sequences.
 */
inline std::optional<homotopy_equivalence> same_strong_homotopy_type(const complex_ptr& a,
                                                                     const complex_ptr& b) {
    core_result ca = core(a);
    core_result cb = core(b);
    auto g = is_isomorphic(*ca.core, *cb.core);
    if (!g) return std::nullopt;

    std::vector<std::int32_t> ginv(g->size(), -1);
    for (std::size_t v = 0; v < g->size(); ++v)
        ginv[static_cast<std::size_t>((*g)[v])] = static_cast<std::int32_t>(v);

    std::vector<std::int32_t> to_assign(static_cast<std::size_t>(a->vertex_count()));
    for (int v = 0; v < a->vertex_count(); ++v)
        to_assign[static_cast<std::size_t>(v)] =
            cb.inclusion((*g)[static_cast<std::size_t>(ca.retraction(v))]);
    simplicial_map to(a, b, std::move(to_assign));

    std::vector<std::int32_t> from_assign(static_cast<std::size_t>(b->vertex_count()));
    for (int v = 0; v < b->vertex_count(); ++v)
        from_assign[static_cast<std::size_t>(v)] =
            ca.inclusion(ginv[static_cast<std::size_t>(cb.retraction(v))]);
    simplicial_map from(b, a, std::move(from_assign));

    // from ∘ to collapses to inclusion ∘ retraction of a (the isomorphism and
    // its inverse cancel against retraction ∘ inclusion = identity on the
    // core), so the collapse chain read backwards is the witness.
    simplicial_map round_a = compose(from, to);
    contiguity_chain chain_a = reverse_chain(core_identity_chain(a, ca));
    if (round_a != chain_a.maps().front())
        throw std::logic_error("round trip does not match the collapse certificate");
    chain_a = contiguity_chain(chain_a.maps(), round_a, identity_map(a));

    simplicial_map round_b = compose(to, from);
    contiguity_chain chain_b = reverse_chain(core_identity_chain(b, cb));
    if (round_b != chain_b.maps().front())
        throw std::logic_error("round trip does not match the collapse certificate");
    chain_b = contiguity_chain(chain_b.maps(), round_b, identity_map(b));

    return homotopy_equivalence{std::move(to), std::move(from), std::move(chain_a),
                                std::move(chain_b)};
}

}  // namespace tcx
