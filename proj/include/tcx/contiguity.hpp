#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcx/complex.hpp"
#include "tcx/errors.hpp"

namespace tcx {

/**
 * Resource limits for the class searches. max_states caps the number of
 * distinct maps a single breadth-first search may visit; max_millis caps the
 * wall-clock time of the whole calling operation. Exhausting either turns
 * definitive answers into "unknown", never into wrong ones.
 */
struct search_budget {
    std::uint64_t max_states = 1'000'000;
    std::uint64_t max_millis = 120'000;

    void validate() const {
        if (max_states == 0 || max_millis == 0)
            throw precondition_violated("search budget limits must be positive");
    }
};

/**
 * Two maps phi, psi : K -> L are contiguous when phi(F) ∪ psi(F) is a
 * simplex of L for every simplex F of K. Checking facets suffices: for a
 * face F' ⊆ F the union phi(F') ∪ psi(F') is a subset of phi(F) ∪ psi(F).
 */
inline bool is_contiguous(const simplicial_map& phi, const simplicial_map& psi) {
    if (!same_structure(*phi.domain(), *psi.domain()) ||
        !same_structure(*phi.codomain(), *psi.codomain()))
        throw domain_mismatch("contiguity requires maps with equal domain and codomain");
    const complex& cod = *phi.codomain();
    for (const auto& f : phi.domain()->facets()) {
        if (!cod.contains(phi.image(f) | psi.image(f))) return false;
    }
    return true;
}

// Same as is_contiguous but reports the first facet index where the union
// fails to be a simplex, for diagnostics. -1 means contiguous.
inline int first_noncontiguous_facet(const simplicial_map& phi, const simplicial_map& psi) {
    if (!same_structure(*phi.domain(), *psi.domain()) ||
        !same_structure(*phi.codomain(), *psi.codomain()))
        throw domain_mismatch("contiguity requires maps with equal domain and codomain");
    const complex& cod = *phi.codomain();
    const auto& facets = phi.domain()->facets();
    for (std::size_t i = 0; i < facets.size(); ++i)
        if (!cod.contains(phi.image(facets[i]) | psi.image(facets[i])))
            return static_cast<int>(i);
    return -1;
}

/**
 * Witness that two maps lie in the same contiguity class: a finite sequence
 * of maps, consecutive ones contiguous. The queried endpoints are stored
 * separately so a verifier can detect a chain that proves the wrong claim.
 */
class contiguity_chain {
public:
    contiguity_chain(std::vector<simplicial_map> maps, simplicial_map declared_first,
                     simplicial_map declared_last)
        : maps_(std::move(maps)),
          first_(std::move(declared_first)),
          last_(std::move(declared_last)) {
        if (maps_.empty()) throw empty_input("a contiguity chain has at least one map");
    }

    const std::vector<simplicial_map>& maps() const { return maps_; }
    const simplicial_map& declared_first() const { return first_; }
    const simplicial_map& declared_last() const { return last_; }
    std::size_t length() const { return maps_.size(); }

private:
    std::vector<simplicial_map> maps_;
    simplicial_map first_;
    simplicial_map last_;
};

struct chain_check {
    bool ok = false;
    std::string reason;   // empty when ok
    int pair_index = -1;  // failing consecutive pair, if any
    int facet = -1;       // failing domain facet, if any
};

/**
 * Independent check of a chain. Re-verifies that each entry is simplicial,
 * that all entries share domain and codomain, that consecutive entries are
 * contiguous, and that the ends equal the declared endpoints. Uses only
 * definitions, never the search machinery.
 */
inline chain_check verify_chain_detail(const contiguity_chain& chain) {
    chain_check res;
    const auto& maps = chain.maps();
    const complex_ptr& dom = maps.front().domain();
    const complex_ptr& cod = maps.front().codomain();
    for (std::size_t i = 0; i < maps.size(); ++i) {
        if (!same_structure(*maps[i].domain(), *dom) ||
            !same_structure(*maps[i].codomain(), *cod)) {
            res.reason = "chain entry " + std::to_string(i) +
                         " has mismatched domain or codomain";
            return res;
        }
        for (int fi = 0; fi < dom->facet_count(); ++fi) {
            if (!cod->contains(maps[i].image(dom->facets()[static_cast<std::size_t>(fi)]))) {
                res.reason = "chain entry " + std::to_string(i) + " is not simplicial";
                res.facet = fi;
                return res;
            }
        }
    }
    for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
        int bad = first_noncontiguous_facet(maps[i], maps[i + 1]);
        if (bad >= 0) {
            res.reason = "chain entries " + std::to_string(i) + " and " +
                         std::to_string(i + 1) + " are not contiguous";
            res.pair_index = static_cast<int>(i);
            res.facet = bad;
            return res;
        }
    }
    if (maps.front() != chain.declared_first()) {
        res.reason = "chain does not start at the declared first map";
        return res;
    }
    if (maps.back() != chain.declared_last()) {
        res.reason = "chain does not end at the declared last map";
        return res;
    }
    res.ok = true;
    return res;
}

inline bool verify_chain(const contiguity_chain& chain) {
    return verify_chain_detail(chain).ok;
}

enum class verdict : std::uint8_t { yes, no, unknown };

inline const char* to_string(verdict v) {
    switch (v) {
        case verdict::yes: return "yes";
        case verdict::no: return "no";
        default: return "unknown";
    }
}

/**
 * Outcome of a contiguity-class query. "no" is only ever reported after the
 * reachable class was exhausted within budget; running out of budget yields
 * "unknown". A "yes" can carry a witness chain.
 */
struct class_decision {
    verdict v = verdict::unknown;
    std::uint64_t states_explored = 0;
    std::optional<contiguity_chain> chain;
};

}  // namespace tcx
