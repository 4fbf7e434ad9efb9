#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tcx/complex.hpp"
#include "tcx/errors.hpp"

namespace tcx {

namespace detail {

// Backslash-escapes the characters used by the tuple label syntax so that
// tuple -> label stays injective whatever the factor labels look like.
inline std::string escape_label(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '\\' || c == ',' || c == '(' || c == ')') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

inline std::string tuple_label(const std::vector<complex_ptr>& factors,
                               const std::vector<std::int32_t>& tuple) {
    std::string out = "(";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) out.push_back(',');
        out += escape_label(factors[i]->label(tuple[i]));
    }
    out.push_back(')');
    return out;
}

}  // namespace detail

/**
 * Categorical product of finitely many complexes. Vertices are tuples of
 * factor vertices (flattened row-major, last factor fastest); the facets are
 * exactly the grids F_1 × ... × F_m over tuples of factor facets. Distinct
 * facet tuples give incomparable grids because each factor's facet list is
 * an antichain, so the grid list needs no pruning; construction still runs
 * the normalizing constructor as a cross-check. A set of product vertices is
 * a simplex exactly when all its projections are simplices.
 */
class product_complex {
public:
    static constexpr std::int64_t max_product_facets = 20'000;

    const complex_ptr& underlying() const { return underlying_; }
    int arity() const { return static_cast<int>(factors_.size()); }
    const std::vector<complex_ptr>& factors() const { return factors_; }

    std::int32_t flat_index(const std::vector<std::int32_t>& tuple) const {
        if (static_cast<int>(tuple.size()) != arity())
            throw domain_mismatch("tuple length " + std::to_string(tuple.size()) +
                                  " does not match product arity " +
                                  std::to_string(arity()));
        std::int32_t flat = 0;
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            if (tuple[i] < 0 || tuple[i] >= factors_[i]->vertex_count())
                throw unknown_vertex("tuple coordinate " + std::to_string(i) +
                                     " is outside factor " + std::to_string(i));
            flat = flat * factors_[i]->vertex_count() + tuple[i];
        }
        return flat;
    }

    std::vector<std::int32_t> tuple_of(std::int32_t flat) const {
        if (flat < 0 || flat >= underlying_->vertex_count())
            throw index_out_of_range("flat product vertex out of range");
        std::vector<std::int32_t> tuple(factors_.size());
        for (std::size_t i = factors_.size(); i-- > 0;) {
            std::int32_t n = factors_[i]->vertex_count();
            tuple[i] = flat % n;
            flat /= n;
        }
        return tuple;
    }

    bool is_power() const {
        for (std::size_t i = 1; i < factors_.size(); ++i)
            if (!same_labelled(*factors_[i], *factors_[0])) return false;
        return true;
    }

    friend product_complex categorical_product(std::vector<complex_ptr> factors);

private:
    product_complex() = default;

    complex_ptr underlying_;
    std::vector<complex_ptr> factors_;
};

inline product_complex categorical_product(std::vector<complex_ptr> factors) {
    if (factors.empty()) throw empty_input("a product needs at least one factor");
    for (const auto& f : factors)
        if (!f) throw empty_input("a product factor is missing");

    std::int64_t vertex_total = 1;
    std::int64_t facet_total = 1;
    for (const auto& f : factors) {
        vertex_total *= f->vertex_count();
        facet_total *= f->facet_count();
        if (vertex_total > vertex_set::max_vertices)
            throw size_limit_exceeded(
                "product would have more than " +
                std::to_string(vertex_set::max_vertices) +
                " vertices; this build supports at most that many");
        if (facet_total > product_complex::max_product_facets)
            throw size_limit_exceeded(
                "product would have more than " +
                std::to_string(product_complex::max_product_facets) + " facets");
    }

    const std::size_t m = factors.size();
    product_complex p;
    p.factors_ = std::move(factors);

    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(vertex_total));
    {
        std::vector<std::int32_t> tuple(m, 0);
        for (std::int64_t flat = 0; flat < vertex_total; ++flat) {
            labels.push_back(detail::tuple_label(p.factors_, tuple));
            for (std::size_t i = m; i-- > 0;) {
                if (++tuple[i] < p.factors_[i]->vertex_count()) break;
                tuple[i] = 0;
            }
        }
    }

    std::vector<vertex_set> facets;
    facets.reserve(static_cast<std::size_t>(facet_total));
    {
        std::vector<std::int32_t> which(m, 0);  // facet index per factor
        std::vector<std::vector<std::int32_t>> members(m);
        auto refresh = [&](std::size_t i) {
            members[i] =
                p.factors_[i]->facets()[static_cast<std::size_t>(which[i])].to_vector();
        };
        for (std::size_t i = 0; i < m; ++i) refresh(i);
        for (std::int64_t step = 0; step < facet_total; ++step) {
            vertex_set grid;
            std::vector<std::size_t> pos(m, 0);
            for (;;) {
                std::int32_t flat = 0;
                for (std::size_t i = 0; i < m; ++i)
                    flat = flat * p.factors_[i]->vertex_count() + members[i][pos[i]];
                grid.set(flat);
                std::size_t i = m;
                while (i-- > 0) {
                    if (++pos[i] < members[i].size()) break;
                    pos[i] = 0;
                    if (i == 0) goto grid_done;
                }
            }
        grid_done:
            facets.push_back(grid);
            for (std::size_t i = m; i-- > 0;) {
                if (++which[i] < p.factors_[i]->facet_count()) {
                    refresh(i);
                    break;
                }
                which[i] = 0;
                refresh(i);
            }
        }
    }

    p.underlying_ = complex::from_masks(std::move(facets), std::move(labels));
    return p;
}

inline product_complex power(const complex_ptr& k, int n) {
    if (n < 1) throw precondition_violated("power requires an exponent of at least 1");
    return categorical_product(std::vector<complex_ptr>(static_cast<std::size_t>(n), k));
}

/**
 * Simplex test for a set of product vertices given as coordinate tuples.
 * Equivalent to is_face on the underlying complex; kept separate so the two
 * routes can be cross-checked.
 */
inline bool member(const product_complex& p,
                   const std::vector<std::vector<std::int32_t>>& tuples) {
    if (tuples.empty()) throw empty_input("the empty set is not a simplex");
    for (int i = 0; i < p.arity(); ++i) {
        vertex_set proj;
        for (const auto& t : tuples) {
            if (static_cast<int>(t.size()) != p.arity())
                throw domain_mismatch("tuple length does not match product arity");
            if (t[static_cast<std::size_t>(i)] < 0 ||
                t[static_cast<std::size_t>(i)] >=
                    p.factors()[static_cast<std::size_t>(i)]->vertex_count())
                throw unknown_vertex("tuple coordinate outside factor " +
                                     std::to_string(i));
            proj.set(t[static_cast<std::size_t>(i)]);
        }
        if (!p.factors()[static_cast<std::size_t>(i)]->contains(proj)) return false;
    }
    return true;
}

// i-th projection of the product, 1-based.
inline simplicial_map projection(const product_complex& p, int i) {
    if (i < 1 || i > p.arity())
        throw index_out_of_range("projection index " + std::to_string(i) +
                                 " out of range for arity " + std::to_string(p.arity()));
    const int n = p.underlying()->vertex_count();
    std::vector<std::int32_t> assign(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        assign[static_cast<std::size_t>(v)] = p.tuple_of(v)[static_cast<std::size_t>(i - 1)];
    return simplicial_map(p.underlying(), p.factors()[static_cast<std::size_t>(i - 1)],
                          assign);
}

// Diagonal K -> K^n relative to an already built power of K.
inline simplicial_map diagonal(const complex_ptr& k, const product_complex& p) {
    if (!p.is_power() || !same_labelled(*p.factors()[0], *k))
        throw not_a_power("diagonal requires a power of the given complex");
    const int n = k->vertex_count();
    std::vector<std::int32_t> assign(static_cast<std::size_t>(n));
    std::vector<std::int32_t> tuple(static_cast<std::size_t>(p.arity()));
    for (int v = 0; v < n; ++v) {
        std::fill(tuple.begin(), tuple.end(), v);
        assign[static_cast<std::size_t>(v)] = p.flat_index(tuple);
    }
    return simplicial_map(k, p.underlying(), std::move(assign));
}

inline simplicial_map diagonal(const complex_ptr& k, int n) {
    return diagonal(k, power(k, n));
}

/**
 * The n-fold power of a map, acting coordinatewise between the powers of its
 * domain and codomain. Sends grids into grids, hence simplicial.
 */
inline simplicial_map map_power(const simplicial_map& f, int n) {
    product_complex pd = power(f.domain(), n);
    product_complex pc = power(f.codomain(), n);
    const int nv = pd.underlying()->vertex_count();
    std::vector<std::int32_t> assign(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) {
        std::vector<std::int32_t> t = pd.tuple_of(v);
        for (auto& c : t) c = f(c);
        assign[static_cast<std::size_t>(v)] = pc.flat_index(t);
    }
    return simplicial_map(pd.underlying(), pc.underlying(), std::move(assign));
}

/**
 * Subcomplex of the domain generated by the facets whose image lies in the
 * given subcomplex of the codomain. May be empty when no facet qualifies.
 */
inline subcomplex preimage_subcomplex(const simplicial_map& f, const subcomplex& omega) {
    if (!same_structure(*omega.ambient(), *f.codomain()))
        throw domain_mismatch("preimage: subcomplex is not inside the map's codomain");
    std::vector<std::int32_t> gens;
    for (int i = 0; i < f.domain()->facet_count(); ++i) {
        if (omega.contains_face(
                f.image(f.domain()->facets()[static_cast<std::size_t>(i)])))
            gens.push_back(i);
    }
    return subcomplex(f.domain(), std::move(gens));
}

}  // namespace tcx
