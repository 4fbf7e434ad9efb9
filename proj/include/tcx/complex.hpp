#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tcx/errors.hpp"
#include "tcx/vertex_set.hpp"

namespace tcx {

class complex;
using complex_ptr = std::shared_ptr<const complex>;

namespace detail {

// Sorts, deduplicates, and drops non-maximal sets.
inline std::vector<vertex_set> prune_maximal(std::vector<vertex_set> fs) {
    std::sort(fs.begin(), fs.end(), lex_less);
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
    std::vector<vertex_set> out;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < fs.size() && maximal; ++j)
            if (i != j && fs[i].subset_of(fs[j]) && fs[i] != fs[j]) maximal = false;
        if (maximal) out.push_back(fs[i]);
    }
    return out;
}

}  // namespace detail

/**
 * Finite abstract simplicial complex, stored by its facets (the maximal
 * simplices). Faces are implicit: a simplex is present exactly when it is a
 * subset of some facet. The facet list is an antichain sorted by lex_less,
 * and every vertex of the label table occurs in at least one facet.
 *
 * Vertices carry string labels; indices are assigned by first appearance in
 * the input facet list and are stable for the lifetime of the object.
 */
class complex {
public:
    int vertex_count() const { return static_cast<int>(labels_.size()); }
    int facet_count() const { return static_cast<int>(facets_.size()); }

    const std::vector<vertex_set>& facets() const { return facets_; }

    const vertex_set& facet(int i) const {
        if (i < 0 || i >= facet_count())
            throw index_out_of_range("facet index " + std::to_string(i) +
                                     " out of range (facet count " +
                                     std::to_string(facet_count()) + ")");
        return facets_[static_cast<std::size_t>(i)];
    }

    const std::string& label(int v) const {
        if (v < 0 || v >= vertex_count())
            throw index_out_of_range("vertex index " + std::to_string(v) +
                                     " out of range (vertex count " +
                                     std::to_string(vertex_count()) + ")");
        return labels_[static_cast<std::size_t>(v)];
    }

    const std::vector<std::string>& labels() const { return labels_; }

    // Index of the named vertex, or -1.
    int vertex_index(const std::string& name) const {
        auto it = index_of_.find(name);
        return it == index_of_.end() ? -1 : it->second;
    }

    // Indices of the facets containing v.
    const std::vector<std::int32_t>& star(int v) const {
        return stars_[static_cast<std::size_t>(v)];
    }

    // Face test for an already validated, possibly empty set. The empty set
    // is not a simplex.
    bool contains(const vertex_set& s) const {
        if (s.empty()) return false;
        int v = s.lowest();
        for (std::int32_t fi : stars_[static_cast<std::size_t>(v)])
            if (s.subset_of(facets_[static_cast<std::size_t>(fi)])) return true;
        return false;
    }

    // Index of s in the facet list, or -1 when s is not a facet.
    int facet_index(const vertex_set& s) const {
        auto it = std::lower_bound(facets_.begin(), facets_.end(), s, lex_less);
        if (it != facets_.end() && *it == s)
            return static_cast<int>(it - facets_.begin());
        return -1;
    }

    vertex_set full_vertex_set() const {
        vertex_set s;
        for (int v = 0; v < vertex_count(); ++v) s.set(v);
        return s;
    }

    /**
     * Builds a complex from facets given as vertex index sets over an
     * explicit label table. Inclusion-maximal normalization and sorting are
     * applied; duplicates collapse. Every label-table entry must be covered
     * by some facet (callers construct the table from the facets they pass).
     */
    static complex_ptr from_masks(std::vector<vertex_set> facets,
                                  std::vector<std::string> labels) {
        if (static_cast<int>(labels.size()) > vertex_set::max_vertices)
            throw size_limit_exceeded(
                "complex has " + std::to_string(labels.size()) +
                " vertices; this build supports at most " +
                std::to_string(vertex_set::max_vertices));
        if (facets.empty()) throw empty_input("complex must have at least one facet");
        for (const auto& f : facets) {
            if (f.empty()) throw empty_input("facets must be nonempty");
        }
        auto k = std::shared_ptr<complex>(new complex());
        k->labels_ = std::move(labels);
        k->facets_ = detail::prune_maximal(std::move(facets));
        k->finish_construction();
        vertex_set covered;
        for (const auto& f : k->facets_) covered = covered | f;
        if (covered.count() != k->vertex_count() || covered.any_above(k->vertex_count() - 1))
            throw std::logic_error("facet list does not cover the vertex table");
        return k;
    }

private:
    complex() = default;

    void finish_construction() {
        index_of_.reserve(labels_.size());
        for (int v = 0; v < vertex_count(); ++v) {
            auto [it, fresh] = index_of_.emplace(labels_[static_cast<std::size_t>(v)], v);
            (void)it;
            if (!fresh) throw std::logic_error("duplicate vertex label in table");
        }
        stars_.assign(labels_.size(), {});
        for (int i = 0; i < facet_count(); ++i)
            facets_[static_cast<std::size_t>(i)].for_each(
                [&](int v) { stars_[static_cast<std::size_t>(v)].push_back(i); });
    }

    std::vector<std::string> labels_;
    std::vector<vertex_set> facets_;
    std::vector<std::vector<std::int32_t>> stars_;
    std::unordered_map<std::string, int> index_of_;

    friend complex_ptr normalize(const std::vector<std::vector<std::string>>&);
};

/**
 * Builds a complex from facets given by vertex name. Vertex indices are
 * assigned in order of first appearance; duplicate names inside one facet
 * collapse; non-maximal and duplicate facets are dropped.
 */
inline complex_ptr normalize(const std::vector<std::vector<std::string>>& facet_names) {
    if (facet_names.empty()) throw empty_input("complex must have at least one facet");
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> index_of;
    std::vector<vertex_set> facets;
    facets.reserve(facet_names.size());
    for (const auto& names : facet_names) {
        if (names.empty()) throw empty_input("facets must be nonempty");
        vertex_set f;
        for (const auto& name : names) {
            auto it = index_of.find(name);
            int v;
            if (it == index_of.end()) {
                v = static_cast<int>(labels.size());
                if (v >= vertex_set::max_vertices)
                    throw size_limit_exceeded(
                        "complex has more than " +
                        std::to_string(vertex_set::max_vertices) +
                        " vertices; this build supports at most that many");
                index_of.emplace(name, v);
                labels.push_back(name);
            } else {
                v = it->second;
            }
            f.set(v);
        }
        facets.push_back(f);
    }
    return complex::from_masks(std::move(facets), std::move(labels));
}

// Structural equality: same vertex count and identical facet lists. Labels
// are deliberately ignored so that maps compose across renamed copies only
// when the index structure matches exactly.
inline bool same_structure(const complex& a, const complex& b) {
    return a.vertex_count() == b.vertex_count() && a.facets() == b.facets();
}

// Equality including labels; what "the same input" means at CLI level.
inline bool same_labelled(const complex& a, const complex& b) {
    return a.labels() == b.labels() && a.facets() == b.facets();
}

/**
 * Membership test for a simplex given as a vertex set of K. Throws
 * unknown_vertex if the set mentions indices outside K, and empty_input for
 * the empty set (the empty simplex is excluded everywhere).
 */
inline bool is_face(const complex& k, const vertex_set& s) {
    if (s.empty()) throw empty_input("the empty set is not a simplex");
    if (k.vertex_count() == 0 || s.any_above(k.vertex_count() - 1))
        throw unknown_vertex("simplex mentions a vertex outside the complex");
    return k.contains(s);
}

/**
 * Vertex map between complexes that sends simplices to simplices. Validated
 * on construction: it suffices that every facet of the domain has an image
 * that is a face of the codomain, since images of faces are subsets of
 * images of facets.
 */
class simplicial_map {
public:
    simplicial_map(complex_ptr dom, complex_ptr cod, std::vector<std::int32_t> assign)
        : dom_(std::move(dom)), cod_(std::move(cod)), assign_(std::move(assign)) {
        if (!dom_ || !cod_) throw empty_input("map endpoints must be complexes");
        if (static_cast<int>(assign_.size()) != dom_->vertex_count())
            throw domain_mismatch("vertex assignment has " +
                                  std::to_string(assign_.size()) +
                                  " entries for a domain with " +
                                  std::to_string(dom_->vertex_count()) + " vertices");
        for (std::int32_t w : assign_)
            if (w < 0 || w >= cod_->vertex_count())
                throw unknown_vertex("vertex assignment targets index " +
                                     std::to_string(w) + " outside the codomain");
        for (int i = 0; i < dom_->facet_count(); ++i) {
            vertex_set img = image(dom_->facets()[static_cast<std::size_t>(i)]);
            if (!cod_->contains(img))
                throw not_simplicial("image of facet " + std::to_string(i) +
                                     " is not a simplex of the codomain");
        }
    }

    const complex_ptr& domain() const { return dom_; }
    const complex_ptr& codomain() const { return cod_; }
    const std::vector<std::int32_t>& assignment() const { return assign_; }

    std::int32_t operator()(int v) const { return assign_[static_cast<std::size_t>(v)]; }

    vertex_set image(const vertex_set& s) const {
        vertex_set out;
        s.for_each([&](int v) { out.set(assign_[static_cast<std::size_t>(v)]); });
        return out;
    }

    bool is_constant() const {
        return std::all_of(assign_.begin(), assign_.end(),
                           [&](std::int32_t w) { return w == assign_[0]; });
    }

    friend bool operator==(const simplicial_map& a, const simplicial_map& b) {
        return same_structure(*a.dom_, *b.dom_) && same_structure(*a.cod_, *b.cod_) &&
               a.assign_ == b.assign_;
    }
    friend bool operator!=(const simplicial_map& a, const simplicial_map& b) {
        return !(a == b);
    }

private:
    complex_ptr dom_;
    complex_ptr cod_;
    std::vector<std::int32_t> assign_;
};

inline simplicial_map identity_map(const complex_ptr& k) {
    std::vector<std::int32_t> assign(static_cast<std::size_t>(k->vertex_count()));
    std::iota(assign.begin(), assign.end(), 0);
    return simplicial_map(k, k, std::move(assign));
}

inline simplicial_map constant_map(const complex_ptr& dom, const complex_ptr& cod, int target) {
    if (target < 0 || target >= cod->vertex_count())
        throw unknown_vertex("constant map target " + std::to_string(target) +
                             " outside the codomain");
    return simplicial_map(dom, cod,
                          std::vector<std::int32_t>(
                              static_cast<std::size_t>(dom->vertex_count()), target));
}

// g after f. The codomain of f must structurally equal the domain of g.
inline simplicial_map compose(const simplicial_map& g, const simplicial_map& f) {
    if (!same_structure(*f.codomain(), *g.domain()))
        throw domain_mismatch("compose: codomain of inner map differs from domain of outer map");
    std::vector<std::int32_t> assign(f.assignment().size());
    for (std::size_t v = 0; v < assign.size(); ++v)
        assign[v] = g(static_cast<int>(f.assignment()[v]));
    return simplicial_map(f.domain(), g.codomain(), std::move(assign));
}

/**
 * Subcomplex generated by a subset of the ambient facets. Keeps both views:
 * the generating facet indices in the ambient complex, and a standalone
 * realized complex over the touched vertices (labels carried over), plus the
 * vertex translation in both directions.
 */
class subcomplex {
public:
    subcomplex(complex_ptr ambient, std::vector<std::int32_t> generator_indices)
        : ambient_(std::move(ambient)), generators_(std::move(generator_indices)) {
        if (!ambient_) throw empty_input("subcomplex needs an ambient complex");
        std::sort(generators_.begin(), generators_.end());
        generators_.erase(std::unique(generators_.begin(), generators_.end()),
                          generators_.end());
        for (std::int32_t g : generators_)
            if (g < 0 || g >= ambient_->facet_count())
                throw not_a_facet("generator index " + std::to_string(g) +
                                  " is not an ambient facet index");
        if (generators_.empty()) return;  // empty subcomplex; realized() throws

        vertex_set touched;
        for (std::int32_t g : generators_)
            touched = touched | ambient_->facets()[static_cast<std::size_t>(g)];
        to_sub_.assign(static_cast<std::size_t>(ambient_->vertex_count()), -1);
        touched.for_each([&](int v) {
            to_sub_[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(to_ambient_.size());
            to_ambient_.push_back(v);
        });
        std::vector<std::string> labels;
        labels.reserve(to_ambient_.size());
        for (std::int32_t av : to_ambient_)
            labels.push_back(ambient_->label(av));
        std::vector<vertex_set> facets;
        facets.reserve(generators_.size());
        for (std::int32_t g : generators_) {
            vertex_set f;
            ambient_->facets()[static_cast<std::size_t>(g)].for_each(
                [&](int v) { f.set(to_sub_[static_cast<std::size_t>(v)]); });
            facets.push_back(f);
        }
        realized_ = complex::from_masks(std::move(facets), std::move(labels));
    }

    const complex_ptr& ambient() const { return ambient_; }
    const std::vector<std::int32_t>& generators() const { return generators_; }
    bool is_empty() const { return generators_.empty(); }

    const complex_ptr& realized() const {
        if (!realized_) throw empty_input("subcomplex has no generators");
        return realized_;
    }

    // Ambient vertex index of a realized vertex.
    std::int32_t ambient_vertex(int sub_v) const {
        return to_ambient_[static_cast<std::size_t>(sub_v)];
    }

    // Realized vertex index of an ambient vertex, or -1 if absent.
    std::int32_t sub_vertex(int amb_v) const {
        return to_sub_[static_cast<std::size_t>(amb_v)];
    }

    // Inclusion of the realized complex into the ambient one.
    simplicial_map inclusion() const {
        return simplicial_map(realized(), ambient_, to_ambient_);
    }

    // Face test against the generators, in ambient vertex indices.
    bool contains_face(const vertex_set& s) const {
        if (s.empty()) return false;
        for (std::int32_t g : generators_)
            if (s.subset_of(ambient_->facets()[static_cast<std::size_t>(g)])) return true;
        return false;
    }

private:
    complex_ptr ambient_;
    std::vector<std::int32_t> generators_;
    complex_ptr realized_;
    std::vector<std::int32_t> to_ambient_;
    std::vector<std::int32_t> to_sub_;
};

inline subcomplex generated_subcomplex(const complex_ptr& k,
                                       std::vector<std::int32_t> facet_indices) {
    if (facet_indices.empty()) throw empty_input("a generated subcomplex needs generators");
    return subcomplex(k, std::move(facet_indices));
}

inline subcomplex generated_subcomplex(const complex_ptr& k,
                                       const std::vector<vertex_set>& facet_sets) {
    std::vector<std::int32_t> idx;
    idx.reserve(facet_sets.size());
    for (const auto& f : facet_sets) {
        int i = k->facet_index(f);
        if (i < 0) throw not_a_facet("generator set is not a facet of the ambient complex");
        idx.push_back(i);
    }
    return generated_subcomplex(k, std::move(idx));
}

// Restriction of f to a subcomplex of its domain, as a map out of the
// realized complex.
inline simplicial_map restrict(const simplicial_map& f, const subcomplex& omega) {
    if (!same_structure(*omega.ambient(), *f.domain()))
        throw domain_mismatch("restrict: subcomplex is not inside the map's domain");
    const complex_ptr& r = omega.realized();
    std::vector<std::int32_t> assign(static_cast<std::size_t>(r->vertex_count()));
    for (int v = 0; v < r->vertex_count(); ++v)
        assign[static_cast<std::size_t>(v)] = f(omega.ambient_vertex(v));
    return simplicial_map(r, f.codomain(), std::move(assign));
}

/**
 * True when every pair of vertices is joined by an edge path. Facets are
 * cliques in the 1-skeleton, so connectivity is union-find over facets.
 */
inline bool edge_path_connected(const complex& k) {
    int n = k.vertex_count();
    if (n <= 1) return true;
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto& f : k.facets()) {
        int root = -1;
        f.for_each([&](int v) {
            if (root < 0) {
                root = find(v);
            } else {
                parent[static_cast<std::size_t>(find(v))] = root;
            }
        });
    }
    int r0 = find(0);
    for (int v = 1; v < n; ++v)
        if (find(v) != r0) return false;
    return true;
}

}  // namespace tcx
