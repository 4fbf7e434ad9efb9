#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "complex.hpp"
#include "contiguity.hpp"
#include "invariants.hpp"
#include "product.hpp"

namespace tcx {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Digests
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

// ---------------------------------------------------------------------------
// The .sc text format: one facet per non-blank line, vertex names separated
// by whitespace, '#' starts a comment that runs to the end of the line.
// Duplicate and non-maximal facets are accepted and normalized away.
// ---------------------------------------------------------------------------

/**
 * Parses a complex from .sc text. Vertex indices are assigned in order of
 * first appearance. Throws parse_error (with the offending line number) for
 * tokens containing control characters and for complexes that exceed the
 * vertex capacity, and empty_input when no facet line is present.
 */
inline complex_ptr parse_complex(std::istream& in,
                                 const std::string& origin = "<stream>") {
    std::vector<std::vector<std::string>> facet_names;
    std::vector<std::string> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream words(line);
        std::vector<std::string> names;
        std::string tok;
        while (words >> tok) {
            for (char c : tok) {
                if (static_cast<unsigned char>(c) < 0x20 || c == 0x7f)
                    throw parse_error(origin + ": vertex name contains a control character",
                                      line_no);
            }
            if (std::find(seen.begin(), seen.end(), tok) == seen.end()) {
                if (static_cast<int>(seen.size()) >= vertex_set::max_vertices)
                    throw parse_error(origin + ": more than " +
                                          std::to_string(vertex_set::max_vertices) +
                                          " distinct vertices",
                                      line_no);
                seen.push_back(tok);
            }
            names.push_back(std::move(tok));
        }
        if (!names.empty()) facet_names.push_back(std::move(names));
    }
    if (facet_names.empty())
        throw empty_input(origin + ": no facets found");
    return normalize(facet_names);
}

inline complex_ptr parse_complex_text(const std::string& text,
                                      const std::string& origin = "<text>") {
    std::istringstream in(text);
    return parse_complex(in, origin);
}

inline complex_ptr read_complex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    return parse_complex(in, path);
}

namespace detail {

// Vertex names of one facet, sorted so the emitted form is independent of
// the complex's internal vertex order.
inline std::vector<std::string> facet_names_sorted(const complex& k,
                                                   const vertex_set& f) {
    std::vector<std::string> names;
    f.for_each([&](int v) { names.push_back(k.label(v)); });
    std::sort(names.begin(), names.end());
    return names;
}

inline void require_token_safe(const std::string& label) {
    if (label.empty())
        throw precondition_violated("serialization requires nonempty vertex names");
    for (char c : label) {
        unsigned char u = static_cast<unsigned char>(c);
        if (u <= 0x20 || u == 0x7f || c == '#')
            throw precondition_violated(
                "vertex name " + label +
                " contains whitespace, '#', or a control character and cannot "
                "be written to the .sc format");
    }
}

}  // namespace detail

/**
 * Serializes a complex to .sc text in canonical form: each facet's vertex
 * names sorted, facets sorted lexicographically by those name lists. Two
 * complexes with the same named facets serialize identically whatever order
 * their input listed vertices or facets in, so parse followed by serialize
 * is a fixpoint. Throws precondition_violated when a vertex name cannot be
 * written as a whitespace-separated token.
 */
inline std::string to_sc_text(const complex& k) {
    for (const auto& label : k.labels()) detail::require_token_safe(label);
    std::vector<std::vector<std::string>> rows;
    rows.reserve(static_cast<std::size_t>(k.facet_count()));
    for (const auto& f : k.facets())
        rows.push_back(detail::facet_names_sorted(k, f));
    std::sort(rows.begin(), rows.end());
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out.push_back(' ');
            out += row[i];
        }
        out.push_back('\n');
    }
    return out;
}

/**
 * Digest of the canonical serialized form, stable across vertex and facet
 * reorderings of the same named complex. Used to bind certificates and
 * reports to their input.
 */
inline std::string content_digest(const complex& k) {
    return "fnv1a64:" + hex64(fnv1a64(to_sc_text(k)));
}

// ---------------------------------------------------------------------------
// JSON forms. Certificates reference vertices by name, never by index, so
// they survive re-parsing and reordering of the complex they were issued
// for; the issuing complex is pinned by its content digest.
// ---------------------------------------------------------------------------

inline json map_to_json(const simplicial_map& m) {
    json out = json::object();
    const complex& dom = *m.domain();
    for (int v = 0; v < dom.vertex_count(); ++v)
        out[dom.label(v)] = m.codomain()->label(m.assignment()[static_cast<std::size_t>(v)]);
    return out;
}

inline json chain_to_json(const contiguity_chain& chain) {
    json maps = json::array();
    for (const auto& m : chain.maps()) maps.push_back(map_to_json(m));
    return maps;
}

inline json certificate_to_json(const complex_ptr& base, const cover_certificate& cert) {
    complex_ptr ambient = cert.arity == 1 ? base : power(base, cert.arity).underlying();
    json elements = json::array();
    for (const auto& el : cert.elements) {
        json facets = json::array();
        json chains = json::array();
        for (std::int32_t g : el.generators)
            facets.push_back(detail::facet_names_sorted(
                *ambient, ambient->facets()[static_cast<std::size_t>(g)]));
        for (const auto& chain : el.witness) chains.push_back(chain_to_json(chain));
        elements.push_back(json{{"facets", facets}, {"chains", chains}});
    }
    return json{{"type", "cover"},
                {"complex_digest", content_digest(*base)},
                {"kind", cert.kind},
                {"arity", cert.arity},
                {"elements", elements}};
}

/**
 * Envelope for standalone contiguity chains. The chains share one domain,
 * described by facets: null means the base itself (arity 1) or the whole
 * arity-th power; a list of facet name sets means the subcomplex of the
 * power they generate. The codomain is always the base.
 */
inline json chains_certificate_to_json(const complex_ptr& base, int arity,
                                       const std::vector<std::int32_t>* generators,
                                       const std::vector<contiguity_chain>& chains) {
    complex_ptr ambient = arity == 1 ? base : power(base, arity).underlying();
    json facets;
    if (generators) {
        facets = json::array();
        for (std::int32_t g : *generators)
            facets.push_back(detail::facet_names_sorted(
                *ambient, ambient->facets()[static_cast<std::size_t>(g)]));
    }
    json jchains = json::array();
    for (const auto& chain : chains) jchains.push_back(chain_to_json(chain));
    return json{{"type", "chain"},
                {"complex_digest", content_digest(*base)},
                {"arity", arity},
                {"facets", facets},
                {"chains", jchains}};
}

/** Single chain between self-maps of base. */
inline json chain_certificate_to_json(const complex_ptr& base,
                                      const contiguity_chain& chain) {
    return chains_certificate_to_json(base, 1, nullptr, {chain});
}

namespace detail {

// Shape errors in certificate JSON surface as parse_error; binding the
// names against a concrete complex happens later and its failures count as
// verification failures instead.
template <typename F>
auto shape_checked(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw parse_error(std::string("malformed certificate: ") + e.what());
    }
}

inline simplicial_map map_from_json(const complex_ptr& dom, const complex_ptr& cod,
                                    const json& j) {
    if (!j.is_object())
        throw parse_error("malformed certificate: a map must be a name-to-name object");
    std::vector<std::int32_t> assign(static_cast<std::size_t>(dom->vertex_count()), -1);
    for (const auto& [from, to] : j.items()) {
        int dv = dom->vertex_index(from);
        if (dv < 0) throw unknown_vertex("certificate maps unknown vertex " + from);
        std::string target = shape_checked([&] { return to.template get<std::string>(); });
        int cv = cod->vertex_index(target);
        if (cv < 0) throw unknown_vertex("certificate maps to unknown vertex " + target);
        assign[static_cast<std::size_t>(dv)] = cv;
    }
    for (std::size_t v = 0; v < assign.size(); ++v)
        if (assign[v] < 0)
            throw domain_mismatch("certificate map leaves vertex " + dom->label(static_cast<int>(v)) +
                                  " unassigned");
    return simplicial_map(dom, cod, std::move(assign));
}

inline contiguity_chain chain_from_json(const complex_ptr& dom, const complex_ptr& cod,
                                        const json& j) {
    if (!j.is_array() || j.empty())
        throw parse_error("malformed certificate: a chain must be a nonempty array of maps");
    std::vector<simplicial_map> maps;
    maps.reserve(j.size());
    for (const auto& jm : j) maps.push_back(map_from_json(dom, cod, jm));
    simplicial_map first = maps.front();
    simplicial_map last = maps.back();
    return contiguity_chain(std::move(maps), std::move(first), std::move(last));
}

inline int facet_index_by_names(const complex& ambient, const json& names) {
    if (!names.is_array())
        throw parse_error("malformed certificate: a facet must be an array of vertex names");
    vertex_set s;
    for (const auto& jn : names) {
        std::string name = shape_checked([&] { return jn.template get<std::string>(); });
        int v = ambient.vertex_index(name);
        if (v < 0) throw unknown_vertex("certificate references unknown vertex " + name);
        s.set(v);
    }
    int fi = ambient.facet_index(s);
    if (fi < 0) throw not_a_facet("certificate references a vertex set that is not a facet");
    return fi;
}

}  // namespace detail

/**
 * Rebuilds a cover certificate from its JSON form against a freshly parsed
 * base complex. Shape problems throw parse_error; name and structure
 * mismatches throw the library's input errors, which verify_certificate
 * reports as verification failures.
 */
inline cover_certificate certificate_from_json(const complex_ptr& base, const json& j) {
    cover_certificate cert;
    detail::shape_checked([&] {
        cert.kind = j.at("kind").get<std::string>();
        cert.arity = j.at("arity").get<int>();
        return 0;
    });
    if (cert.arity < 1)
        throw parse_error("malformed certificate: arity must be at least 1");
    complex_ptr ambient = cert.arity == 1 ? base : power(base, cert.arity).underlying();
    const json& elements = detail::shape_checked([&]() -> const json& { return j.at("elements"); });
    if (!elements.is_array())
        throw parse_error("malformed certificate: elements must be an array");
    for (const auto& je : elements) {
        cover_element el;
        const json& facets = detail::shape_checked([&]() -> const json& { return je.at("facets"); });
        if (!facets.is_array() || facets.empty())
            throw parse_error("malformed certificate: element facets must be a nonempty array");
        for (const auto& jf : facets)
            el.generators.push_back(detail::facet_index_by_names(*ambient, jf));
        subcomplex omega = generated_subcomplex(ambient, el.generators);
        if (je.contains("chains")) {
            const json& chains = je.at("chains");
            if (!chains.is_array())
                throw parse_error("malformed certificate: chains must be an array");
            // Witness chains run from the subcomplex into the base complex:
            // inclusions and constants for arity 1, projection restrictions
            // for higher arity. Either way the codomain is the base.
            for (const auto& jc : chains)
                el.witness.push_back(detail::chain_from_json(omega.realized(), base, jc));
        }
        cert.elements.push_back(std::move(el));
    }
    return cert;
}

/**
 * Verifies a certificate JSON document (either a cover or a standalone
 * chain) against a base complex. Digest mismatches, name binding failures,
 * and structural rejections all come back as a failed cover_check; only
 * malformed JSON shape throws parse_error.
 */
inline cover_check verify_certificate(const complex_ptr& base, const json& j) {
    cover_check res;
    std::string type, digest;
    detail::shape_checked([&] {
        type = j.at("type").get<std::string>();
        digest = j.at("complex_digest").get<std::string>();
        return 0;
    });
    if (digest != content_digest(*base)) {
        res.ok = false;
        res.reason = "certificate was issued for a different complex (digest mismatch)";
        return res;
    }
    try {
        if (type == "cover") {
            return verify_cover_detail(base, certificate_from_json(base, j));
        }
        if (type == "chain") {
            int arity = 1;
            detail::shape_checked([&] {
                arity = j.at("arity").get<int>();
                return 0;
            });
            if (arity < 1) throw parse_error("malformed certificate: arity must be at least 1");
            complex_ptr ambient = arity == 1 ? base : power(base, arity).underlying();
            complex_ptr dom = ambient;
            const json& facets =
                detail::shape_checked([&]() -> const json& { return j.at("facets"); });
            if (!facets.is_null()) {
                if (!facets.is_array() || facets.empty())
                    throw parse_error(
                        "malformed certificate: facets must be null or a nonempty array");
                std::vector<std::int32_t> gens;
                for (const auto& jf : facets)
                    gens.push_back(detail::facet_index_by_names(*ambient, jf));
                dom = generated_subcomplex(ambient, gens).realized();
            }
            const json& chains =
                detail::shape_checked([&]() -> const json& { return j.at("chains"); });
            if (!chains.is_array() || chains.empty())
                throw parse_error("malformed certificate: chains must be a nonempty array");
            for (const auto& jc : chains) {
                chain_check cc = verify_chain_detail(detail::chain_from_json(dom, base, jc));
                if (!cc.ok) {
                    res.ok = false;
                    res.reason = cc.reason;
                    return res;
                }
            }
            res.ok = true;
            return res;
        }
    } catch (const parse_error&) {
        throw;
    } catch (const error& e) {
        res.ok = false;
        res.reason = e.what();
        return res;
    }
    throw parse_error("malformed certificate: unknown type " + type);
}

// ---------------------------------------------------------------------------
// Report fragments. These are one-way: reports are emitted for humans and
// scripts, only certificates round-trip.
// ---------------------------------------------------------------------------

inline json budget_to_json(const budget_report& b) {
    return json{{"states_explored", b.states_explored},
                {"oracle_calls", b.oracle_calls},
                {"millis", b.millis}};
}

inline json bound_result_to_json(const complex_ptr& base, const bound_result& r) {
    json out{{"lower", r.lower},
             {"status", to_string(r.status)},
             {"infinite", r.infinite},
             {"budget", budget_to_json(r.budget)},
             {"warnings", json::array()}};
    if (r.upper)
        out["upper"] = *r.upper;
    else
        out["upper"] = nullptr;
    for (const auto& note : r.notes) out["warnings"].push_back(note);
    if (r.certificate) out["certificate"] = certificate_to_json(base, *r.certificate);
    return out;
}

inline json suite_to_json(const suite_report& s) {
    json quantities = json::array();
    for (const auto& [label, value] : s.quantities) {
        json q{{"label", label},
               {"lower", value.lower},
               {"status", to_string(value.status)},
               {"infinite", value.infinite}};
        if (value.upper)
            q["upper"] = *value.upper;
        else
            q["upper"] = nullptr;
        quantities.push_back(q);
    }
    json comparisons = json::array();
    for (const auto& c : s.comparisons)
        comparisons.push_back(json{{"label", c.label}, {"holds", c.holds}, {"detail", c.detail}});
    json warnings = json::array();
    for (const auto& w : s.warnings) warnings.push_back(w);
    return json{{"quantities", quantities},
                {"comparisons", comparisons},
                {"warnings", warnings},
                {"strongly_collapsible", s.strongly_collapsible},
                {"all_hold", s.all_hold}};
}

}  // namespace tcx
