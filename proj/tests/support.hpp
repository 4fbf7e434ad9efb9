#pragma once

#include <string>
#include <vector>

#include "oracles.hpp"
#include "tcx/complex.hpp"

namespace support {

// Library-side complex from an oracle facet list, vertex v named "v<int>".
// Library indices follow first appearance and need not equal the oracle
// integers, so all comparisons go through the label translation below.
inline tcx::complex_ptr from_ints(const oracle::facet_list& facets) {
    std::vector<std::vector<std::string>> fs;
    for (const auto& f : facets) {
        std::vector<std::string> one;
        for (int v : f) one.push_back("v" + std::to_string(v));
        fs.push_back(one);
    }
    return tcx::normalize(fs);
}

// Oracle integer of a library vertex.
inline int oracle_vertex(const tcx::complex& k, int lib_v) {
    return std::stoi(k.label(lib_v).substr(1));
}

// Library index of an oracle vertex.
inline int lib_vertex(const tcx::complex& k, int oracle_v) {
    return k.vertex_index("v" + std::to_string(oracle_v));
}

// Library facets translated back to oracle integers.
inline oracle::facet_list to_ints(const tcx::complex& k) {
    oracle::facet_list out;
    for (const auto& f : k.facets()) {
        oracle::simplex s;
        f.for_each([&](int v) { s.insert(oracle_vertex(k, v)); });
        out.push_back(s);
    }
    return out;
}

// Library vertex set for an oracle simplex.
inline tcx::vertex_set to_set(const tcx::complex& k, const oracle::simplex& s) {
    tcx::vertex_set out;
    for (int v : s) out.set(lib_vertex(k, v));
    return out;
}

// Library map from an oracle assignment (indexed by oracle vertex).
inline tcx::simplicial_map to_map(const tcx::complex_ptr& dom, const tcx::complex_ptr& cod,
                                  const std::vector<int>& oracle_assign) {
    std::vector<std::int32_t> assign(static_cast<std::size_t>(dom->vertex_count()));
    for (int v = 0; v < dom->vertex_count(); ++v) {
        int ov = oracle_vertex(*dom, v);
        assign[static_cast<std::size_t>(v)] =
            lib_vertex(*cod, oracle_assign[static_cast<std::size_t>(ov)]);
    }
    return tcx::simplicial_map(dom, cod, std::move(assign));
}

// Oracle assignment (indexed by oracle vertex) from a library map.
inline std::vector<int> to_oracle_map(const tcx::simplicial_map& m) {
    const tcx::complex& dom = *m.domain();
    const tcx::complex& cod = *m.codomain();
    std::vector<int> assign(static_cast<std::size_t>(dom.vertex_count()), -1);
    for (int v = 0; v < dom.vertex_count(); ++v)
        assign[static_cast<std::size_t>(oracle_vertex(dom, v))] =
            oracle_vertex(cod, m(v));
    return assign;
}

inline tcx::complex_ptr point() { return tcx::normalize({{"a"}}); }
inline tcx::complex_ptr edge() { return tcx::normalize({{"a", "b"}}); }
inline tcx::complex_ptr full_triangle() { return tcx::normalize({{"a", "b", "c"}}); }
inline tcx::complex_ptr hollow_triangle() {
    return tcx::normalize({{"a", "b"}, {"b", "c"}, {"a", "c"}});
}
inline tcx::complex_ptr cone() {
    return tcx::normalize({{"a", "b", "d"}, {"b", "c", "d"}, {"a", "c", "d"}});
}
inline tcx::complex_ptr figure1() {
    return tcx::normalize({{"A", "B", "D"},
                           {"B", "C", "E"},
                           {"C", "A", "F"},
                           {"A", "D", "F"},
                           {"B", "D", "E"},
                           {"C", "E", "F"},
                           {"D", "E", "F"}});
}

}  // namespace support
