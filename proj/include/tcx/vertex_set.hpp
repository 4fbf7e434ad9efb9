#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace tcx {

/**
 * Fixed-width set of vertex indices, used for simplices and facets.
 *
 * The width is a hard limit: complexes with more than max_vertices vertices
 * are rejected up front (see complex construction), which keeps every set
 * operation branch-free and allocation-free. Vertices are indices into the
 * owning complex's label table.
 */
struct vertex_set {
    static constexpr int max_vertices = 256;
    static constexpr int word_count = max_vertices / 64;

    std::array<std::uint64_t, word_count> w{};

    static vertex_set single(int v) {
        vertex_set s;
        s.set(v);
        return s;
    }

    void set(int v) { w[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void reset(int v) { w[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    bool test(int v) const { return (w[v >> 6] >> (v & 63)) & 1; }

    bool empty() const {
        for (auto x : w)
            if (x) return false;
        return true;
    }

    int count() const {
        int c = 0;
        for (auto x : w) c += std::popcount(x);
        return c;
    }

    // Smallest element, or -1 when empty.
    int lowest() const {
        for (int i = 0; i < word_count; ++i)
            if (w[i]) return i * 64 + std::countr_zero(w[i]);
        return -1;
    }

    bool any_above(int v) const {
        int wi = v >> 6;
        std::uint64_t high = w[wi] & ~((std::uint64_t{2} << (v & 63)) - 1);
        if (high) return true;
        for (int i = wi + 1; i < word_count; ++i)
            if (w[i]) return true;
        return false;
    }

    bool subset_of(const vertex_set& o) const {
        for (int i = 0; i < word_count; ++i)
            if (w[i] & ~o.w[i]) return false;
        return true;
    }

    bool intersects(const vertex_set& o) const {
        for (int i = 0; i < word_count; ++i)
            if (w[i] & o.w[i]) return true;
        return false;
    }

    friend vertex_set operator|(const vertex_set& a, const vertex_set& b) {
        vertex_set r;
        for (int i = 0; i < word_count; ++i) r.w[i] = a.w[i] | b.w[i];
        return r;
    }

    friend vertex_set operator&(const vertex_set& a, const vertex_set& b) {
        vertex_set r;
        for (int i = 0; i < word_count; ++i) r.w[i] = a.w[i] & b.w[i];
        return r;
    }

    // Set difference a \ b.
    friend vertex_set minus(const vertex_set& a, const vertex_set& b) {
        vertex_set r;
        for (int i = 0; i < word_count; ++i) r.w[i] = a.w[i] & ~b.w[i];
        return r;
    }

    friend bool operator==(const vertex_set& a, const vertex_set& b) { return a.w == b.w; }
    friend bool operator!=(const vertex_set& a, const vertex_set& b) { return !(a == b); }

    // Visits elements in ascending order.
    template <class F>
    void for_each(F&& f) const {
        for (int i = 0; i < word_count; ++i) {
            std::uint64_t x = w[i];
            while (x) {
                int b = std::countr_zero(x);
                f(i * 64 + b);
                x &= x - 1;
            }
        }
    }

    std::vector<std::int32_t> to_vector() const {
        std::vector<std::int32_t> out;
        out.reserve(static_cast<std::size_t>(count()));
        for_each([&](int v) { out.push_back(v); });
        return out;
    }
};

/**
 * Total order matching lexicographic comparison of the ascending element
 * lists, e.g. {0} < {0,1} < {0,2} < {1}. This is the canonical facet order
 * used for storage and for serialized output.
 */
inline bool lex_less(const vertex_set& a, const vertex_set& b) {
    for (int i = 0; i < vertex_set::word_count; ++i) {
        std::uint64_t diff = a.w[i] ^ b.w[i];
        if (!diff) continue;
        int j = i * 64 + std::countr_zero(diff);
        if (a.test(j)) {
            // a's next element is j; b either continues above j or is a
            // proper prefix of a.
            return b.any_above(j);
        }
        return !a.any_above(j);
    }
    return false;
}

struct vertex_set_hash {
    std::size_t operator()(const vertex_set& s) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto x : s.w) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace tcx
