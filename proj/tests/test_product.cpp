#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "support.hpp"
#include "tcx/class_search.hpp"
#include "tcx/contiguity.hpp"
#include "tcx/isomorphism.hpp"
#include "tcx/product.hpp"

using namespace tcx;

namespace {

// Tuple of factor vertex indices for a product vertex, via row-major
// decoding of the flat index.
std::vector<std::int32_t> tuple_of(const product_complex& p, int flat) {
    std::vector<std::int32_t> t(static_cast<std::size_t>(p.arity()));
    for (int i = p.arity() - 1; i >= 0; --i) {
        int n = p.factors()[static_cast<std::size_t>(i)]->vertex_count();
        t[static_cast<std::size_t>(i)] = flat % n;
        flat /= n;
    }
    return t;
}

}  // namespace

TEST_CASE("product of two edges is a full simplex on four vertices") {
    auto edge = support::edge();
    product_complex p = categorical_product({edge, edge});
    CHECK(p.underlying()->vertex_count() == 4);
    REQUIRE(p.underlying()->facet_count() == 1);
    CHECK(p.underlying()->facets()[0].count() == 4);
}

TEST_CASE("a single-vertex factor changes nothing but labels") {
    auto edge = support::edge();
    auto pt = support::point();
    product_complex p = categorical_product({edge, pt});
    CHECK(same_structure(*p.underlying(), *edge));
    CHECK(is_isomorphic(*p.underlying(), *edge).has_value());
}

TEST_CASE("the squared triangle boundary has nine grid facets") {
    auto hollow = support::hollow_triangle();
    product_complex p = power(hollow, 2);
    CHECK(p.is_power());
    CHECK(p.underlying()->vertex_count() == 9);
    CHECK(p.underlying()->facet_count() == 9);
    for (const auto& f : p.underlying()->facets()) CHECK(f.count() == 4);
}

TEST_CASE("first power is the complex itself up to tuple labels") {
    auto fig = support::figure1();
    product_complex p = power(fig, 1);
    CHECK(same_structure(*p.underlying(), *fig));
    CHECK(p.arity() == 1);
}

TEST_CASE("vertex indexing is row-major over factor vertex counts") {
    auto hollow = support::hollow_triangle();
    auto edge = support::edge();
    product_complex p = categorical_product({hollow, edge});
    const int n_edge = edge->vertex_count();
    for (int i = 0; i < hollow->vertex_count(); ++i) {
        for (int j = 0; j < n_edge; ++j) {
            int flat = i * n_edge + j;
            std::string expected = "(" + hollow->label(i) + "," + edge->label(j) + ")";
            CHECK(p.underlying()->label(flat) == expected);
        }
    }
}

TEST_CASE("membership equals the face test on the underlying complex") {
    auto hollow = support::hollow_triangle();
    auto edge = support::edge();

    auto check_all = [](const product_complex& p) {
        const int n = p.underlying()->vertex_count();
        REQUIRE(n <= 9);
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            std::vector<std::vector<std::int32_t>> tuples;
            vertex_set s;
            for (int v = 0; v < n; ++v) {
                if (mask & (std::uint64_t{1} << v)) {
                    tuples.push_back(tuple_of(p, v));
                    s.set(v);
                }
            }
            CHECK(member(p, tuples) == p.underlying()->contains(s));
        }
    };
    check_all(power(hollow, 2));
    check_all(power(edge, 3));
}

TEST_CASE("membership follows the projection characterization") {
    auto hollow = support::hollow_triangle();
    product_complex p = power(hollow, 2);
    int a = hollow->vertex_index("a");
    int b = hollow->vertex_index("b");
    int c = hollow->vertex_index("c");
    // Projections {a,b} and {a,b} are faces: a simplex.
    CHECK(member(p, {{a, a}, {b, b}}));
    // Projection {a,b,c} is not a face of the hollow triangle.
    CHECK_FALSE(member(p, {{a, a}, {b, b}, {c, c}}));
    // Singleton tuples always are.
    CHECK(member(p, {{c, a}}));
}

TEST_CASE("projections compose with the diagonal to the identity") {
    auto hollow = support::hollow_triangle();
    for (int n = 2; n <= 3; ++n) {
        product_complex p = power(hollow, n);
        simplicial_map d = diagonal(hollow, p);
        for (int i = 1; i <= n; ++i) {
            simplicial_map pi = projection(p, i);
            CHECK(compose(pi, d) == identity_map(hollow));
        }
    }
}

TEST_CASE("projections send grid facets onto their factor facets") {
    auto hollow = support::hollow_triangle();
    product_complex p = power(hollow, 2);
    simplicial_map pi1 = projection(p, 1);
    simplicial_map pi2 = projection(p, 2);
    for (const auto& grid : p.underlying()->facets()) {
        vertex_set f1 = pi1.image(grid);
        vertex_set f2 = pi2.image(grid);
        CHECK(hollow->facet_index(f1) >= 0);
        CHECK(hollow->facet_index(f2) >= 0);
    }
}

TEST_CASE("projection index bounds are enforced") {
    auto edge = support::edge();
    product_complex p = power(edge, 2);
    CHECK_THROWS_AS(projection(p, 0), index_out_of_range);
    CHECK_THROWS_AS(projection(p, 3), index_out_of_range);
}

TEST_CASE("the identity and constants behave under map powers") {
    auto hollow = support::hollow_triangle();
    product_complex p = power(hollow, 2);

    simplicial_map idp = map_power(identity_map(hollow), 2);
    CHECK(idp == identity_map(p.underlying()));

    int b = hollow->vertex_index("b");
    simplicial_map cb = map_power(constant_map(hollow, hollow, b), 2);
    int bb = p.underlying()->vertex_index("(b,b)");
    REQUIRE(bb >= 0);
    CHECK(cb == constant_map(p.underlying(), p.underlying(), bb));
}

TEST_CASE("map powers are functorial under composition") {
    oracle::facet_list dom_f{{0, 1}, {1, 2}, {0, 2}};
    oracle::facet_list mid_f{{0, 1, 2}};
    auto hollow = support::from_ints(dom_f);
    auto full = support::from_ints(mid_f);
    auto fs = oracle::all_maps(dom_f, mid_f);
    auto gs = oracle::all_maps(mid_f, dom_f);
    REQUIRE(!fs.empty());
    REQUIRE(!gs.empty());
    for (std::size_t i = 0; i < fs.size(); i += 8) {
        for (std::size_t j = 0; j < gs.size(); j += 8) {
            auto f = support::to_map(hollow, full, fs[i]);
            auto g = support::to_map(full, hollow, gs[j]);
            CHECK(map_power(compose(g, f), 2) ==
                  compose(map_power(g, 2), map_power(f, 2)));
        }
    }
}

TEST_CASE("map powers preserve contiguity of sampled pairs") {
    oracle::facet_list dom_f{{0, 1}, {1, 2}, {0, 2}};
    oracle::facet_list cod_f{{0, 1, 2}};
    auto hollow = support::from_ints(dom_f);
    auto full = support::from_ints(cod_f);
    auto maps = oracle::all_maps(dom_f, cod_f);
    int checked = 0;
    for (std::size_t i = 0; i < maps.size() && checked < 12; i += 5) {
        for (std::size_t j = i + 1; j < maps.size() && checked < 12; j += 7) {
            if (!oracle::contiguous(dom_f, cod_f, maps[i], maps[j])) continue;
            auto phi = support::to_map(hollow, full, maps[i]);
            auto psi = support::to_map(hollow, full, maps[j]);
            for (int n = 2; n <= 3; ++n)
                CHECK(is_contiguous(map_power(phi, n), map_power(psi, n)));
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("preimages under the identity and constants are extreme") {
    auto hollow = support::hollow_triangle();
    subcomplex omega = generated_subcomplex(hollow, std::vector<std::int32_t>{0, 1});

    subcomplex back = preimage_subcomplex(identity_map(hollow), omega);
    CHECK(same_labelled(*back.realized(), *omega.realized()));

    int a = hollow->vertex_index("a");
    // a lies in omega, so the constant at a pulls omega back to everything.
    subcomplex all = preimage_subcomplex(constant_map(hollow, hollow, a), omega);
    CHECK(same_labelled(*all.realized(), *hollow));
}

TEST_CASE("preimage of a grid facet under a coordinate embedding") {
    auto hollow = support::hollow_triangle();
    product_complex p = power(hollow, 2);
    int a = hollow->vertex_index("a");
    int b = hollow->vertex_index("b");

    // g(v) = (v, b): embed as the slice at second coordinate b.
    std::vector<std::int32_t> assign(static_cast<std::size_t>(hollow->vertex_count()));
    for (int v = 0; v < hollow->vertex_count(); ++v) {
        int flat = v * hollow->vertex_count() + b;
        assign[static_cast<std::size_t>(v)] = flat;
    }
    simplicial_map g(hollow, p.underlying(), std::move(assign));

    // Omega = the grid facet {a,b} x {a,b}; b lies in the second factor
    // facet, so the preimage is generated by {a,b}.
    vertex_set grid;
    grid.set(a * 3 + a);
    grid.set(a * 3 + b);
    grid.set(b * 3 + a);
    grid.set(b * 3 + b);
    int gi = p.underlying()->facet_index(grid);
    REQUIRE(gi >= 0);
    subcomplex omega = generated_subcomplex(p.underlying(), std::vector<std::int32_t>{gi});

    subcomplex pre = preimage_subcomplex(g, omega);
    REQUIRE(pre.realized()->vertex_count() == 2);
    CHECK(pre.realized()->vertex_index("a") >= 0);
    CHECK(pre.realized()->vertex_index("b") >= 0);
}

TEST_CASE("oversized products are rejected with a size error") {
    // 7 factors of the 3-vertex boundary give 3^7 = 2187 vertices, past the
    // 256-vertex representation limit.
    auto hollow = support::hollow_triangle();
    CHECK_THROWS_AS(power(hollow, 7), size_limit_exceeded);
}
