#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "support.hpp"
#include "tcx/class_search.hpp"
#include "tcx/contiguity.hpp"
#include "tcx/product.hpp"

using namespace tcx;

namespace {

simplicial_map self_map(const complex_ptr& k, std::vector<std::int32_t> assign) {
    return simplicial_map(k, k, std::move(assign));
}

// Single-target decision through the internal engine so the reduction
// toggle can be exercised; the public entry points always reduce.
verdict decide_with(const simplicial_map& phi, const simplicial_map& psi, bool reduce) {
    search_budget budget;
    auto md = tcx::detail::decide_class(phi, {psi}, false, budget,
                                        tcx::detail::deadline_after_ms(budget.max_millis),
                                        reduce, false);
    return md.per_target.at(0);
}

}  // namespace

TEST_CASE("a map is contiguous to itself and to anything into a full simplex") {
    CHECK(is_contiguous(identity_map(support::hollow_triangle()),
                        identity_map(support::hollow_triangle())));

    // Between the hollow and full triangle every pair of maps is contiguous
    // because every vertex union spans a simplex of the codomain.
    oracle::facet_list dom_f{{0, 1}, {1, 2}, {0, 2}};
    oracle::facet_list cod_f{{0, 1, 2}};
    auto dom = support::from_ints(dom_f);
    auto cod = support::from_ints(cod_f);
    auto maps = oracle::all_maps(dom_f, cod_f);
    for (std::size_t i = 0; i < maps.size(); i += 3)
        for (std::size_t j = 0; j < maps.size(); j += 5)
            CHECK(is_contiguous(support::to_map(dom, cod, maps[i]),
                                support::to_map(dom, cod, maps[j])));
}

TEST_CASE("identity and rotation of the triangle boundary are not contiguous") {
    auto hollow = support::hollow_triangle();
    int a = hollow->vertex_index("a");
    int b = hollow->vertex_index("b");
    int c = hollow->vertex_index("c");
    std::vector<std::int32_t> rot(3);
    rot[static_cast<std::size_t>(a)] = b;
    rot[static_cast<std::size_t>(b)] = c;
    rot[static_cast<std::size_t>(c)] = a;
    CHECK_FALSE(is_contiguous(identity_map(hollow), self_map(hollow, rot)));
    // The offending facet is located for the chain verifier's reporting.
    CHECK(first_noncontiguous_facet(identity_map(hollow), self_map(hollow, rot)) >= 0);
}

TEST_CASE("contiguity agrees with the facet-union definition on random pairs") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        oracle::rng r(seed * 131);
        auto dom_f = oracle::random_complex(r, 4, 4);
        auto cod_f = oracle::random_complex(r, 4, 4);
        auto dom = support::from_ints(dom_f);
        auto cod = support::from_ints(cod_f);
        auto maps = oracle::all_maps(dom_f, cod_f);
        if (maps.empty()) continue;
        for (std::size_t i = 0; i < maps.size(); i += 7) {
            for (std::size_t j = 0; j < maps.size(); j += 11) {
                bool expected = oracle::contiguous(dom_f, cod_f, maps[i], maps[j]);
                CHECK(is_contiguous(support::to_map(dom, cod, maps[i]),
                                    support::to_map(dom, cod, maps[j])) == expected);
            }
        }
    }
}

TEST_CASE("identity of the triangle boundary is alone in its class") {
    auto hollow = support::hollow_triangle();
    int a = hollow->vertex_index("a");

    class_decision d = same_contiguity_class(identity_map(hollow),
                                             constant_map(hollow, hollow, a));
    CHECK(d.v == verdict::no);

    class_decision c = class_contains_constant(identity_map(hollow));
    CHECK(c.v == verdict::no);

    // Brute force the full contiguity graph: the identity's component is a
    // singleton, so the class search over single-vertex moves agrees.
    auto members = contiguity_class_members(identity_map(hollow));
    CHECK(members.size() == 1);
}

TEST_CASE("maps into a full simplex are joined by a two-map chain") {
    oracle::facet_list dom_f{{0, 1}, {1, 2}, {0, 2}};
    oracle::facet_list cod_f{{0, 1, 2}};
    auto hollow = support::from_ints(dom_f);
    auto full = support::from_ints(cod_f);
    auto maps = oracle::all_maps(dom_f, cod_f);
    REQUIRE(maps.size() >= 2);
    auto phi = support::to_map(hollow, full, maps[1]);
    auto psi = support::to_map(hollow, full, maps[maps.size() - 2]);
    class_decision d = same_contiguity_class(phi, psi);
    REQUIRE(d.v == verdict::yes);
    REQUIRE(d.chain.has_value());
    CHECK(d.chain->length() <= 2);
    CHECK(verify_chain(*d.chain));
    CHECK(d.chain->declared_first() == phi);
    CHECK(d.chain->declared_last() == psi);
}

TEST_CASE("a path inclusion into the triangle boundary reaches a constant") {
    auto hollow = support::hollow_triangle();
    // Facets of the hollow triangle in canonical order: ab, ac, bc. The path
    // is the subcomplex generated by ab and ac.
    subcomplex path = generated_subcomplex(hollow, std::vector<std::int32_t>{0, 1});
    int a = hollow->vertex_index("a");
    simplicial_map inc = path.inclusion();
    simplicial_map ca = constant_map(path.realized(), hollow, a);

    class_decision d = same_contiguity_class(inc, ca);
    REQUIRE(d.v == verdict::yes);
    REQUIRE(d.chain.has_value());
    CHECK(verify_chain(*d.chain));
    CHECK(d.chain->declared_first() == inc);
    CHECK(d.chain->declared_last() == ca);

    class_decision any = class_contains_constant(inc);
    CHECK(any.v == verdict::yes);
}

TEST_CASE("class decisions match brute-force contiguity components") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        oracle::rng r(seed * 419);
        auto dom_f = oracle::random_complex(r, 4, 3);
        auto cod_f = oracle::random_complex(r, 4, 3);
        auto dom = support::from_ints(dom_f);
        auto cod = support::from_ints(cod_f);
        auto classes = oracle::contiguity_classes(dom_f, cod_f);
        if (classes.empty()) continue;
        std::vector<std::vector<int>> maps;
        for (const auto& [m, id] : classes) maps.push_back(m);
        for (std::size_t i = 0; i < maps.size(); i += 5) {
            for (std::size_t j = 0; j < maps.size(); j += 3) {
                verdict got = same_contiguity_class(support::to_map(dom, cod, maps[i]),
                                                    support::to_map(dom, cod, maps[j]))
                                  .v;
                bool expected = classes.at(maps[i]) == classes.at(maps[j]);
                CHECK(got == (expected ? verdict::yes : verdict::no));
            }
        }
    }
}

TEST_CASE("core reduction does not change verdicts") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        oracle::rng r(seed * 557);
        auto dom_f = oracle::random_complex(r, 4, 3);
        auto cod_f = oracle::random_complex(r, 4, 3);
        auto dom = support::from_ints(dom_f);
        auto cod = support::from_ints(cod_f);
        auto maps = oracle::all_maps(dom_f, cod_f);
        if (maps.size() < 2) continue;
        for (std::size_t i = 0; i < maps.size(); i += 9) {
            for (std::size_t j = 0; j < maps.size(); j += 6) {
                auto phi = support::to_map(dom, cod, maps[i]);
                auto psi = support::to_map(dom, cod, maps[j]);
                CHECK(decide_with(phi, psi, true) == decide_with(phi, psi, false));
            }
        }
    }
}

TEST_CASE("yes verdicts are symmetric and transitive") {
    oracle::facet_list hollow_f{{0, 1}, {1, 2}, {0, 2}};
    auto hollow = support::from_ints(hollow_f);
    auto maps = oracle::all_maps(hollow_f, hollow_f);
    std::vector<simplicial_map> sample;
    for (std::size_t i = 0; i < maps.size(); i += 4)
        sample.push_back(support::to_map(hollow, hollow, maps[i]));
    std::vector<std::vector<verdict>> v(sample.size(),
                                        std::vector<verdict>(sample.size()));
    for (std::size_t i = 0; i < sample.size(); ++i)
        for (std::size_t j = 0; j < sample.size(); ++j)
            v[i][j] = same_contiguity_class(sample[i], sample[j]).v;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        CHECK(v[i][i] == verdict::yes);
        for (std::size_t j = 0; j < sample.size(); ++j) {
            CHECK(v[i][j] == v[j][i]);
            for (std::size_t l = 0; l < sample.size(); ++l)
                if (v[i][j] == verdict::yes && v[j][l] == verdict::yes)
                    CHECK(v[i][l] == verdict::yes);
        }
    }
}

TEST_CASE("a tiny state budget yields unknown rather than a wrong no") {
    // The ring of grid facets over one edge of the squared boundary slides
    // around the square, so its inclusion sits in a class far larger than a
    // two-state budget can exhaust.
    auto hollow = support::hollow_triangle();
    product_complex p = power(hollow, 2);
    simplicial_map pi2 = projection(p, 2);
    const vertex_set& edge_ab = hollow->facets()[0];
    std::vector<std::int32_t> ring;
    for (int i = 0; i < p.underlying()->facet_count(); ++i)
        if (pi2.image(p.underlying()->facets()[static_cast<std::size_t>(i)]) ==
            edge_ab)
            ring.push_back(i);
    REQUIRE(ring.size() == 3);
    subcomplex omega = generated_subcomplex(p.underlying(), ring);

    search_budget tight;
    tight.max_states = 2;
    class_decision d = class_contains_constant(omega.inclusion(), tight);
    CHECK(d.v == verdict::unknown);

    // With room to exhaust the class, the answer is a definitive no.
    class_decision full = class_contains_constant(omega.inclusion());
    CHECK(full.v == verdict::no);
}

TEST_CASE("chain verification accepts singletons and replayed chains") {
    auto hollow = support::hollow_triangle();
    simplicial_map id = identity_map(hollow);
    contiguity_chain single({id}, id, id);
    CHECK(verify_chain(single));

    subcomplex path = generated_subcomplex(hollow, std::vector<std::int32_t>{0, 1});
    int a = hollow->vertex_index("a");
    auto d = same_contiguity_class(path.inclusion(), constant_map(path.realized(), hollow, a));
    REQUIRE(d.chain.has_value());
    chain_check res = verify_chain_detail(*d.chain);
    CHECK(res.ok);
    CHECK(res.reason.empty());
}

TEST_CASE("chain verification locates broken pairs and endpoints") {
    auto hollow = support::hollow_triangle();
    int a = hollow->vertex_index("a");
    int b = hollow->vertex_index("b");
    int c = hollow->vertex_index("c");
    std::vector<std::int32_t> rot(3);
    rot[static_cast<std::size_t>(a)] = b;
    rot[static_cast<std::size_t>(b)] = c;
    rot[static_cast<std::size_t>(c)] = a;
    simplicial_map id = identity_map(hollow);
    simplicial_map r = self_map(hollow, rot);

    // Adjacent identity/rotation pair: rejected at that pair with a facet.
    contiguity_chain broken({id, r}, id, r);
    chain_check res = verify_chain_detail(broken);
    CHECK_FALSE(res.ok);
    CHECK(res.pair_index == 0);
    CHECK(res.facet >= 0);

    // Valid maps, wrong declared endpoints.
    contiguity_chain wrong_end({id}, id, r);
    chain_check ends = verify_chain_detail(wrong_end);
    CHECK_FALSE(ends.ok);
    CHECK_FALSE(ends.reason.empty());
}

TEST_CASE("class enumeration equals the brute-force component") {
    oracle::facet_list dom_f{{0, 1}, {1, 2}, {0, 2}};
    oracle::facet_list cod_f{{0, 1, 2}};
    auto hollow = support::from_ints(dom_f);
    auto full = support::from_ints(cod_f);
    auto classes = oracle::contiguity_classes(dom_f, cod_f);

    auto phi_assign = oracle::all_maps(dom_f, cod_f).front();
    auto phi = support::to_map(hollow, full, phi_assign);
    auto members = contiguity_class_members(phi);

    std::set<std::vector<int>> got;
    for (const auto& m : members)
        got.insert(support::to_oracle_map(simplicial_map(hollow, full, m)));
    std::set<std::vector<int>> expected;
    int id = classes.at(phi_assign);
    for (const auto& [m, cls] : classes)
        if (cls == id) expected.insert(m);
    CHECK(got == expected);
}
