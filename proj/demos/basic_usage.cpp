// Walks through the core of the library on two small complexes: building
// them from facet lists, strong collapses, the category and covering
// invariants as proven intervals, and one contiguity question. Run it with
// no arguments.

#include <iostream>
#include <string>

#include "tcx/collapse.hpp"
#include "tcx/complex.hpp"
#include "tcx/class_search.hpp"
#include "tcx/invariants.hpp"
#include "tcx/product.hpp"

static std::string interval(const tcx::bound_result& r) {
    std::string upper = r.upper ? std::to_string(*r.upper) : std::string("inf");
    return "[" + std::to_string(r.lower) + ", " + upper + "] (" +
           tcx::to_string(r.status) + ")";
}

int main() {
    // A complex is its list of maximal faces; contained or duplicate entries
    // are absorbed during normalization.
    tcx::complex_ptr hollow =
        tcx::normalize({{"a", "b"}, {"b", "c"}, {"a", "c"}});
    tcx::complex_ptr cone =
        tcx::normalize({{"a", "b", "t"}, {"b", "c", "t"}, {"a", "c", "t"}});

    std::cout << "hollow triangle: " << hollow->vertex_count() << " vertices, "
              << hollow->facet_count() << " facets\n";
    std::cout << "cone:            " << cone->vertex_count() << " vertices, "
              << cone->facet_count() << " facets\n\n";

    // Strong collapses delete dominated vertices. The cone collapses to a
    // point; the hollow triangle is already its own core.
    tcx::core_result cone_core = tcx::core(cone);
    std::cout << "cone collapses in " << cone_core.steps.size()
              << " steps to " << cone_core.core->vertex_count() << " vertex; "
              << "strongly collapsible: "
              << (tcx::is_strongly_collapsible(cone) ? "yes" : "no") << "\n";
    std::cout << "hollow triangle strongly collapsible: "
              << (tcx::is_strongly_collapsible(hollow) ? "yes" : "no") << "\n\n";

    // Both invariants come back as proven intervals with certificates; exact
    // means the interval closed. The hollow triangle needs two categorical
    // pieces (value 1) and three comparison pieces at arity 2 (value 2); the
    // cone is collapsible, so both values are 0.
    std::cout << "scat(hollow)  = " << interval(tcx::scat(hollow)) << "\n";
    std::cout << "tc(hollow, 2) = " << interval(tcx::tc(hollow, 2)) << "\n";
    std::cout << "scat(cone)    = " << interval(tcx::scat(cone)) << "\n";
    std::cout << "tc(cone, 2)   = " << interval(tcx::tc(cone, 2)) << "\n\n";

    // Powers carry the projections back to the base; vertex (i, j) of the
    // square projects to i under the first and j under the second.
    tcx::product_complex square = tcx::power(hollow, 2);
    std::cout << "hollow^2: " << square.underlying()->vertex_count()
              << " vertices, " << square.underlying()->facet_count()
              << " facets\n\n";

    // A fold of the triangle onto one of its edges can be slid to a constant
    // map; the search returns the chain of single-vertex moves that does it.
    tcx::simplicial_map fold(hollow, hollow, {0, 1, 0});
    tcx::class_decision d = tcx::class_contains_constant(fold);
    std::cout << "fold a,b,c -> a,b,a deforms to a constant: "
              << tcx::to_string(d.v);
    if (d.chain)
        std::cout << " (chain of " << d.chain->maps().size() << " maps)";
    std::cout << "\n";
    return 0;
}
