#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tcx/class_search.hpp"
#include "tcx/collapse.hpp"
#include "tcx/complex.hpp"
#include "tcx/contiguity.hpp"
#include "tcx/cover.hpp"
#include "tcx/errors.hpp"
#include "tcx/product.hpp"

namespace tcx {

// Aggregate effort counters for one invariant computation.
struct budget_report {
    std::uint64_t states_explored = 0;
    std::uint64_t oracle_calls = 0;
    std::uint64_t millis = 0;
};

enum class bound_status { exact, bounds, unknown };

inline std::string to_string(bound_status s) {
    switch (s) {
        case bound_status::exact: return "exact";
        case bound_status::bounds: return "bounds";
        default: return "unknown";
    }
}

// One element of a cover: the ambient facets generating the subcomplex plus
// the chains witnessing its property. Categorical elements carry one chain
// (inclusion to a constant map); Farber elements of arity n carry n-1 chains
// (first projection to the j-th, for j = 2..n, in order).
struct cover_element {
    std::vector<std::int32_t> generators;
    std::vector<contiguity_chain> witness;
};

struct cover_certificate {
    std::string kind;  // "categorical" or "farber"
    int arity = 1;
    std::vector<cover_element> elements;
};

// Value of a cover-based invariant as a proven interval. `upper` empty means
// no finite upper bound was found within budget; `infinite` means a proof
// that no finite value exists. `exact` status requires lower == upper and a
// certificate witnessing the upper bound; the notes then record how smaller
// covers were refuted.
struct bound_result {
    int lower = 0;
    std::optional<int> upper;
    bound_status status = bound_status::unknown;
    std::optional<cover_certificate> certificate;
    budget_report budget;
    std::vector<std::string> notes;
    bool infinite = false;
};

/**
 * Whether the subcomplex can be deformed to a point inside its ambient
 * complex: the inclusion map lies in the contiguity class of a constant map.
 */
inline class_decision is_categorical(const subcomplex& omega,
                                     const search_budget& budget = {}) {
    return class_contains_constant(omega.inclusion(), budget);
}

// Verdict for the projection-comparison property of a subcomplex of a power,
// with one witness chain per comparison: chains[j-2] joins the restriction of
// the first projection to that of the j-th.
struct farber_decision {
    verdict v = verdict::unknown;
    std::uint64_t states_explored = 0;
    std::vector<contiguity_chain> chains;
};

namespace detail {

inline farber_decision farber_with_deadline(const product_complex& p,
                                            const subcomplex& omega,
                                            const search_budget& budget,
                                            steady::time_point deadline,
                                            bool want_chains) {
    if (!p.is_power())
        throw not_a_power("the projection-comparison test needs a power complex");
    if (!same_labelled(*omega.ambient(), *p.underlying()))
        throw domain_mismatch("subcomplex does not live in the given power");
    budget.validate();

    simplicial_map pi1 = restrict(projection(p, 1), omega);
    std::vector<simplicial_map> targets;
    targets.reserve(static_cast<std::size_t>(p.arity()) - 1);
    for (int j = 2; j <= p.arity(); ++j)
        targets.push_back(restrict(projection(p, j), omega));

    detail::multi_decision md =
        decide_class(pi1, targets, false, budget, deadline, true, want_chains);
    farber_decision out;
    out.states_explored = md.states_explored;
    out.v = verdict::yes;
    for (const verdict tv : md.per_target) {
        if (tv == verdict::no) {
            out.v = verdict::no;
            break;
        }
        if (tv == verdict::unknown) out.v = verdict::unknown;
    }
    if (out.v == verdict::yes && want_chains) {
        for (auto& c : md.chains) {
            if (!c) throw std::logic_error("missing chain for a confirmed target");
            out.chains.push_back(std::move(*c));
        }
    }
    return out;
}

}  // namespace detail

/**
 * Whether all coordinate projections of a power complex restrict to the same
 * contiguity class on the given subcomplex. Comparing every projection with
 * the first suffices, and one search from the first restriction answers all
 * comparisons at once.
 */
inline farber_decision is_farber(const product_complex& p, const subcomplex& omega,
                                 const search_budget& budget = {},
                                 bool want_chains = true) {
    return detail::farber_with_deadline(
        p, omega, budget, detail::deadline_after_ms(budget.max_millis), want_chains);
}

/**
 * Replay of the defining condition, used as a test oracle: some simplicial
 * map sigma from the subcomplex to the base factor must make diagonal-after-
 * sigma land in the contiguity class of the inclusion. All sigma are
 * enumerated outright and fed to one multi-target class search.
 */
inline class_decision is_farber_by_definition(const product_complex& p,
                                              const subcomplex& omega,
                                              const search_budget& budget = {},
                                              std::uint64_t map_limit = 1'000'000) {
    if (!p.is_power())
        throw not_a_power("the projection-comparison test needs a power complex");
    if (!same_labelled(*omega.ambient(), *p.underlying()))
        throw domain_mismatch("subcomplex does not live in the given power");
    budget.validate();

    const complex_ptr& base = p.factors().front();
    simplicial_map iota = omega.inclusion();
    simplicial_map delta = diagonal(base, p);
    std::vector<std::vector<std::int32_t>> sigmas =
        all_simplicial_maps(*omega.realized(), *base, map_limit);
    std::vector<simplicial_map> targets;
    targets.reserve(sigmas.size());
    for (auto& s : sigmas)
        targets.push_back(
            compose(delta, simplicial_map(omega.realized(), base, std::move(s))));

    detail::multi_decision md =
        detail::decide_class(iota, targets, false, budget,
                             detail::deadline_after_ms(budget.max_millis), true,
                             false);
    class_decision out;
    out.states_explored = md.states_explored;
    out.v = verdict::no;
    std::size_t hit = targets.size();
    for (std::size_t i = 0; i < md.per_target.size(); ++i) {
        if (md.per_target[i] == verdict::yes) {
            out.v = verdict::yes;
            hit = i;
            break;
        }
        if (md.per_target[i] == verdict::unknown) out.v = verdict::unknown;
    }
    if (out.v == verdict::yes) {
        class_decision with_chain =
            same_contiguity_class(iota, targets[hit], budget);
        out.chain = with_chain.chain;
        out.states_explored += with_chain.states_explored;
    }
    return out;
}

namespace detail {

inline std::vector<std::int32_t> mask_to_indices(std::uint64_t m) {
    std::vector<std::int32_t> idx;
    while (m) {
        std::uint64_t bit = m & (~m + 1);
        idx.push_back(static_cast<std::int32_t>(__builtin_ctzll(bit)));
        m ^= bit;
    }
    return idx;
}

// Shared plumbing for the cover-based invariants: runs the cover engine,
// applies the value = cover size - 1 convention, and rebuilds witness chains
// for the chosen cover. `certify` re-decides one element's property with
// chains; it returns nothing when the replay fails, which downgrades the
// result rather than aborting. Complexes with more facets than the engine's
// 64-bit width fall back to the singleton cover.
inline bound_result run_cover_invariant(
    int facet_count, const std::function<feasibility(std::uint64_t)>& oracle,
    const std::function<std::optional<cover_element>(
        const std::vector<std::int32_t>&)>& certify,
    const std::string& kind, int arity, steady::time_point deadline) {
    bound_result r;

    auto attach_certificate = [&](const std::vector<std::vector<std::int32_t>>&
                                      chosen) {
        cover_certificate cert;
        cert.kind = kind;
        cert.arity = arity;
        for (const auto& gens : chosen) {
            auto el = certify(gens);
            if (!el) {
                r.notes.push_back(
                    "a cover element could not be re-certified; the "
                    "certificate was dropped");
                if (r.status == bound_status::exact) r.status = bound_status::bounds;
                return;
            }
            cert.elements.push_back(std::move(*el));
        }
        r.certificate = std::move(cert);
    };

    if (facet_count > 64) {
        r.notes.push_back("facet count " + std::to_string(facet_count) +
                          " exceeds the exact cover search width of 64; only "
                          "the cover by single facets is attempted");
        cover_certificate cert;
        cert.kind = kind;
        cert.arity = arity;
        bool all_confirmed = true;
        for (int f = 0; f < facet_count && all_confirmed; ++f) {
            auto el = certify({f});
            if (el)
                cert.elements.push_back(std::move(*el));
            else
                all_confirmed = false;
        }
        r.lower = 0;
        if (all_confirmed) {
            r.upper = facet_count - 1;
            r.certificate = std::move(cert);
            r.status = bound_status::bounds;
        } else {
            r.notes.push_back(
                "not every facet could be confirmed feasible on its own; no "
                "upper bound");
            r.status = bound_status::unknown;
        }
        return r;
    }

    cover_outcome c = min_cover_masks(facet_count, oracle, deadline);
    r.budget.oracle_calls += c.oracle_calls;
    r.notes.insert(r.notes.end(), c.notes.begin(), c.notes.end());
    r.lower = c.lower - 1;
    if (c.upper) r.upper = *c.upper - 1;
    r.infinite = c.cover_impossible;
    if (c.exact)
        r.status = bound_status::exact;
    else if (!r.upper && r.lower == 0)
        r.status = bound_status::unknown;
    else
        r.status = bound_status::bounds;

    if (c.upper) {
        std::vector<std::vector<std::int32_t>> chosen;
        chosen.reserve(c.cover.size());
        for (const std::uint64_t m : c.cover) chosen.push_back(mask_to_indices(m));
        attach_certificate(chosen);
    }
    return r;
}

inline feasibility to_feasibility(verdict v) {
    switch (v) {
        case verdict::yes: return feasibility::yes;
        case verdict::no: return feasibility::no;
        default: return feasibility::unknown;
    }
}

}  // namespace detail

/**
 * Smallest k such that k+1 categorical generated subcomplexes cover every
 * facet, as a proven interval with witness chains. A warning note is recorded
 * for complexes that are not edge-path connected; the value is still computed
 * from the same definition.
 */
inline bound_result scat(const complex_ptr& k, const search_budget& budget = {}) {
    budget.validate();
    const auto t0 = detail::steady::now();
    const auto deadline = detail::deadline_after_ms(budget.max_millis);
    budget_report rep;

    std::map<std::uint64_t, feasibility> cache;
    auto decide = [&](const std::vector<std::int32_t>& gens, bool chains)
        -> detail::multi_decision {
        subcomplex omega = generated_subcomplex(k, gens);
        detail::multi_decision md = detail::decide_class(
            omega.inclusion(), {}, true, budget,
            chains ? detail::deadline_after_ms(budget.max_millis) : deadline, true,
            chains);
        rep.states_explored += md.states_explored;
        return md;
    };
    auto oracle = [&](std::uint64_t m) {
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
        feasibility f = detail::to_feasibility(
            decide(detail::mask_to_indices(m), false).constant_verdict);
        cache.emplace(m, f);
        return f;
    };
    auto certify = [&](const std::vector<std::int32_t>& gens)
        -> std::optional<cover_element> {
        detail::multi_decision md = decide(gens, true);
        if (md.constant_verdict != verdict::yes || !md.constant_chain)
            return std::nullopt;
        cover_element el;
        el.generators = gens;
        el.witness.push_back(std::move(*md.constant_chain));
        return el;
    };

    bound_result r = detail::run_cover_invariant(k->facet_count(), oracle, certify,
                                                 "categorical", 1, deadline);
    if (!edge_path_connected(*k))
        r.notes.insert(r.notes.begin(),
                       "warning: the complex is not edge-path connected");
    r.budget.states_explored += rep.states_explored;
    r.budget.millis = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(detail::steady::now() -
                                                              t0)
            .count());
    return r;
}

/**
 * Smallest k such that k+1 subcomplexes with the projection-comparison
 * property cover the n-th power, as a proven interval with witness chains.
 *
 * Two independent relations sharpen and audit the cover search. The category
 * of the (n-1)-st power is a lower bound, computed first on a quarter of the
 * time budget so the cover search cannot starve it; when the complex is
 * edge-path connected and the power is small enough for the exhaustive
 * sweep, the category of the n-th power is computed as an upper-side
 * cross-check. Sound bounds can never cross, so a crossing raises
 * logic_error rather than returning.
 */
inline bound_result tc(const complex_ptr& k, int n, const search_budget& budget = {}) {
    if (n < 2)
        throw precondition_violated("tc needs n >= 2, got " + std::to_string(n));
    budget.validate();
    const auto t0 = detail::steady::now();
    const auto deadline = detail::deadline_after_ms(budget.max_millis);

    product_complex p = power(k, n);
    const complex_ptr& amb = p.underlying();
    const bool connected = edge_path_connected(*k);
    budget_report rep;

    search_budget slice = budget;
    slice.max_millis = std::max<std::uint64_t>(budget.max_millis / 4, 1);

    // Lower bound from the category of the previous power, computed first.
    int tighten = 0;
    if (connected) {
        bound_result s = n == 2 ? scat(k, slice) : scat(power(k, n - 1).underlying(), slice);
        tighten = s.lower;
        rep.states_explored += s.budget.states_explored;
        rep.oracle_calls += s.budget.oracle_calls;
    }

    std::map<std::uint64_t, feasibility> cache;
    auto decide = [&](const std::vector<std::int32_t>& gens, bool chains) {
        subcomplex omega = generated_subcomplex(amb, gens);
        farber_decision d = detail::farber_with_deadline(
            p, omega, budget,
            chains ? detail::deadline_after_ms(budget.max_millis) : deadline,
            chains);
        rep.states_explored += d.states_explored;
        return d;
    };
    auto oracle = [&](std::uint64_t m) {
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
        if (detail::steady::now() > deadline) return feasibility::unknown;
        feasibility f =
            detail::to_feasibility(decide(detail::mask_to_indices(m), false).v);
        cache.emplace(m, f);
        return f;
    };
    auto certify = [&](const std::vector<std::int32_t>& gens)
        -> std::optional<cover_element> {
        farber_decision d = decide(gens, true);
        if (d.v != verdict::yes) return std::nullopt;
        cover_element el;
        el.generators = gens;
        el.witness = std::move(d.chains);
        return el;
    };

    bound_result r = detail::run_cover_invariant(amb->facet_count(), oracle,
                                                 certify, "farber", n, deadline);
    if (!connected)
        r.notes.insert(r.notes.begin(),
                       "warning: the complex is not edge-path connected");

    if (tighten > r.lower && !r.infinite) {
        if (r.upper && *r.upper < tighten)
            throw std::logic_error(
                "bound crossing: the category of the previous power exceeds a "
                "certified cover of the current one");
        r.lower = tighten;
        r.notes.push_back(
            "lower bound raised to " + std::to_string(tighten) +
            " by the category of the (n-1)-st power, which never exceeds this "
            "invariant");
        if (r.status != bound_status::exact && r.upper && *r.upper == r.lower) {
            r.status = bound_status::exact;
            r.notes.push_back(
                "interval closed by the raised lower bound; the certificate "
                "witnesses the matching cover");
        } else if (r.status == bound_status::unknown) {
            r.status = bound_status::bounds;
        }
    }

    // Upper-side audit: this invariant never exceeds the category of the
    // power itself, so the two intervals must overlap.
    if (connected && amb->facet_count() <= 16) {
        bound_result s = scat(amb, slice);
        rep.states_explored += s.budget.states_explored;
        rep.oracle_calls += s.budget.oracle_calls;
        const int inf = amb->facet_count() + 1;
        if (r.lower > (s.upper ? *s.upper : inf))
            throw std::logic_error(
                "bound crossing: lower bound exceeds the category of the power "
                "complex");
        r.notes.push_back("cross-check: category of the power is within [" +
                          std::to_string(s.lower) + ", " +
                          (s.upper ? std::to_string(*s.upper) : "inf") +
                          "], compatible with this interval");
    }

    r.budget.states_explored += rep.states_explored;
    r.budget.oracle_calls += rep.oracle_calls;
    r.budget.millis = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(detail::steady::now() -
                                                              t0)
            .count());
    return r;
}

struct cover_check {
    bool ok = true;
    std::string reason;
    int element = -1;  // offending element index, -1 for certificate-level failures
};

/**
 * Independent replay of a cover certificate against a base complex. The
 * ambient power is rebuilt from scratch, coverage of every facet is checked,
 * and each witness chain is re-verified link by link with the endpoints the
 * certificate kind demands. No search code runs here.
 */
inline cover_check verify_cover_detail(const complex_ptr& k,
                                       const cover_certificate& cert) {
    auto fail = [](std::string why, int el = -1) {
        return cover_check{false, std::move(why), el};
    };
    const bool categorical = cert.kind == "categorical";
    if (!categorical && cert.kind != "farber")
        return fail("unknown certificate kind: " + cert.kind);
    if (categorical && cert.arity != 1)
        return fail("categorical certificates have arity 1");
    if (!categorical && cert.arity < 2)
        return fail("projection-comparison certificates need arity >= 2");
    if (cert.elements.empty()) return fail("certificate has no elements");

    complex_ptr ambient = k;
    std::optional<product_complex> p;
    if (!categorical) {
        p.emplace(power(k, cert.arity));
        ambient = p->underlying();
    }

    std::vector<bool> covered(static_cast<std::size_t>(ambient->facet_count()),
                              false);
    for (std::size_t e = 0; e < cert.elements.size(); ++e) {
        if (cert.elements[e].generators.empty())
            return fail("element has no generators", static_cast<int>(e));
        for (const std::int32_t g : cert.elements[e].generators) {
            if (g < 0 || g >= ambient->facet_count())
                return fail("generator index out of range", static_cast<int>(e));
            covered[static_cast<std::size_t>(g)] = true;
        }
    }
    for (std::size_t f = 0; f < covered.size(); ++f)
        if (!covered[f])
            return fail("facet " + std::to_string(f) + " is not covered");

    for (std::size_t e = 0; e < cert.elements.size(); ++e) {
        const cover_element& el = cert.elements[e];
        subcomplex omega = generated_subcomplex(ambient, el.generators);
        const std::size_t expected =
            categorical ? 1 : static_cast<std::size_t>(cert.arity) - 1;
        if (el.witness.size() != expected)
            return fail("element has " + std::to_string(el.witness.size()) +
                            " witness chains, expected " + std::to_string(expected),
                        static_cast<int>(e));
        for (std::size_t w = 0; w < el.witness.size(); ++w) {
            const contiguity_chain& chain = el.witness[w];
            chain_check c = verify_chain_detail(chain);
            if (!c.ok)
                return fail("witness chain " + std::to_string(w) +
                                " is invalid: " + c.reason,
                            static_cast<int>(e));
            if (categorical) {
                if (!(chain.declared_first() == omega.inclusion()))
                    return fail("chain does not start at the inclusion",
                                static_cast<int>(e));
                if (!chain.declared_last().is_constant())
                    return fail("chain does not end at a constant map",
                                static_cast<int>(e));
                if (!same_structure(*chain.declared_last().codomain(), *ambient))
                    return fail("chain lands in the wrong complex",
                                static_cast<int>(e));
            } else {
                simplicial_map pi1 = restrict(projection(*p, 1), omega);
                simplicial_map pij =
                    restrict(projection(*p, static_cast<int>(w) + 2), omega);
                if (!(chain.declared_first() == pi1))
                    return fail("chain " + std::to_string(w) +
                                    " does not start at the first projection",
                                static_cast<int>(e));
                if (!(chain.declared_last() == pij))
                    return fail("chain " + std::to_string(w) +
                                    " does not end at projection " +
                                    std::to_string(w + 2),
                                static_cast<int>(e));
            }
        }
    }
    return {};
}

inline bool verify_cover(const complex_ptr& k, const cover_certificate& cert) {
    return verify_cover_detail(k, cert).ok;
}

// One inequality instance checked in interval semantics: an inequality A <= B
// between two proven intervals can only be refuted when lower(A) > upper(B).
struct suite_comparison {
    std::string label;
    bool holds = true;
    std::string detail;
};

struct suite_report {
    std::vector<std::pair<std::string, bound_result>> quantities;
    std::vector<suite_comparison> comparisons;
    std::vector<std::string> warnings;
    bool strongly_collapsible = false;
    bool all_hold = true;
};

/**
 * Computes the category of the first n_max powers and the covering invariant
 * for every arity from 2 to n_max, then checks all expected relations between
 * them in interval semantics: monotonicity in the arity, the sandwich between
 * the categories of adjacent powers, the product bound on the category of a
 * power, and agreement between a zero value and strong collapsibility.
 */
inline suite_report inequality_suite(const complex_ptr& k, int n_max,
                                     const search_budget& budget = {}) {
    if (n_max < 2)
        throw precondition_violated("the inequality suite needs n_max >= 2");
    if (!edge_path_connected(*k))
        throw precondition_violated(
            "the inequality suite needs an edge-path connected complex");
    budget.validate();

    suite_report rep;
    rep.strongly_collapsible = is_strongly_collapsible(k);

    std::vector<bound_result> cat(static_cast<std::size_t>(n_max) + 1);
    std::vector<bound_result> cov(static_cast<std::size_t>(n_max) + 1);
    cat[1] = scat(k, budget);
    rep.quantities.emplace_back("scat(K)", cat[1]);
    for (int j = 2; j <= n_max; ++j) {
        cat[static_cast<std::size_t>(j)] = scat(power(k, j).underlying(), budget);
        rep.quantities.emplace_back("scat(K^" + std::to_string(j) + ")",
                                    cat[static_cast<std::size_t>(j)]);
    }
    for (int j = 2; j <= n_max; ++j) {
        cov[static_cast<std::size_t>(j)] = tc(k, j, budget);
        rep.quantities.emplace_back("tc(K," + std::to_string(j) + ")",
                                    cov[static_cast<std::size_t>(j)]);
    }

    auto upper_str = [](const bound_result& b) {
        return b.upper ? std::to_string(*b.upper) : std::string("inf");
    };
    auto interval_str = [&](const bound_result& b) {
        return "[" + std::to_string(b.lower) + ", " + upper_str(b) + "] (" +
               to_string(b.status) + ")";
    };
    auto compare = [&](const std::string& label, const bound_result& a,
                       int b_lower, std::optional<int> b_upper,
                       const std::string& b_str) {
        suite_comparison c;
        c.label = label;
        c.holds = !b_upper || a.lower <= *b_upper;
        c.detail = interval_str(a) + " <= [" + std::to_string(b_lower) + ", " +
                   (b_upper ? std::to_string(*b_upper) : std::string("inf")) +
                   "] " + b_str;
        rep.all_hold = rep.all_hold && c.holds;
        rep.comparisons.push_back(std::move(c));
    };

    for (int m = 2; m + 1 <= n_max; ++m)
        compare("tc(K," + std::to_string(m) + ") <= tc(K," + std::to_string(m + 1) +
                    ")",
                cov[static_cast<std::size_t>(m)],
                cov[static_cast<std::size_t>(m + 1)].lower,
                cov[static_cast<std::size_t>(m + 1)].upper, "");
    for (int j = 2; j <= n_max; ++j) {
        compare("scat(K^" + std::to_string(j - 1) + ") <= tc(K," +
                    std::to_string(j) + ")",
                cat[static_cast<std::size_t>(j - 1)],
                cov[static_cast<std::size_t>(j)].lower,
                cov[static_cast<std::size_t>(j)].upper, "");
        compare("tc(K," + std::to_string(j) + ") <= scat(K^" + std::to_string(j) +
                    ")",
                cov[static_cast<std::size_t>(j)],
                cat[static_cast<std::size_t>(j)].lower,
                cat[static_cast<std::size_t>(j)].upper, "");
    }
    // scat(K^m) + 1 <= (scat(K) + 1)^m, the product bound on powers.
    for (int m = 2; m <= n_max; ++m) {
        suite_comparison c;
        c.label = "scat(K^" + std::to_string(m) + ")+1 <= (scat(K)+1)^" +
                  std::to_string(m);
        const bound_result& a = cat[static_cast<std::size_t>(m)];
        std::optional<long long> rhs;
        if (cat[1].upper) {
            long long v = 1;
            for (int i = 0; i < m; ++i) v *= (*cat[1].upper + 1);
            rhs = v;
        }
        c.holds = !rhs || a.lower + 1 <= *rhs;
        c.detail = interval_str(a) + " + 1 vs (" + interval_str(cat[1]) + " + 1)^" +
                   std::to_string(m) +
                   (rhs ? " = " + std::to_string(*rhs) : " (no finite bound)");
        rep.all_hold = rep.all_hold && c.holds;
        rep.comparisons.push_back(std::move(c));
    }
    // A zero value at any arity happens exactly for strongly collapsible
    // complexes; checked on every exact result.
    for (int j = 2; j <= n_max; ++j) {
        const bound_result& b = cov[static_cast<std::size_t>(j)];
        if (b.status != bound_status::exact) continue;
        suite_comparison c;
        c.label = "tc(K," + std::to_string(j) + ") = 0 iff strongly collapsible";
        const bool zero = b.upper && *b.upper == 0;
        c.holds = zero == rep.strongly_collapsible;
        c.detail = "value " + upper_str(b) + ", strongly collapsible: " +
                   (rep.strongly_collapsible ? "yes" : "no");
        rep.all_hold = rep.all_hold && c.holds;
        rep.comparisons.push_back(std::move(c));
    }

    for (const auto& q : rep.quantities)
        for (const std::string& note : q.second.notes)
            if (note.rfind("warning:", 0) == 0)
                rep.warnings.push_back(q.first + ": " + note);
    return rep;
}

}  // namespace tcx
