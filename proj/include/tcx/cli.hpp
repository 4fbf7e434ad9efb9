#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "collapse.hpp"
#include "complex.hpp"
#include "contiguity.hpp"
#include "homotopy.hpp"
#include "invariants.hpp"
#include "io.hpp"
#include "product.hpp"

namespace tcx::cli {

// Exit codes: 0 success or all inequalities hold, 2 inequality violation or
// failed verification, 3 unknown due to budget, 64 usage error, 65 input
// parse error, 70 internal error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_violation = 2;
inline constexpr int exit_unknown = 3;
inline constexpr int exit_usage = 64;
inline constexpr int exit_parse = 65;
inline constexpr int exit_internal = 70;

namespace detail {

using steady_clock = std::chrono::steady_clock;

inline std::string interval_str(const bound_result& r) {
    if (r.infinite) return "infinite";
    return "[" + std::to_string(r.lower) + ", " +
           (r.upper ? std::to_string(*r.upper) : std::string("inf")) + "]";
}

// A result counts as resolved when it is exact or provably infinite.
inline bool resolved(const bound_result& r) {
    return r.status == bound_status::exact || r.infinite;
}

inline json input_json(const std::string& path, const complex& k) {
    return json{{"path", path},
                {"digest", content_digest(k)},
                {"vertices", k.vertex_count()},
                {"facets", k.facet_count()}};
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open " + path + " for writing");
    out << text;
    if (!out.flush()) throw parse_error("cannot write " + path);
}

inline void print_bound(std::ostream& out, const std::string& label, const bound_result& r) {
    out << label << ": " << interval_str(r) << " " << to_string(r.status) << "\n";
    out << "states explored: " << r.budget.states_explored << "\n";
    out << "oracle calls: " << r.budget.oracle_calls << "\n";
    out << "elapsed millis: " << r.budget.millis << "\n";
    if (r.certificate)
        out << "certificate: " << r.certificate->elements.size() << " elements\n";
    for (const auto& note : r.notes) out << "note: " << note << "\n";
}

// Parses "a:x,b:y" into a self-map assignment, leaving unmentioned vertices
// fixed. Vertex names containing ':' or ',' cannot be written in this form.
inline simplicial_map parse_self_map(const complex_ptr& k, const std::string& spec) {
    std::vector<std::int32_t> assign(static_cast<std::size_t>(k->vertex_count()));
    for (int v = 0; v < k->vertex_count(); ++v) assign[static_cast<std::size_t>(v)] = v;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t end = spec.find(',', pos);
        if (end == std::string::npos) end = spec.size();
        std::string entry = spec.substr(pos, end - pos);
        std::size_t colon = entry.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == entry.size())
            throw precondition_violated("map entry " + entry +
                                        " is not of the form from:to");
        std::string from = entry.substr(0, colon);
        std::string to = entry.substr(colon + 1);
        int fv = k->vertex_index(from);
        int tv = k->vertex_index(to);
        if (fv < 0) throw unknown_vertex("map mentions unknown vertex " + from);
        if (tv < 0) throw unknown_vertex("map mentions unknown vertex " + to);
        assign[static_cast<std::size_t>(fv)] = tv;
        pos = end + 1;
    }
    return simplicial_map(k, k, std::move(assign));
}

inline std::vector<std::int32_t> all_facet_indices(const complex& k) {
    std::vector<std::int32_t> idx(static_cast<std::size_t>(k.facet_count()));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<std::int32_t>(i);
    return idx;
}

inline int verdict_exit(verdict v) { return v == verdict::unknown ? exit_unknown : exit_ok; }

struct parsed_options {
    std::string path;
    std::vector<std::string> paths;
    std::uint64_t budget_states = 0;
    std::uint64_t budget_ms = 0;
    bool json_out = false;
    std::string cert_out;
    std::string cert_path;
    int n = 2;
    int n_max = 2;
    std::uint64_t seed = 1;
    int rounds = 3;
    bool invariance = false;
    std::vector<std::int32_t> facets;
    std::string map1;
    std::string map2;
    std::string constant_name;
    bool any_constant = false;
};

inline search_budget budget_of(const parsed_options& o) {
    search_budget b;
    b.max_states = o.budget_states;
    b.max_millis = o.budget_ms;
    b.validate();
    return b;
}

}  // namespace detail

/**
 * Runs the command line given as plain arguments (no program name) and
 * writes results to out and diagnostics to err. Returns the process exit
 * code. The environment variable TCX_BUDGET_STATES overrides the default
 * state budget; explicit flags override both.
 */
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using namespace detail;

    std::uint64_t default_states = 1'000'000;
    if (const char* env = std::getenv("TCX_BUDGET_STATES")) {
        std::string_view sv(env);
        auto res = std::from_chars(sv.data(), sv.data() + sv.size(), default_states);
        if (res.ec != std::errc{} || res.ptr != sv.data() + sv.size() || default_states == 0) {
            err << "usage error: TCX_BUDGET_STATES must be a positive integer, got "
                << sv << "\n";
            return exit_usage;
        }
    }

    parsed_options o;
    o.budget_states = default_states;
    o.budget_ms = 120'000;

    CLI::App app{"operations on abstract simplicial complexes: strong collapses, "
                 "categorical products, contiguity classes, and sectional category "
                 "style invariants with verifiable certificates"};
    app.require_subcommand(1);

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("file", o.path, ".sc input file")->required();
    };
    auto add_budget = [&](CLI::App* sub) {
        sub->add_option("--budget-states", o.budget_states,
                        "state budget for class searches");
        sub->add_option("--budget-ms", o.budget_ms, "time budget in milliseconds");
    };
    auto add_json = [&](CLI::App* sub) {
        sub->add_flag("--json", o.json_out, "emit a JSON report instead of text");
    };
    auto add_cert_out = [&](CLI::App* sub) {
        sub->add_option("--cert-out", o.cert_out, "write the certificate as JSON");
    };

    CLI::App* c_core = app.add_subcommand("core", "strong collapse to the core");
    add_input(c_core);
    add_json(c_core);

    CLI::App* c_coll = app.add_subcommand("collapsible",
                                          "decide strong collapsibility to a point");
    add_input(c_coll);
    add_json(c_coll);

    CLI::App* c_conn = app.add_subcommand("connected", "decide edge path connectivity");
    add_input(c_conn);
    add_json(c_conn);

    CLI::App* c_prod = app.add_subcommand("product", "categorical product of complexes");
    c_prod->add_option("files", o.paths, ".sc input files")->required()->expected(2, -1);
    add_json(c_prod);

    CLI::App* c_pow = app.add_subcommand("power", "categorical power of a complex");
    add_input(c_pow);
    c_pow->add_option("--n", o.n, "exponent")->required();
    add_json(c_pow);

    CLI::App* c_scat = app.add_subcommand(
        "scat", "simplicial category: smallest categorical cover size minus one");
    add_input(c_scat);
    add_budget(c_scat);
    add_json(c_scat);
    add_cert_out(c_scat);

    CLI::App* c_tc = app.add_subcommand(
        "tc", "topological complexity style invariant over the n-th power");
    add_input(c_tc);
    c_tc->add_option("--n", o.n, "power arity, at least 2");
    add_budget(c_tc);
    add_json(c_tc);
    add_cert_out(c_tc);

    CLI::App* c_farb = app.add_subcommand(
        "farber", "decide whether a subcomplex of the n-th power admits chains from "
                  "the first projection to every other projection");
    add_input(c_farb);
    c_farb->add_option("--n", o.n, "power arity, at least 2");
    c_farb->add_option("--facets", o.facets, "facet indices of the power; all when omitted")
        ->delimiter(',');
    add_budget(c_farb);
    add_json(c_farb);
    add_cert_out(c_farb);

    CLI::App* c_cat = app.add_subcommand(
        "categorical", "decide whether a subcomplex includes into its ambient complex "
                       "within the contiguity class of a constant");
    add_input(c_cat);
    c_cat->add_option("--facets", o.facets, "facet indices; all when omitted")
        ->delimiter(',');
    add_budget(c_cat);
    add_json(c_cat);
    add_cert_out(c_cat);

    CLI::App* c_cont = app.add_subcommand(
        "contiguity", "decide whether two self-maps are in the same contiguity class");
    add_input(c_cont);
    c_cont->add_option("--map", o.map1,
                       "first map as from:to pairs, unmentioned vertices fixed "
                       "(default: identity)");
    auto* opt_map2 = c_cont->add_option("--map2", o.map2, "second map, same syntax");
    auto* opt_const =
        c_cont->add_option("--constant", o.constant_name, "second map: constant at VERTEX");
    auto* opt_any = c_cont->add_flag("--any-constant", o.any_constant,
                                     "ask instead whether the class contains any constant");
    opt_map2->excludes(opt_const)->excludes(opt_any);
    opt_const->excludes(opt_any);
    add_budget(c_cont);
    add_json(c_cont);
    add_cert_out(c_cont);

    CLI::App* c_ver = app.add_subcommand("verify", "replay a certificate against a complex");
    add_input(c_ver);
    c_ver->add_option("--cert", o.cert_path, "certificate JSON file")->required();
    add_json(c_ver);

    CLI::App* c_suite = app.add_subcommand(
        "suite", "compute the invariant family and check the inequalities between them");
    add_input(c_suite);
    c_suite->add_option("--n-max", o.n_max, "largest power arity, at least 2");
    c_suite->add_flag("--invariance", o.invariance,
                      "also recompute on seeded strong expansions and compare");
    c_suite->add_option("--seed", o.seed, "base seed for --invariance expansions");
    c_suite->add_option("--rounds", o.rounds, "number of --invariance expansions");
    add_budget(c_suite);
    add_json(c_suite);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    auto started = steady_clock::now();
    auto elapsed_ms = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(steady_clock::now() -
                                                                     started)
            .count();
    };

    try {
        if (app.got_subcommand(c_core)) {
            complex_ptr k = read_complex_file(o.path);
            core_result c = core(k);
            if (o.json_out) {
                json steps = json::array();
                for (const auto& s : c.steps)
                    steps.push_back(json{{"deleted", k->label(s.deleted)},
                                         {"dominator", k->label(s.dominator)}});
                out << json{{"command", "core"},
                            {"input", input_json(o.path, *k)},
                            {"core",
                             json{{"vertices", c.core->vertex_count()},
                                  {"facets", c.core->facet_count()},
                                  {"sc", to_sc_text(*c.core)}}},
                            {"steps", steps},
                            {"elapsed_millis", elapsed_ms()}}
                           .dump(2)
                    << "\n";
            } else {
                out << to_sc_text(*c.core);
            }
            return exit_ok;
        }

        if (app.got_subcommand(c_coll)) {
            complex_ptr k = read_complex_file(o.path);
            bool yes = is_strongly_collapsible(k);
            if (o.json_out)
                out << json{{"command", "collapsible"},
                            {"input", input_json(o.path, *k)},
                            {"strongly_collapsible", yes}}
                           .dump(2)
                    << "\n";
            else
                out << (yes ? "yes" : "no") << "\n";
            return exit_ok;
        }

        if (app.got_subcommand(c_conn)) {
            complex_ptr k = read_complex_file(o.path);
            bool yes = edge_path_connected(*k);
            if (o.json_out)
                out << json{{"command", "connected"},
                            {"input", input_json(o.path, *k)},
                            {"connected", yes}}
                           .dump(2)
                    << "\n";
            else
                out << (yes ? "yes" : "no") << "\n";
            return exit_ok;
        }

        if (app.got_subcommand(c_prod)) {
            std::vector<complex_ptr> factors;
            json inputs = json::array();
            for (const auto& p : o.paths) {
                factors.push_back(read_complex_file(p));
                inputs.push_back(input_json(p, *factors.back()));
            }
            product_complex p = categorical_product(std::move(factors));
            if (o.json_out)
                out << json{{"command", "product"},
                            {"inputs", inputs},
                            {"vertices", p.underlying()->vertex_count()},
                            {"facets", p.underlying()->facet_count()},
                            {"sc", to_sc_text(*p.underlying())}}
                           .dump(2)
                    << "\n";
            else
                out << to_sc_text(*p.underlying());
            return exit_ok;
        }

        if (app.got_subcommand(c_pow)) {
            complex_ptr k = read_complex_file(o.path);
            product_complex p = power(k, o.n);
            if (o.json_out)
                out << json{{"command", "power"},
                            {"input", input_json(o.path, *k)},
                            {"n", o.n},
                            {"vertices", p.underlying()->vertex_count()},
                            {"facets", p.underlying()->facet_count()},
                            {"sc", to_sc_text(*p.underlying())}}
                           .dump(2)
                    << "\n";
            else
                out << to_sc_text(*p.underlying());
            return exit_ok;
        }

        if (app.got_subcommand(c_scat) || app.got_subcommand(c_tc)) {
            const bool is_tc = app.got_subcommand(c_tc);
            complex_ptr k = read_complex_file(o.path);
            bound_result r =
                is_tc ? tc(k, o.n, budget_of(o)) : scat(k, budget_of(o));
            std::string label = is_tc ? "tc(n=" + std::to_string(o.n) + ")" : "scat";
            if (!o.cert_out.empty()) {
                if (r.certificate)
                    write_text_file(o.cert_out,
                                    certificate_to_json(k, *r.certificate).dump(2) + "\n");
                else
                    err << "no certificate to write (status " << to_string(r.status)
                        << ")\n";
            }
            if (o.json_out) {
                json rep{{"command", is_tc ? "tc" : "scat"},
                         {"input", input_json(o.path, *k)},
                         {"result", bound_result_to_json(k, r)},
                         {"elapsed_millis", elapsed_ms()}};
                if (is_tc) rep["n"] = o.n;
                out << rep.dump(2) << "\n";
            } else {
                print_bound(out, label, r);
            }
            return resolved(r) ? exit_ok : exit_unknown;
        }

        if (app.got_subcommand(c_cat)) {
            complex_ptr k = read_complex_file(o.path);
            std::vector<std::int32_t> gens =
                o.facets.empty() ? all_facet_indices(*k) : o.facets;
            subcomplex omega = generated_subcomplex(k, gens);
            class_decision d = is_categorical(omega, budget_of(o));
            if (!o.cert_out.empty()) {
                if (d.chain)
                    write_text_file(
                        o.cert_out,
                        chains_certificate_to_json(k, 1, &gens, {*d.chain}).dump(2) + "\n");
                else
                    err << "no certificate to write (verdict " << to_string(d.v) << ")\n";
            }
            if (o.json_out)
                out << json{{"command", "categorical"},
                            {"input", input_json(o.path, *k)},
                            {"facets", gens},
                            {"verdict", to_string(d.v)},
                            {"states_explored", d.states_explored},
                            {"elapsed_millis", elapsed_ms()}}
                           .dump(2)
                    << "\n";
            else
                out << to_string(d.v) << "\n";
            return verdict_exit(d.v);
        }

        if (app.got_subcommand(c_farb)) {
            complex_ptr k = read_complex_file(o.path);
            product_complex p = power(k, o.n);
            std::vector<std::int32_t> gens =
                o.facets.empty() ? all_facet_indices(*p.underlying()) : o.facets;
            subcomplex omega = generated_subcomplex(p.underlying(), gens);
            farber_decision d = is_farber(p, omega, budget_of(o));
            if (!o.cert_out.empty()) {
                if (d.v == verdict::yes && !d.chains.empty())
                    write_text_file(
                        o.cert_out,
                        chains_certificate_to_json(k, o.n, &gens, d.chains).dump(2) + "\n");
                else
                    err << "no certificate to write (verdict " << to_string(d.v) << ")\n";
            }
            if (o.json_out)
                out << json{{"command", "farber"},
                            {"input", input_json(o.path, *k)},
                            {"n", o.n},
                            {"facets", gens},
                            {"verdict", to_string(d.v)},
                            {"states_explored", d.states_explored},
                            {"elapsed_millis", elapsed_ms()}}
                           .dump(2)
                    << "\n";
            else
                out << to_string(d.v) << "\n";
            return verdict_exit(d.v);
        }

        if (app.got_subcommand(c_cont)) {
            complex_ptr k = read_complex_file(o.path);
            simplicial_map first =
                o.map1.empty() ? identity_map(k) : parse_self_map(k, o.map1);
            class_decision d;
            if (o.any_constant) {
                d = class_contains_constant(first, budget_of(o));
            } else if (!o.constant_name.empty()) {
                int cv = k->vertex_index(o.constant_name);
                if (cv < 0)
                    throw unknown_vertex("unknown vertex " + o.constant_name);
                d = same_contiguity_class(first, constant_map(k, k, cv), budget_of(o));
            } else if (!o.map2.empty()) {
                d = same_contiguity_class(first, parse_self_map(k, o.map2), budget_of(o));
            } else {
                err << "usage error: contiguity needs --map2, --constant, or "
                       "--any-constant\n";
                return exit_usage;
            }
            if (!o.cert_out.empty()) {
                if (d.chain)
                    write_text_file(o.cert_out,
                                    chain_certificate_to_json(k, *d.chain).dump(2) + "\n");
                else
                    err << "no certificate to write (verdict " << to_string(d.v) << ")\n";
            }
            if (o.json_out) {
                json rep{{"command", "contiguity"},
                         {"input", input_json(o.path, *k)},
                         {"verdict", to_string(d.v)},
                         {"states_explored", d.states_explored},
                         {"elapsed_millis", elapsed_ms()}};
                if (d.chain) rep["chain_length"] = d.chain->length();
                out << rep.dump(2) << "\n";
            } else {
                out << to_string(d.v) << "\n";
                if (d.chain) out << "chain length: " << d.chain->length() << "\n";
            }
            return verdict_exit(d.v);
        }

        if (app.got_subcommand(c_ver)) {
            complex_ptr k = read_complex_file(o.path);
            std::ifstream in(o.cert_path);
            if (!in) throw parse_error("cannot open " + o.cert_path);
            json j;
            try {
                j = json::parse(in);
            } catch (const json::exception& e) {
                throw parse_error(std::string("certificate is not valid JSON: ") +
                                  e.what());
            }
            cover_check check = verify_certificate(k, j);
            if (o.json_out)
                out << json{{"command", "verify"},
                            {"input", input_json(o.path, *k)},
                            {"certificate", o.cert_path},
                            {"ok", check.ok},
                            {"reason", check.reason}}
                           .dump(2)
                    << "\n";
            else if (check.ok)
                out << "certificate verified\n";
            else
                out << "certificate rejected: " << check.reason << "\n";
            return check.ok ? exit_ok : exit_violation;
        }

        if (app.got_subcommand(c_suite)) {
            complex_ptr k = read_complex_file(o.path);
            search_budget budget = budget_of(o);
            suite_report rep = inequality_suite(k, o.n_max, budget);

            bool violated = !rep.all_hold;
            bool inconclusive = false;
            json invariance_json = json::array();

            const bound_result* base_scat = nullptr;
            const bound_result* base_tc2 = nullptr;
            for (const auto& [label, value] : rep.quantities) {
                if (label == "scat(K)") base_scat = &value;
                if (label == "tc(K,2)") base_tc2 = &value;
            }

            if (!o.json_out) {
                for (const auto& [label, value] : rep.quantities)
                    out << "quantity " << label << ": " << interval_str(value) << " "
                        << to_string(value.status) << "\n";
                for (const auto& c : rep.comparisons)
                    out << "comparison " << c.label << ": "
                        << (c.holds ? "holds" : "VIOLATED") << " | " << c.detail << "\n";
                for (const auto& w : rep.warnings) out << w << "\n";
                out << "strongly collapsible: " << (rep.strongly_collapsible ? "yes" : "no")
                    << "\n";
            }

            if (o.invariance) {
                if (o.rounds < 1)
                    throw precondition_violated("--rounds must be at least 1");
                for (int round = 0; round < o.rounds; ++round) {
                    std::uint64_t seed = o.seed + static_cast<std::uint64_t>(round);
                    complex_ptr ex = strong_expansion(k, seed);
                    bound_result s2 = scat(ex, budget);
                    bound_result t2 = tc(ex, 2, budget);
                    auto he = same_strong_homotopy_type(k, ex);
                    bool witness_ok = he && verify_chain(he->round_trip_a) &&
                                      verify_chain(he->round_trip_b);

                    auto compare = [&](const bound_result* base, const bound_result& got,
                                       const char* what) {
                        if (!base) return;
                        if (resolved(*base) && resolved(got)) {
                            bool same = base->infinite == got.infinite &&
                                        (base->infinite || base->lower == got.lower);
                            if (!same) {
                                violated = true;
                                err << "invariance violation: " << what
                                    << " changed under expansion seed " << seed << "\n";
                            }
                        } else {
                            inconclusive = true;
                        }
                    };
                    compare(base_scat, s2, "scat");
                    compare(base_tc2, t2, "tc(n=2)");
                    if (!witness_ok) {
                        violated = true;
                        err << "invariance violation: no certified homotopy equivalence "
                               "witness for expansion seed "
                            << seed << "\n";
                    }

                    if (o.json_out)
                        invariance_json.push_back(
                            json{{"seed", seed},
                                 {"vertices", ex->vertex_count()},
                                 {"scat", interval_str(s2)},
                                 {"scat_status", to_string(s2.status)},
                                 {"tc2", interval_str(t2)},
                                 {"tc2_status", to_string(t2.status)},
                                 {"witness_verified", witness_ok}});
                    else
                        out << "expansion seed " << seed << ": scat " << interval_str(s2)
                            << " " << to_string(s2.status) << ", tc(n=2) "
                            << interval_str(t2) << " " << to_string(t2.status)
                            << ", witness " << (witness_ok ? "verified" : "MISSING")
                            << "\n";
                }
            }

            if (o.json_out) {
                json rep_json{{"command", "suite"},
                              {"input", input_json(o.path, *k)},
                              {"report", suite_to_json(rep)},
                              {"elapsed_millis", elapsed_ms()}};
                if (o.invariance) rep_json["invariance"] = invariance_json;
                out << rep_json.dump(2) << "\n";
            } else {
                out << "all comparisons hold: " << (rep.all_hold ? "yes" : "no") << "\n";
            }

            if (violated) return exit_violation;
            if (inconclusive) return exit_unknown;
            return exit_ok;
        }

        err << "usage error: no command\n";
        return exit_usage;
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return exit_parse;
    } catch (const empty_input& e) {
        err << "parse error: " << e.what() << "\n";
        return exit_parse;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}

}  // namespace tcx::cli
