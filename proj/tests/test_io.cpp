#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "tcx/cli.hpp"
#include "tcx/io.hpp"

using namespace tcx;
namespace fs = std::filesystem;

namespace {

// Scratch directory for files the command line interface reads and writes.
fs::path scratch() {
    fs::path dir = fs::temp_directory_path() / "tcx_io_tests";
    fs::create_directories(dir);
    return dir;
}

std::string write_scratch(const std::string& name, const std::string& text) {
    fs::path p = scratch() / name;
    std::ofstream out(p);
    out << text;
    out.close();
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct cli_run {
    int code = 0;
    std::string out;
    std::string err;
};

cli_run run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = tcx::cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

const std::string hollow_sc = "a b\nb c\na c\n";
const std::string full_sc = "a b c\n";
const std::string cone_sc = "a b t\nb c t\na c t\n";

}  // namespace

TEST_CASE("parsing assigns vertex indices by first appearance") {
    complex_ptr k = parse_complex_text("a b\nb c\na c\n");
    REQUIRE(k->vertex_count() == 3);
    CHECK(k->label(0) == "a");
    CHECK(k->label(1) == "b");
    CHECK(k->label(2) == "c");
    CHECK(k->facet_count() == 3);
}

TEST_CASE("parsing absorbs faces, duplicates, comments, and blank lines") {
    complex_ptr k = parse_complex_text(
        "# a full triangle stated redundantly\n"
        "\n"
        "a b c  # the only facet\n"
        "a b\n"
        "a b c\n"
        "c a a\n");
    CHECK(k->vertex_count() == 3);
    REQUIRE(k->facet_count() == 1);
    CHECK(k->facets()[0].count() == 3);
}

TEST_CASE("parsing rejects empty and comment-only input") {
    CHECK_THROWS_AS(parse_complex_text(""), empty_input);
    CHECK_THROWS_AS(parse_complex_text("# nothing\n\n  \n"), empty_input);
}

TEST_CASE("parsing reports the offending line for control characters") {
    try {
        parse_complex_text(std::string("a b\nc ") + char(1) + "d\n");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("control character") != std::string::npos);
    }
}

TEST_CASE("parsing enforces the vertex capacity") {
    std::string big;
    for (int i = 0; i < 257; ++i) big += "v" + std::to_string(i) + "\n";
    CHECK_THROWS_AS(parse_complex_text(big), parse_error);
}

TEST_CASE("reading a missing file is a parse error") {
    CHECK_THROWS_AS(read_complex_file((scratch() / "no_such_file.sc").string()),
                    parse_error);
}

TEST_CASE("serialization is canonical and parse round-trips to a fixpoint") {
    complex_ptr k = parse_complex_text("b   c\nc a\nb a\n");
    CHECK(to_sc_text(*k) == "a b\na c\nb c\n");
    complex_ptr again = parse_complex_text(to_sc_text(*k));
    CHECK(to_sc_text(*again) == to_sc_text(*k));
    CHECK(content_digest(*again) == content_digest(*k));
    CHECK(same_structure(*again, *k));
}

TEST_CASE("digests ignore input ordering but distinguish complexes") {
    complex_ptr a = parse_complex_text("a b\nb c\na c\n");
    complex_ptr b = parse_complex_text("c b\na c\nb a\n# same facets, reordered\n");
    CHECK(content_digest(*a) == content_digest(*b));
    CHECK(content_digest(*a).rfind("fnv1a64:", 0) == 0);
    CHECK(content_digest(*a).size() == 8 + 16);

    complex_ptr c = parse_complex_text("a b c\n");
    CHECK(content_digest(*a) != content_digest(*c));
}

TEST_CASE("serialization refuses names that cannot be tokens") {
    CHECK_THROWS_AS(to_sc_text(*normalize({{"a b", "c"}})), precondition_violated);
    CHECK_THROWS_AS(to_sc_text(*normalize({{"x#y"}})), precondition_violated);
}

TEST_CASE("maps serialize as label-to-label objects") {
    auto hollow = support::hollow_triangle();
    json j = map_to_json(identity_map(hollow));
    CHECK(j == json{{"a", "a"}, {"b", "b"}, {"c", "c"}});
}

TEST_CASE("a cover certificate survives serialization and reordering") {
    complex_ptr hollow = parse_complex_text(hollow_sc);
    bound_result r = scat(hollow);
    REQUIRE(r.certificate);
    json j = certificate_to_json(hollow, *r.certificate);
    CHECK(verify_certificate(hollow, j).ok);

    // The certificate binds by name and digest, so it verifies against a
    // re-parse whose vertex and facet order is entirely different.
    complex_ptr shuffled = parse_complex_text("c b\nb a\nc a\n");
    CHECK(verify_certificate(shuffled, j).ok);

    complex_ptr other = parse_complex_text(full_sc);
    cover_check mismatch = verify_certificate(other, j);
    CHECK_FALSE(mismatch.ok);
    CHECK(mismatch.reason.find("digest") != std::string::npos);
}

TEST_CASE("a projection cover certificate round-trips at arity two") {
    complex_ptr hollow = parse_complex_text(hollow_sc);
    bound_result r = tc(hollow, 2);
    REQUIRE(r.certificate);
    json j = certificate_to_json(hollow, *r.certificate);
    CHECK(j.at("kind") == "farber");
    CHECK(j.at("arity") == 2);
    CHECK(verify_certificate(hollow, j).ok);

    cover_certificate rebuilt = certificate_from_json(hollow, j);
    CHECK(rebuilt.elements.size() == r.certificate->elements.size());
    CHECK(verify_cover(hollow, rebuilt));
}

TEST_CASE("a standalone chain certificate round-trips") {
    complex_ptr full = parse_complex_text(full_sc);
    class_decision d = class_contains_constant(identity_map(full));
    REQUIRE(d.v == verdict::yes);
    REQUIRE(d.chain);
    json j = chain_certificate_to_json(full, *d.chain);
    CHECK(j.at("type") == "chain");
    CHECK(verify_certificate(full, j).ok);
}

TEST_CASE("certificate verification rejects broken chains by content") {
    complex_ptr hollow = parse_complex_text(hollow_sc);
    // The identity and the map collapsing c onto a are not contiguous, so a
    // two-entry chain between them must be rejected.
    json j{{"type", "chain"},
           {"complex_digest", content_digest(*hollow)},
           {"arity", 1},
           {"facets", nullptr},
           {"chains",
            json::array({json::array(
                {json{{"a", "a"}, {"b", "b"}, {"c", "c"}},
                 json{{"a", "a"}, {"b", "b"}, {"c", "a"}}})})}};
    cover_check c = verify_certificate(hollow, j);
    CHECK_FALSE(c.ok);
    CHECK(c.reason.find("not contiguous") != std::string::npos);
}

TEST_CASE("certificate verification rejects bad name bindings") {
    complex_ptr hollow = parse_complex_text(hollow_sc);
    auto chain_cert = [&](json maps) {
        return json{{"type", "chain"},
                    {"complex_digest", content_digest(*hollow)},
                    {"arity", 1},
                    {"facets", nullptr},
                    {"chains", json::array({json::array({std::move(maps)})})}};
    };
    // Unknown vertex name.
    CHECK_FALSE(verify_certificate(
                    hollow, chain_cert(json{{"a", "z"}, {"b", "b"}, {"c", "c"}}))
                    .ok);
    // Unassigned vertex.
    CHECK_FALSE(verify_certificate(hollow, chain_cert(json{{"a", "a"}})).ok);
    // Facet list naming a non-facet.
    json j{{"type", "cover"},
           {"complex_digest", content_digest(*hollow)},
           {"kind", "categorical"},
           {"arity", 1},
           {"elements",
            json::array({json{{"facets", json::array({json::array({"a", "b", "c"})})},
                              {"chains", json::array()}}})}};
    cover_check c = verify_certificate(hollow, j);
    CHECK_FALSE(c.ok);
    CHECK(c.reason.find("not a facet") != std::string::npos);
}

TEST_CASE("malformed certificate shapes throw parse errors") {
    complex_ptr hollow = parse_complex_text(hollow_sc);
    const std::string digest = content_digest(*hollow);

    CHECK_THROWS_AS(verify_certificate(hollow, json{{"type", "cover"}}), parse_error);
    CHECK_THROWS_AS(verify_certificate(
                        hollow, json{{"type", "banana"}, {"complex_digest", digest}}),
                    parse_error);
    CHECK_THROWS_AS(
        verify_certificate(hollow, json{{"type", "chain"},
                                        {"complex_digest", digest},
                                        {"arity", 1},
                                        {"facets", nullptr},
                                        {"chains", "not an array"}}),
        parse_error);
    CHECK_THROWS_AS(
        verify_certificate(hollow, json{{"type", "chain"},
                                        {"complex_digest", digest},
                                        {"arity", 0},
                                        {"facets", nullptr},
                                        {"chains", json::array()}}),
        parse_error);
    CHECK_THROWS_AS(
        verify_certificate(hollow, json{{"type", "cover"},
                                        {"complex_digest", digest},
                                        {"kind", "categorical"},
                                        {"arity", 1},
                                        {"elements", "nope"}}),
        parse_error);
    CHECK_THROWS_AS(
        certificate_from_json(
            hollow, json{{"kind", "categorical"},
                         {"arity", 1},
                         {"elements", json::array({json{{"facets", json::array()},
                                                        {"chains", json::array()}}})}}),
        parse_error);
}

TEST_CASE("the command line computes, certifies, and verifies") {
    std::string hollow = write_scratch("hollow.sc", hollow_sc);
    std::string cert = (scratch() / "hollow_scat.json").string();

    cli_run r = run_cli({"scat", hollow, "--cert-out", cert});
    CHECK(r.code == tcx::cli::exit_ok);
    CHECK(r.out.find("scat: [1, 1] exact") != std::string::npos);
    CHECK(fs::exists(cert));

    cli_run v = run_cli({"verify", hollow, "--cert", cert});
    CHECK(v.code == tcx::cli::exit_ok);
    CHECK(v.out.find("certificate verified") != std::string::npos);

    // Tampering with a chain map breaks verification with exit code 2.
    std::string tampered = slurp(cert);
    auto pos = tampered.find("\"a\": \"");
    REQUIRE(pos != std::string::npos);
    tampered[pos + 6] = tampered[pos + 6] == 'a' ? 'b' : 'a';
    std::string bad = write_scratch("hollow_scat_bad.json", tampered);
    cli_run b = run_cli({"verify", hollow, "--cert", bad});
    CHECK(b.code == tcx::cli::exit_violation);
    CHECK(b.out.find("certificate rejected") != std::string::npos);

    // A certificate for one complex never verifies against another.
    std::string full = write_scratch("full.sc", full_sc);
    cli_run w = run_cli({"verify", full, "--cert", cert});
    CHECK(w.code == tcx::cli::exit_violation);
}

TEST_CASE("the command line answers the simple decision commands") {
    std::string cone = write_scratch("cone.sc", cone_sc);
    std::string two = write_scratch("two_points.sc", "a\nb\n");

    cli_run coll = run_cli({"collapsible", cone});
    CHECK(coll.code == tcx::cli::exit_ok);
    CHECK(coll.out == "yes\n");

    cli_run conn = run_cli({"connected", two});
    CHECK(conn.code == tcx::cli::exit_ok);
    CHECK(conn.out == "no\n");

    cli_run core_run = run_cli({"core", cone});
    CHECK(core_run.code == tcx::cli::exit_ok);
    // The cone strong collapses to one vertex, printed as a single line.
    CHECK(core_run.out.find(' ') == std::string::npos);
    CHECK(core_run.out.find('\n') == core_run.out.size() - 1);

    std::string edge = write_scratch("edge.sc", "a b\n");
    cli_run pow = run_cli({"power", edge, "--n", "2"});
    CHECK(pow.code == tcx::cli::exit_ok);
    CHECK(pow.out == "(a,a) (a,b) (b,a) (b,b)\n");

    std::string hollow = write_scratch("hollow.sc", hollow_sc);
    cli_run prod = run_cli({"product", edge, hollow});
    CHECK(prod.code == tcx::cli::exit_ok);
    complex_ptr grid = parse_complex_text(prod.out);
    CHECK(grid->vertex_count() == 6);
    CHECK(grid->facet_count() == 3);
}

TEST_CASE("the command line reports contiguity questions with chains") {
    std::string full = write_scratch("full.sc", full_sc);
    std::string cert = (scratch() / "full_chain.json").string();

    cli_run r = run_cli({"contiguity", full, "--any-constant", "--cert-out", cert});
    CHECK(r.code == tcx::cli::exit_ok);
    CHECK(r.out.find("yes") == 0);
    CHECK(r.out.find("chain length:") != std::string::npos);

    cli_run v = run_cli({"verify", full, "--cert", cert});
    CHECK(v.code == tcx::cli::exit_ok);

    // Both folds land in a contractible edge, so they join through the
    // constants; the identity instead is alone in its class.
    std::string hollow = write_scratch("hollow.sc", hollow_sc);
    cli_run folds = run_cli({"contiguity", hollow, "--map", "c:a", "--map2", "a:b"});
    CHECK(folds.code == tcx::cli::exit_ok);
    CHECK(folds.out.find("yes") == 0);

    cli_run no = run_cli({"contiguity", hollow, "--map2", "a:b,b:c,c:a"});
    CHECK(no.code == tcx::cli::exit_ok);
    CHECK(no.out == "no\n");

    cli_run rot = run_cli(
        {"contiguity", hollow, "--map", "a:b,b:c,c:a", "--constant", "a"});
    CHECK(rot.code == tcx::cli::exit_ok);
    CHECK(rot.out == "no\n");

    cli_run missing = run_cli({"contiguity", hollow});
    CHECK(missing.code == tcx::cli::exit_usage);
    CHECK(missing.err.find("usage error") != std::string::npos);
}

TEST_CASE("the command line exposes the subcomplex decisions") {
    std::string hollow = write_scratch("hollow.sc", hollow_sc);
    std::string cert = (scratch() / "cat_path.json").string();

    cli_run path = run_cli({"categorical", hollow, "--facets", "0,1",
                            "--cert-out", cert});
    CHECK(path.code == tcx::cli::exit_ok);
    CHECK(path.out == "yes\n");
    cli_run v = run_cli({"verify", hollow, "--cert", cert});
    CHECK(v.code == tcx::cli::exit_ok);

    cli_run whole = run_cli({"categorical", hollow});
    CHECK(whole.code == tcx::cli::exit_ok);
    CHECK(whole.out == "no\n");

    std::string far_cert = (scratch() / "farber_one.json").string();
    cli_run one = run_cli({"farber", hollow, "--n", "2", "--facets", "0",
                           "--cert-out", far_cert});
    CHECK(one.code == tcx::cli::exit_ok);
    CHECK(one.out == "yes\n");
    cli_run fv = run_cli({"verify", hollow, "--cert", far_cert});
    CHECK(fv.code == tcx::cli::exit_ok);

    cli_run all = run_cli({"farber", hollow, "--n", "2"});
    CHECK(all.code == tcx::cli::exit_ok);
    CHECK(all.out == "no\n");
}

TEST_CASE("the command line runs the inequality suite") {
    std::string hollow = write_scratch("hollow.sc", hollow_sc);
    cli_run r = run_cli({"suite", hollow, "--n-max", "2"});
    CHECK(r.code == tcx::cli::exit_ok);
    CHECK(r.out.find("all comparisons hold: yes") != std::string::npos);
    CHECK(r.out.find("quantity scat(K): [1, 1] exact") != std::string::npos);
    CHECK(r.out.find("quantity tc(K,2): [2, 2] exact") != std::string::npos);
}

TEST_CASE("the command line emits machine-readable reports") {
    std::string hollow = write_scratch("hollow.sc", hollow_sc);

    cli_run r = run_cli({"scat", hollow, "--json"});
    CHECK(r.code == tcx::cli::exit_ok);
    json j = json::parse(r.out);
    CHECK(j.at("command") == "scat");
    CHECK(j.at("input").at("digest") == content_digest(*parse_complex_text(hollow_sc)));
    CHECK(j.at("result").at("lower") == 1);
    CHECK(j.at("result").at("upper") == 1);
    CHECK(j.at("result").at("status") == "exact");
    CHECK(j.at("result").contains("certificate"));

    cli_run c = run_cli({"core", hollow, "--json"});
    CHECK(c.code == tcx::cli::exit_ok);
    json cj = json::parse(c.out);
    CHECK(cj.at("core").at("vertices") == 3);
    CHECK(cj.at("steps").empty());
}

TEST_CASE("the command line maps failures to distinct exit codes") {
    cli_run missing = run_cli({"scat", (scratch() / "absent.sc").string()});
    CHECK(missing.code == tcx::cli::exit_parse);

    std::string empty = write_scratch("empty.sc", "# only a comment\n");
    CHECK(run_cli({"scat", empty}).code == tcx::cli::exit_parse);

    std::string garbled =
        write_scratch("garbled.sc", std::string("a ") + char(2) + "b\n");
    CHECK(run_cli({"scat", garbled}).code == tcx::cli::exit_parse);

    std::string hollow = write_scratch("hollow.sc", hollow_sc);
    std::string notjson = write_scratch("cert.json", "this is not json{");
    CHECK(run_cli({"verify", hollow, "--cert", notjson}).code == tcx::cli::exit_parse);

    CHECK(run_cli({"frobnicate", hollow}).code == tcx::cli::exit_usage);
    CHECK(run_cli({"scat"}).code == tcx::cli::exit_usage);
    CHECK(run_cli({"tc", hollow, "--n", "1"}).code == tcx::cli::exit_usage);
    CHECK(run_cli({"suite", hollow, "--n-max", "1"}).code == tcx::cli::exit_usage);
    CHECK(run_cli({"contiguity", hollow, "--map2", "a:b", "--constant", "a"}).code ==
          tcx::cli::exit_usage);
    CHECK(run_cli({"--help"}).code == tcx::cli::exit_ok);
}

TEST_CASE("the state budget environment variable is validated and applied") {
    std::string hollow = write_scratch("hollow.sc", hollow_sc);

    setenv("TCX_BUDGET_STATES", "banana", 1);
    cli_run bad = run_cli({"scat", hollow});
    unsetenv("TCX_BUDGET_STATES");
    CHECK(bad.code == tcx::cli::exit_usage);
    CHECK(bad.err.find("TCX_BUDGET_STATES") != std::string::npos);

    // Ring subcomplexes of the squared boundary slide around the square, so
    // two states cannot settle their questions and the interval stays open.
    cli_run pow = run_cli({"power", hollow, "--n", "2"});
    REQUIRE(pow.code == tcx::cli::exit_ok);
    std::string square = write_scratch("hollow_square.sc", pow.out);
    setenv("TCX_BUDGET_STATES", "2", 1);
    cli_run starved = run_cli({"scat", square});
    unsetenv("TCX_BUDGET_STATES");
    CHECK(starved.code == tcx::cli::exit_unknown);

    // An explicit flag overrides the environment.
    setenv("TCX_BUDGET_STATES", "2", 1);
    cli_run overridden = run_cli({"scat", square, "--budget-states", "1000000"});
    unsetenv("TCX_BUDGET_STATES");
    CHECK(overridden.code == tcx::cli::exit_ok);
    CHECK(overridden.out.find("scat: [2, 2] exact") != std::string::npos);
}

TEST_CASE("every certificate the search commands emit verifies") {
    const std::vector<std::pair<std::string, std::string>> corpus = {
        {"point.sc", "a\n"},
        {"edge.sc", "a b\n"},
        {"full.sc", full_sc},
        {"hollow.sc", hollow_sc},
        {"cone.sc", cone_sc},
    };
    for (const auto& [name, text] : corpus) {
        std::string path = write_scratch(name, text);
        std::string scat_cert = (scratch() / ("scat_" + name + ".json")).string();
        std::string tc_cert = (scratch() / ("tc_" + name + ".json")).string();

        cli_run s = run_cli({"scat", path, "--cert-out", scat_cert});
        REQUIRE(s.code == tcx::cli::exit_ok);
        CHECK(run_cli({"verify", path, "--cert", scat_cert}).code == tcx::cli::exit_ok);

        cli_run t = run_cli({"tc", path, "--n", "2", "--cert-out", tc_cert});
        REQUIRE(t.code == tcx::cli::exit_ok);
        CHECK(run_cli({"verify", path, "--cert", tc_cert}).code == tcx::cli::exit_ok);
    }
}
