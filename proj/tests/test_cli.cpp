#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "orepoly/cli.hpp"

using namespace orepoly;

namespace {

struct CliResult {
    int code;
    std::string out, err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(OREPOLY_FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_CASE("cli: catalog") {
    CliResult r = run({"catalog"});
    CHECK(r.code == 0);
    CHECK(r.out.find("quantum_plane") != std::string::npos);
    CHECK(r.out.find("trimmed_double_extension") != std::string::npos);
}

TEST_CASE("cli: normalize") {
    CliResult r = run({"normalize", "x*1", "--preset", "quantum_plane"});
    CHECK(r.code == 0);
    CHECK(r.out.find("normal_form: x") != std::string::npos);

    CliResult jordan = run({"normalize", "y*x", "--preset", "jordan_plane"});
    CHECK(jordan.code == 0);
    CHECK(jordan.out.find("x*y + y^2") != std::string::npos);
}

TEST_CASE("cli: mul and ore-swap") {
    CliResult r = run({"mul", "x", "y^2", "--preset", "quantum_plane", "--param", "q=2", "--param", "p=5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("4*y^2*x") != std::string::npos);

    CliResult s = run({"ore-swap", "x", "1", "--preset", "jordan_plane"});
    CHECK(s.code == 0);
    CHECK(s.out.find("a_p: x + y") != std::string::npos);
}

TEST_CASE("cli: finv cross-checks the word oracle") {
    CliResult r = run({"finv", "2", "1", "x", "--preset", "jordan_plane"});
    CHECK(r.code == 0);
    CHECK(r.out.find("matches the word-enumeration oracle ... pass") != std::string::npos);
}

TEST_CASE("cli: act") {
    CliResult ring = run({"act", "x^-1", "x^2", "--preset", "quantum_plane"});
    CHECK(ring.code == 0);
    CHECK(ring.out.find("result: 0") != std::string::npos);

    CliResult mod = run({"act", "1*x^-1", "x", "--preset", "skew_poly_ring", "--module", fixture("zmod4_km.cfg")});
    CHECK(mod.code == 0);
    CHECK(mod.out.find("result: [1]") != std::string::npos);
}

TEST_CASE("cli: compat-check") {
    CliResult good = run({"compat-check", "--module", fixture("trunc8_simple.cfg")});
    CHECK(good.code == 0);
    CHECK(good.out.find("completely (sigma, delta)-compatible ... pass") != std::string::npos);

    CliResult bad = run({"compat-check", "--module", fixture("jordan_trunc4_km.cfg")});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("FAIL") != std::string::npos);
}

TEST_CASE("cli: ass and att") {
    CliResult r = run({"ass", "--module", fixture("zmod4_self.cfg")});
    CHECK(r.code == 0);
    CHECK(r.out.find("Ass(M): {(0, 2)}") != std::string::npos);

    CliResult t = run({"att", "--module", fixture("zmod4_self.cfg")});
    CHECK(t.code == 0);
    CHECK(t.out.find("Att(M): {(0, 2)}") != std::string::npos);
}

TEST_CASE("cli: verify-lemma on the K/m fixture") {
    CliResult r = run({"verify-lemma", "--preset", "skew_poly_ring", "--module", fixture("zmod4_km.cfg"),
                       "--bound", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("result: PASS") != std::string::npos);
    CHECK(r.out.find("bound 5") != std::string::npos);
}

TEST_CASE("cli: verify-lemma with an explicit submodule and default bound") {
    // N = (2) inside M = Z/4: P = ann(M/N) = (2) is prime, and the default
    // bound is 5
    CliResult r = run({"verify-lemma", "--module", fixture("zmod4_self.cfg"), "--submodule", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("bound 5") != std::string::npos);
    CHECK(r.out.find("N: {[0], [2]}") != std::string::npos);
}

TEST_CASE("cli: verify-theorem on the K/m fixture") {
    CliResult r = run({"verify-theorem", "--preset", "skew_poly_ring", "--module", fixture("zmod4_km.cfg"),
                       "--bound", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("equality: Att set: {(0, 2)A}") != std::string::npos);
}

TEST_CASE("cli: relation-2-4-probe is deterministic") {
    CliResult a = run({"relation-2-4-probe", "--preset", "jordan_plane", "--format", "json"});
    CliResult b = run({"relation-2-4-probe", "--preset", "jordan_plane", "--format", "json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("-(i+k')") != std::string::npos);
}

TEST_CASE("cli: exit codes") {
    SECTION("usage errors are 2") {
        CHECK(run({}).code == 2);
        CHECK(run({"frobnicate"}).code == 2);
        CHECK(run({"normalize"}).code == 2);                                  // missing EXPR
        CHECK(run({"normalize", "x"}).code == 2);                             // no algebra
        CHECK(run({"normalize", "x(", "--preset", "jordan_plane"}).code == 2);  // parse error
        CHECK(run({"verify-lemma", "--preset", "skew_poly_ring"}).code == 2);   // no module
        CHECK(run({"mul", "x", "y", "--preset", "quantum_plane", "--param", "q=0"}).code == 2);
    }
    SECTION("verification failures are 1") {
        CHECK(run({"compat-check", "--module", fixture("jordan_trunc4_km.cfg")}).code == 1);
        CHECK(run({"verify-lemma", "--module", fixture("jordan_trunc4_km.cfg"), "--bound", "2"}).code == 1);
    }
    SECTION("resource caps are 3") {
        // bound 12 over Z/4 needs 2^13 truncation elements, over the cap
        CHECK(run({"verify-theorem", "--preset", "skew_poly_ring", "--module", fixture("zmod4_km.cfg"),
                   "--bound", "20"})
                  .code == 3);
    }
}

TEST_CASE("cli: json envelope round-trips and is byte-stable") {
    CliResult a = run({"verify-lemma", "--preset", "skew_poly_ring", "--module", fixture("zmod4_km.cfg"),
                       "--bound", "3", "--format", "json"});
    CliResult b = run({"verify-lemma", "--preset", "skew_poly_ring", "--module", fixture("zmod4_km.cfg"),
                       "--bound", "3", "--format", "json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    auto j = nlohmann::ordered_json::parse(a.out);
    ReportEnvelope env = ReportEnvelope::from_json(j);
    CHECK(env.to_json().dump(2) + "\n" == a.out);
    CHECK(env.command == "verify-lemma");
    CHECK(env.bound == 3);

    // stable key order
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"version", "command", "algebra", "seed", "bound", "checks",
                                           "details", "elapsed_ms"});
}

TEST_CASE("cli: algebra resolution from the module file") {
    // trunc8_simple.cfg carries its own [ring]/[twist] sections
    CliResult r = run({"att", "--module", fixture("trunc8_simple.cfg")});
    CHECK(r.code == 0);
    CHECK(r.out.find("Att(M)") != std::string::npos);
}
