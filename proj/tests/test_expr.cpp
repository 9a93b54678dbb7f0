#include <catch2/catch_amalgamated.hpp>

#include "orepoly/config.hpp"
#include "orepoly/expr.hpp"
#include "orepoly/presets.hpp"
#include "support.hpp"

using namespace orepoly;
using namespace testsupport;

TEST_CASE("parse_expr basics") {
    Algebra a = preset("quantum_plane", {{"q", "2"}, {"p", "5"}});
    const Carrier& c = a.twist.carrier();

    SECTION("x*y normalizes to 2y x") {
        SkewPoly f = parse_expr(a.twist, "x*y");
        CHECK(f == SkewPoly::monomial(a.twist, c.mul(c.from_int(2), c.gen()), 1));
    }
    SECTION("(x + y)^0 = 1") {
        CHECK(parse_expr(a.twist, "(x + y)^0") == SkewPoly::one(a.twist));
    }
    SECTION("noncommutative order is preserved before normalization") {
        CHECK(parse_expr(a.twist, "x*y") != parse_expr(a.twist, "y*x"));
    }
    SECTION("integer literals reduce into the carrier") {
        CHECK(parse_expr(a.twist, "7") == SkewPoly::constant(a.twist, c.from_int(2)));
        CHECK(parse_expr(a.twist, "3/2") ==
              SkewPoly::constant(a.twist, c.mul(c.from_int(3), c.inv(c.from_int(2)))));
    }
    SECTION("unary minus and subtraction") {
        CHECK(parse_expr(a.twist, "-x + x").is_zero());
        CHECK(parse_expr(a.twist, "y - y").is_zero());
    }
    SECTION("syntax errors carry positions") {
        CHECK_THROWS_AS(parse_expr(a.twist, "x + "), ParseError);
        CHECK_THROWS_AS(parse_expr(a.twist, "x ** y"), ParseError);
        CHECK_THROWS_AS(parse_expr(a.twist, "x @ y"), ParseError);
        CHECK_THROWS_AS(parse_expr(a.twist, "z + 1"), ParseError);  // unknown symbol
        try {
            parse_expr(a.twist, "x + @");
        } catch (const ParseError& e) {
            CHECK(e.position == 4);
        }
    }
}

TEST_CASE("jordan plane expression matches the commutation relation") {
    Algebra a = preset("jordan_plane");
    SkewPoly f = parse_expr(a.twist, "y*x");
    CHECK(to_string(f) == "x*y + y^2");
}

TEST_CASE("print/parse round-trip on random normal forms") {
    std::mt19937_64 rng(101);
    for (auto& tw : catalog())
        for (int i = 0; i < 1000; ++i) {
            SkewPoly f = random_poly(tw, rng, 4, 4);
            CHECK(parse_expr(tw, to_string(f)) == f);
        }
}

TEST_CASE("carrier element parsing rejects the Ore variable") {
    Algebra a = preset("quantum_plane");
    CHECK_THROWS_AS(parse_carrier_elem(a.twist, "x + y"), ParseError);
    CHECK(parse_carrier_elem(a.twist, "y^2 + 1") ==
          a.twist.carrier().add(a.twist.carrier().mul(a.twist.carrier().gen(), a.twist.carrier().gen()),
                                a.twist.carrier().one()));
}

TEST_CASE("inverse polynomial parsing") {
    Algebra a = preset("jordan_plane");
    RingModule mod(a.twist);
    SECTION("ring coefficients") {
        auto m = parse_inv_poly(mod, "x^2 + (x + 1)*y^-1 - 3*y^-2");
        CHECK(m.terms().size() == 3);
        CHECK(to_string(mod, m) == "x^2 + (x + 1)*y^-1 - 3*y^-2");
        // round-trip
        CHECK(parse_inv_poly(mod, to_string(mod, m)) == m);
    }
    SECTION("bare inverse powers have unit coefficient") {
        auto m = parse_inv_poly(mod, "y^-3");
        CHECK(m.depth() == 3);
    }
    SECTION("quotient module coefficients go through the projection") {
        Algebra z4 = preset("skew_poly_ring", {{"n", "4"}});
        FiniteModule km = FiniteModule::quotient_of_ring(z4.twist, {z4.twist.carrier().from_int(2)});
        auto m = parse_inv_poly(km, "1 + 3*x^-1");
        CHECK(m.coeff(km, 0) == km.project(z4.twist.carrier().from_int(1)));
        CHECK(m.coeff(km, 1) == km.project(z4.twist.carrier().from_int(3)));
        CHECK(m.coeff(km, 0) == m.coeff(km, 1));  // 3 = 1 in K/m
    }
}

TEST_CASE("presets") {
    SECTION("all catalog presets construct and self-test") {
        for (const auto& name : preset_names()) {
            Algebra a = preset(name);
            for (const auto& c : a.relation_checks) CHECK(c.pass);
        }
    }
    SECTION("parameter errors") {
        CHECK_THROWS_AS(preset("quantum_plane", {{"q", "0"}}), UsageError);
        CHECK_THROWS_AS(preset("q_meromorphic_weyl", {{"q", "1"}}), UsageError);
        CHECK_THROWS_AS(preset("trimmed_double_extension", {{"p12", "0"}}), UsageError);
        CHECK_THROWS_AS(preset("nonsense"), UsageError);
        CHECK_THROWS_AS(preset("jordan_plane", {{"q", "2"}}), UsageError);  // unknown param
    }
    SECTION("trimmed double extension with p12 = 1, p11 = 0 is commutative on samples") {
        Algebra a = preset("trimmed_double_extension", {{"p12", "1"}, {"p11", "0"}});
        std::mt19937_64 rng(7);
        for (int i = 0; i < 30; ++i) {
            SkewPoly f = random_poly(a.twist, rng, 3, 3);
            SkewPoly g = random_poly(a.twist, rng, 3, 3);
            CHECK(mul(f, g) == mul(g, f));
        }
    }
    SECTION("presets over a prime field") {
        Algebra a = preset("quantum_plane", {{"q", "2"}, {"p", "5"}});
        CHECK(a.twist.carrier().kind() == CarrierKind::FpPoly);
        Algebra b = preset("q_zero_bc", {{"b", "3"}, {"c", "2"}, {"p", "7"}});
        for (const auto& c : b.relation_checks) CHECK(c.pass);
    }
}

TEST_CASE("config loading") {
    SECTION("algebra from text") {
        Algebra a = load_algebra_text(
            "[ring]\ncarrier = fp 5 y\nvar = x\n[twist]\nsigma = 2*y\nsigma_inv = 3*y\ndelta = 0\n");
        CHECK(a.twist.carrier().describe() == "fp 5 y");
        CHECK(a.twist.sigma(a.twist.carrier().gen()) ==
              a.twist.carrier().mul(a.twist.carrier().from_int(2), a.twist.carrier().gen()));
    }
    SECTION("missing sigma_inv is rejected") {
        CHECK_THROWS_AS(load_algebra_text("[ring]\ncarrier = fp 5 y\n[twist]\nsigma = 2*y\n"), ConfigError);
    }
    SECTION("wrong inverse fails validation") {
        CHECK_THROWS_AS(
            load_algebra_text("[ring]\ncarrier = fp 5 y\n[twist]\nsigma = 2*y\nsigma_inv = 2*y\n"),
            ConfigError);
    }
    SECTION("module fixtures load and validate") {
        std::string txt = read_file(std::string(OREPOLY_FIXTURE_DIR) + "/trunc8_simple.cfg");
        Algebra a = load_algebra_text(txt);
        FiniteModule m = load_module_text(txt, a.twist);
        CHECK(m.size() == 2);
        CHECK(is_completely_compatible(m).ok);
    }
    SECTION("table module fixture") {
        std::string txt = read_file(std::string(OREPOLY_FIXTURE_DIR) + "/f2sq.cfg");
        Algebra a = load_algebra_text(txt);
        FiniteModule m = load_module_text(txt, a.twist);
        CHECK(m.size() == 4);
        CHECK(all_submodules(m).size() == 5);
    }
    SECTION("malformed configs") {
        CHECK_THROWS_AS(load_algebra_text("carrier = zmod 4\n"), ConfigError);       // outside section
        CHECK_THROWS_AS(load_algebra_text("[ring]\ncarrier = ternary 3\n"), ConfigError);
        CHECK_THROWS_AS(load_algebra_text("[ring]\nvar = x\n"), ConfigError);         // no carrier
        Algebra a = load_algebra_text("[ring]\ncarrier = zmod 4\n");
        CHECK_THROWS_AS(load_module_text("[module]\nquotient = y\n", a.twist), ConfigError);
    }
}
