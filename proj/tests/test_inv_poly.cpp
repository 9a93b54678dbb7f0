#include <catch2/catch_amalgamated.hpp>

#include "orepoly/inv_poly.hpp"
#include "support.hpp"

using namespace orepoly;
using namespace testsupport;

namespace {

InvPoly<RingModule> random_inv(const RingModule& mod, std::mt19937_64& rng, unsigned depth = 4) {
    InvPoly<RingModule> m;
    unsigned top = static_cast<unsigned>(rng() % (depth + 1));
    for (unsigned i = 0; i <= top; ++i) {
        if (rng() % 3 == 0) continue;
        m.set_coeff(mod, i, mod.twist().carrier().random_element(rng, 2));
    }
    return m;
}

}  // namespace

TEST_CASE("leading data of inverse polynomials") {
    TwistedRing tw = jordan_q();
    RingModule mod(tw);
    InvPoly<RingModule> m;
    m.set_coeff(mod, 0, tw.carrier().one());
    m.set_coeff(mod, 3, tw.carrier().gen());
    CHECK(m.depth() == 3);                       // lm = x^-3
    CHECK(m.degree() == -3);                     // deg = -3
    CHECK(m.leading_coeff() == tw.carrier().gen());  // lc = x
    CHECK(InvPoly<RingModule>().degree() == neg_infinity);
    CHECK_THROWS_AS(InvPoly<RingModule>().leading_coeff(), ZeroPolynomial);
}

TEST_CASE("act basics") {
    SECTION("identity acts trivially") {
        for (auto& tw : catalog()) {
            RingModule mod(tw);
            std::mt19937_64 rng(67);
            for (int s = 0; s < 10; ++s) {
                auto m = random_inv(mod, rng);
                CHECK(act(mod, m, SkewPoly::one(tw)) == m);
            }
        }
    }
    SECTION("positive powers truncate: m x^-1 . x^2 = 0") {
        TwistedRing tw = jordan_q();
        RingModule mod(tw);
        auto m = InvPoly<RingModule>::monomial(mod, tw.carrier().gen(), 1);
        CHECK(act(mod, m, SkewPoly::x_power(tw, 2)).is_zero());
    }
    SECTION("delta = 0: m x^-i . r x^j = m sigma'^i(r) x^{-i+j} for j <= i") {
        TwistedRing tw = quantum_f5();
        RingModule mod(tw);
        std::mt19937_64 rng(71);
        for (unsigned i = 0; i <= 4; ++i)
            for (unsigned j = 0; j <= i; ++j)
                for (int s = 0; s < 5; ++s) {
                    RingElem m = tw.carrier().random_element(rng, 2);
                    RingElem r = tw.carrier().random_element(rng, 2);
                    auto mono = InvPoly<RingModule>::monomial(mod, m, i);
                    auto got = act(mod, mono, SkewPoly::monomial(tw, r, j));
                    RingElem tw_r = r;
                    for (unsigned t = 0; t < i; ++t) tw_r = tw.sigma_inv(tw_r);
                    auto expect = InvPoly<RingModule>::monomial(mod, tw.carrier().mul(m, tw_r), i - j);
                    CHECK(got == expect);
                }
    }
}

TEST_CASE("act is a right module action") {
    std::mt19937_64 rng(73);
    for (auto& tw : catalog()) {
        RingModule mod(tw);
        for (int s = 0; s < 40; ++s) {
            auto m = random_inv(mod, rng);
            auto m2 = random_inv(mod, rng);
            SkewPoly f = random_poly(tw, rng, 3, 2);
            SkewPoly g = random_poly(tw, rng, 3, 2);
            CHECK(act(mod, act(mod, m, f), g) == act(mod, m, mul(f, g)));
            CHECK(act(mod, add(mod, m, m2), f) == add(mod, act(mod, m, f), act(mod, m2, f)));
            CHECK(act(mod, m, add(f, g)) == add(mod, act(mod, m, f), act(mod, m, g)));
        }
    }
}

TEST_CASE("action never deepens the inverse degree") {
    std::mt19937_64 rng(79);
    for (auto& tw : catalog()) {
        RingModule mod(tw);
        for (int s = 0; s < 30; ++s) {
            auto m = random_inv(mod, rng);
            SkewPoly f = random_poly(tw, rng, 3, 2);
            auto r = act(mod, m, f);
            if (!r.is_zero()) CHECK(r.depth() <= m.depth());
        }
    }
}

TEST_CASE("bounded-depth truncations are closed under act") {
    // elements of depth <= k stay at depth <= k for every k
    std::mt19937_64 rng(83);
    for (auto& tw : catalog()) {
        RingModule mod(tw);
        for (unsigned k = 0; k <= 3; ++k)
            for (int s = 0; s < 10; ++s) {
                InvPoly<RingModule> m;
                for (unsigned i = 0; i <= k; ++i) m.set_coeff(mod, i, tw.carrier().random_element(rng, 2));
                auto r = act(mod, m, random_poly(tw, rng, 3, 2));
                CHECK((r.is_zero() || r.depth() <= k));
            }
    }
}
