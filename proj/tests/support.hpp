#pragma once

// Shared test helpers: catalog twists built by hand, random element
// generators, and two independent reference implementations used as
// oracles (free-algebra rewriting for mul, plain sigma-skew
// multiplication for the delta = 0 reduction).

#include <map>
#include <optional>
#include <random>
#include <vector>

#include "orepoly/skew_poly.hpp"

namespace testsupport {

using namespace orepoly;

// --- catalog coefficient data -------------------------------------------

// F5[y], sigma(y) = 2y, delta = 0; algebra relation x y = 2 y x
inline TwistedRing quantum_f5() {
    Carrier c = Carrier::fp_poly(5, "y");
    return TwistedRing(c, c.mul(c.from_int(2), c.gen()), c.mul(c.from_int(3), c.gen()), c.zero());
}

// Q[x], sigma = id, delta(x) = 1; algebra relation y x = x y + y^2
inline TwistedRing jordan_q() {
    Carrier c = Carrier::q_poly("x");
    return TwistedRing(c, c.gen(), c.gen(), c.one(), "y");
}

// Q[y], sigma(y) = y/2, delta(y) = -1/2; algebra relation y x = 2 x y + x^2
// (q-meromorphic Weyl data at q = 2, Ore variable x)
inline TwistedRing qmw_q2() {
    Carrier c = Carrier::q_poly("y");
    RingElem half_y = c.mul(c.from_rat(Rat(1, 2)), c.gen());
    RingElem two_y = c.mul(c.from_int(2), c.gen());
    return TwistedRing(c, half_y, two_y, c.from_rat(Rat(-1, 2)));
}

// F7[x], sigma(x) = 3x, delta(x) = 2; algebra relation y x = 3 x y + 2 y^2
inline TwistedRing qzero_f7() {
    Carrier c = Carrier::fp_poly(7, "x");
    return TwistedRing(c, c.mul(c.from_int(3), c.gen()), c.mul(c.from_int(5), c.gen()), c.from_int(2), "y");
}

// Z/4 with the identity twist
inline TwistedRing zmod4() { return TwistedRing::identity(Carrier::zmod(4)); }

// F2[t]/(t^3), sigma(t) = t + t^2, delta(t) = t^2: a finite carrier with a
// genuinely twisted automorphism and derivation
inline TwistedRing trunc8() {
    Carrier c = Carrier::fp_trunc(2, "t", 3);
    RingElem img = c.add(c.gen(), c.mul(c.gen(), c.gen()));
    return TwistedRing(c, img, img, c.mul(c.gen(), c.gen()));
}

inline std::vector<TwistedRing> catalog() {
    return {quantum_f5(), jordan_q(), qmw_q2(), qzero_f7(), zmod4(), trunc8()};
}

// --- random generators ----------------------------------------------------

inline SkewPoly random_poly(const TwistedRing& tw, std::mt19937_64& rng, unsigned x_deg = 4,
                            unsigned coeff_deg = 4) {
    SkewPoly f(tw);
    unsigned top = static_cast<unsigned>(rng() % (x_deg + 1));
    for (unsigned d = 0; d <= top; ++d) {
        if (rng() % 3 == 0) continue;  // keep some sparsity
        f.set_coeff(d, tw.carrier().random_element(rng, coeff_deg));
    }
    return f;
}

// --- definitional rewriting oracle ---------------------------------------
//
// Multiplication in the free algebra over {coefficients, x} rewritten to a
// fixpoint with the raw commutation rule x r -> sigma(r) x + x delta(r) x.
// Terminates by local nilpotency; completely independent of the expansion
// used by mul().

struct FreeWord {
    // nullopt = the indeterminate x, value = a coefficient
    std::vector<std::optional<RingElem>> items;
};

inline std::map<unsigned, RingElem> rewrite_to_normal_form(const TwistedRing& tw,
                                                           std::vector<FreeWord> words) {
    const Carrier& c = tw.carrier();
    std::map<unsigned, RingElem> normal;
    auto deposit = [&](unsigned deg, const RingElem& v) {
        auto it = normal.find(deg);
        RingElem s = it == normal.end() ? v : c.add(it->second, v);
        if (c.is_zero(s))
            normal.erase(deg);
        else
            normal[deg] = s;
    };
    while (!words.empty()) {
        FreeWord w = std::move(words.back());
        words.pop_back();
        // drop words containing an explicit zero
        bool zero = false;
        for (const auto& it : w.items)
            if (it && c.is_zero(*it)) zero = true;
        if (zero) continue;
        // find leftmost "x coeff" pattern
        std::size_t pos = w.items.size();
        for (std::size_t i = 0; i + 1 < w.items.size(); ++i)
            if (!w.items[i] && w.items[i + 1]) {
                pos = i;
                break;
            }
        if (pos == w.items.size()) {
            // normal word: coefficients (all at front) then x's
            RingElem coeff = c.one();
            unsigned deg = 0;
            for (const auto& it : w.items) {
                if (it)
                    coeff = c.mul(coeff, *it);
                else
                    ++deg;
            }
            deposit(deg, coeff);
            continue;
        }
        RingElem r = *w.items[pos + 1];
        FreeWord a, b;
        a.items.assign(w.items.begin(), w.items.begin() + pos);
        b.items = a.items;
        // sigma(r) x
        a.items.push_back(tw.sigma(r));
        a.items.push_back(std::nullopt);
        // x delta(r) x
        b.items.push_back(std::nullopt);
        b.items.push_back(tw.delta(r));
        b.items.push_back(std::nullopt);
        for (std::size_t i = pos + 2; i < w.items.size(); ++i) {
            a.items.push_back(w.items[i]);
            b.items.push_back(w.items[i]);
        }
        words.push_back(std::move(a));
        words.push_back(std::move(b));
    }
    return normal;
}

inline SkewPoly oracle_mul(const SkewPoly& f, const SkewPoly& g) {
    const TwistedRing& tw = f.twist();
    std::vector<FreeWord> words;
    for (const auto& [i, a] : f.terms())
        for (const auto& [j, b] : g.terms()) {
            FreeWord w;
            w.items.push_back(a);
            for (unsigned t = 0; t < i; ++t) w.items.push_back(std::nullopt);
            w.items.push_back(b);
            for (unsigned t = 0; t < j; ++t) w.items.push_back(std::nullopt);
            words.push_back(std::move(w));
        }
    auto normal = rewrite_to_normal_form(tw, std::move(words));
    SkewPoly out(tw);
    for (const auto& [d, v] : normal) out.set_coeff(d, v);
    return out;
}

// --- plain sigma-skew reference (delta = 0) -------------------------------
//
// a x^i * b x^j = a sigma^i(b) x^{i+j}, extended bilinearly.

inline SkewPoly plain_skew_mul(const SkewPoly& f, const SkewPoly& g) {
    const TwistedRing& tw = f.twist();
    const Carrier& c = tw.carrier();
    SkewPoly out(tw);
    for (const auto& [i, a] : f.terms())
        for (const auto& [j, b] : g.terms()) {
            RingElem s = b;
            for (unsigned t = 0; t < i; ++t) s = tw.sigma(s);
            out.add_to_coeff(i + j, c.mul(a, s));
        }
    return out;
}

}  // namespace testsupport
