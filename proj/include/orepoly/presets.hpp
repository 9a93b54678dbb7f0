#pragma once

// The catalog algebras.  Every preset builds its TwistedRing from exact
// scalar parameters, validates the algebraic laws, and proves its defining
// relation by multiplication before it is handed out.
//
//   quantum_plane(q)              x y = q y x
//   jordan_plane                  y x = x y + y^2
//   q_meromorphic_weyl(q)         y x = q x y + x^2, and Y x = q x Y for
//                                 Y = y + (q-1)^-1 x
//   q_zero_bc(b, c)               y x = b x y + c y^2
//   trimmed_double_extension(p12, p11)   y2 y1 = p12 y1 y2 + p11 y1^2
//   skew_poly_ring(n)             x r = r x over Z/n (the delta = 0 case)
//
// Polynomial presets live over the rationals by default; the parameter
// p = PRIME moves them to F_p.

#include <map>
#include <string>
#include <vector>

#include "orepoly/expr.hpp"
#include "orepoly/skew_poly.hpp"

namespace orepoly {

struct Algebra {
    std::string name;
    std::string description;
    TwistedRing twist;
    std::map<std::string, std::string> params;
    std::vector<LawCheck> relation_checks;
};

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"quantum_plane",          "jordan_plane",
                                                "q_meromorphic_weyl",     "q_zero_bc",
                                                "trimmed_double_extension", "skew_poly_ring"};
    return names;
}

namespace detail {

inline Rat parse_rat_param(const std::string& name, const std::string& text) {
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(text));
        return Rat(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw UsageError("parameter " + name + " is not an exact rational: '" + text + "'");
    }
}

struct PresetParams {
    std::map<std::string, std::string> given;

    Rat rat(const std::string& key, const std::string& dflt) const {
        auto it = given.find(key);
        return parse_rat_param(key, it == given.end() ? dflt : it->second);
    }

    long long integer(const std::string& key, long long dflt) const {
        auto it = given.find(key);
        if (it == given.end()) return dflt;
        try {
            return std::stoll(it->second);
        } catch (const std::exception&) {
            throw UsageError("parameter " + key + " is not an integer: '" + it->second + "'");
        }
    }

    void reject_unknown(const std::vector<std::string>& known, const std::string& preset) const {
        for (const auto& [k, v] : given) {
            bool ok = false;
            for (const auto& kn : known)
                if (k == kn) ok = true;
            if (!ok) throw UsageError("preset " + preset + " does not take a parameter '" + k + "'");
        }
    }
};

inline Carrier field_poly_carrier(const PresetParams& p, const std::string& var) {
    long long ch = p.integer("p", 0);
    if (ch == 0) return Carrier::q_poly(var);
    if (ch < 2) throw UsageError("p must be 0 (rationals) or a prime");
    return Carrier::fp_poly(static_cast<std::uint64_t>(ch), var);
}

inline RingElem scalar(const Carrier& c, const Rat& q, const std::string& name) {
    try {
        return c.from_rat(q);
    } catch (const NotInvertible&) {
        throw UsageError("parameter " + name + " has no meaning in " + c.describe());
    }
}

inline RingElem inverse_scalar(const Carrier& c, const RingElem& v, const std::string& name) {
    if (!c.is_unit(v)) throw UsageError("parameter " + name + " must be invertible");
    return c.inv(v);
}

inline void check_relation(Algebra& a, const std::string& label, const SkewPoly& lhs, const SkewPoly& rhs) {
    bool ok = lhs == rhs;
    a.relation_checks.push_back(
        {label, ok, ok ? "" : to_string(lhs) + " != " + to_string(rhs)});
    if (!ok) throw VerificationBug("preset " + a.name + " failed its relation self-test: " + label);
}

inline void check_twist_laws(Algebra& a) {
    ValidationReport rep = a.twist.validate();
    if (!rep.all_pass()) throw VerificationBug("preset " + a.name + " failed twist validation");
    a.relation_checks.push_back({"twist laws validated", true, ""});
}

}  // namespace detail

inline Algebra preset(const std::string& name, const std::map<std::string, std::string>& params = {}) {
    detail::PresetParams p{params};

    if (name == "quantum_plane") {
        p.reject_unknown({"p", "q"}, name);
        Carrier c = detail::field_poly_carrier(p, "y");
        RingElem q = detail::scalar(c, p.rat("q", "2"), "q");
        RingElem qi = detail::inverse_scalar(c, q, "q");
        Algebra a{name, "k[y](x; sigma) with sigma(y) = q y",
                  TwistedRing(c, c.mul(q, c.gen()), c.mul(qi, c.gen()), c.zero(), "x"), params, {}};
        detail::check_twist_laws(a);
        // x y = q y x
        detail::check_relation(a, "x*y = q*y*x",
                               mul(SkewPoly::variable(a.twist), SkewPoly::constant(a.twist, c.gen())),
                               SkewPoly::monomial(a.twist, c.mul(q, c.gen()), 1));
        return a;
    }

    if (name == "jordan_plane") {
        p.reject_unknown({"p"}, name);
        Carrier c = detail::field_poly_carrier(p, "x");
        Algebra a{name, "k[x](y; delta) with delta(x) = 1",
                  TwistedRing(c, c.gen(), c.gen(), c.one(), "y"), params, {}};
        detail::check_twist_laws(a);
        // y x = x y + y^2
        SkewPoly rhs(a.twist);
        rhs.set_coeff(1, c.gen());
        rhs.set_coeff(2, c.one());
        detail::check_relation(a, "y*x = x*y + y^2",
                               mul(SkewPoly::variable(a.twist), SkewPoly::constant(a.twist, c.gen())), rhs);
        return a;
    }

    if (name == "q_meromorphic_weyl") {
        p.reject_unknown({"p", "q"}, name);
        Carrier c = detail::field_poly_carrier(p, "y");
        RingElem q = detail::scalar(c, p.rat("q", "2"), "q");
        RingElem qi = detail::inverse_scalar(c, q, "q");
        RingElem qm1 = c.sub(q, c.one());
        if (!c.is_unit(qm1))
            throw UsageError("q = 1 breaks the change of variable Y = y + (q-1)^-1 x");
        Algebra a{name, "k[y](x; sigma, delta) with sigma(y) = q^-1 y, delta(y) = -q^-1",
                  TwistedRing(c, c.mul(qi, c.gen()), c.mul(q, c.gen()), c.neg(qi), "x"), params, {}};
        detail::check_twist_laws(a);
        // y x = q x y + x^2
        SkewPoly yx = SkewPoly::monomial(a.twist, c.gen(), 1);
        SkewPoly rhs = scale_left(q, mul(SkewPoly::variable(a.twist), SkewPoly::constant(a.twist, c.gen())));
        rhs = add(rhs, SkewPoly::x_power(a.twist, 2));
        detail::check_relation(a, "y*x = q*x*y + x^2",
                               mul(SkewPoly::constant(a.twist, c.gen()), SkewPoly::variable(a.twist)), rhs);
        // Y x = q x Y for Y = y + (q-1)^-1 x
        SkewPoly Y(a.twist);
        Y.set_coeff(0, c.gen());
        Y.set_coeff(1, c.inv(qm1));
        detail::check_relation(a, "Y*x = q*x*Y after the change of variable",
                               mul(Y, SkewPoly::variable(a.twist)),
                               scale_left(q, mul(SkewPoly::variable(a.twist), Y)));
        return a;
    }

    if (name == "q_zero_bc") {
        p.reject_unknown({"p", "b", "c"}, name);
        Carrier c = detail::field_poly_carrier(p, "x");
        RingElem b = detail::scalar(c, p.rat("b", "2"), "b");
        RingElem bi = detail::inverse_scalar(c, b, "b");
        RingElem cc = detail::scalar(c, p.rat("c", "1"), "c");
        Algebra a{name, "k[x](y; sigma, delta) with sigma(x) = b x, delta(x) = c",
                  TwistedRing(c, c.mul(b, c.gen()), c.mul(bi, c.gen()), cc, "y"), params, {}};
        detail::check_twist_laws(a);
        // y x = b x y + c y^2
        SkewPoly rhs(a.twist);
        rhs.set_coeff(1, c.mul(b, c.gen()));
        rhs.set_coeff(2, cc);
        detail::check_relation(a, "y*x = b*x*y + c*y^2",
                               mul(SkewPoly::variable(a.twist), SkewPoly::constant(a.twist, c.gen())), rhs);
        return a;
    }

    if (name == "trimmed_double_extension") {
        p.reject_unknown({"p", "p12", "p11"}, name);
        Carrier c = detail::field_poly_carrier(p, "y2");
        RingElem p12 = detail::scalar(c, p.rat("p12", "2"), "p12");
        RingElem p12i = detail::inverse_scalar(c, p12, "p12");
        RingElem p11 = detail::scalar(c, p.rat("p11", "1"), "p11");
        Algebra a{name, "k[y2](y1; sigma, delta) with sigma(y2) = p12^-1 y2, delta(y2) = -p12^-1 p11",
                  TwistedRing(c, c.mul(p12i, c.gen()), c.mul(p12, c.gen()), c.neg(c.mul(p12i, p11)), "y1"),
                  params, {}};
        detail::check_twist_laws(a);
        // y2 y1 = p12 y1 y2 + p11 y1^2
        SkewPoly lhs = SkewPoly::monomial(a.twist, c.gen(), 1);
        SkewPoly rhs =
            scale_left(p12, mul(SkewPoly::variable(a.twist), SkewPoly::constant(a.twist, c.gen())));
        rhs = add(rhs, SkewPoly::monomial(a.twist, p11, 2));
        detail::check_relation(a, "y2*y1 = p12*y1*y2 + p11*y1^2", lhs, rhs);
        return a;
    }

    if (name == "skew_poly_ring") {
        p.reject_unknown({"n"}, name);
        long long n = p.integer("n", 4);
        if (n < 2) throw UsageError("n must be >= 2");
        Carrier c = Carrier::zmod(static_cast<std::uint64_t>(n));
        Algebra a{name, "Z/" + std::to_string(n) + "[x; id] (delta = 0 reduction)",
                  TwistedRing::identity(c, "x"), params, {}};
        detail::check_twist_laws(a);
        // x r = sigma(r) x = r x for every r
        bool ok = true;
        for (std::uint64_t i = 0; i < c.size() && ok; ++i) {
            RingElem r = c.element_at(i);
            ok = mul(SkewPoly::variable(a.twist), SkewPoly::constant(a.twist, r)) ==
                 SkewPoly::monomial(a.twist, r, 1);
        }
        a.relation_checks.push_back({"x*r = r*x for all r", ok, ""});
        if (!ok) throw VerificationBug("skew_poly_ring failed its relation self-test");
        return a;
    }

    throw UsageError("unknown preset '" + name + "'; see the catalog command");
}

}  // namespace orepoly
