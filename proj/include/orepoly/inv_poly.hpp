#pragma once

// Inverse polynomials m_0 + m_1 x^-1 + ... + m_k x^-k with coefficients in
// a right R-module, and the right action of A = R(x; sigma, delta):
//
//   m x^-i . r   = sum_{l=0..i} m f_i^l(r) x^-l
//   x^-l  . x^j  = x^{-l+j} when j <= l, else 0
//
// extended bilinearly.  The coefficient module is a template parameter;
// RingModule (R acting on itself) works for any carrier, FiniteModule for
// finite fixtures.

#include <map>
#include <string>

#include "orepoly/f_operators.hpp"

namespace orepoly {

// R as a right module over itself.
struct RingModule {
    using Elem = RingElem;
    const TwistedRing* tw;

    explicit RingModule(const TwistedRing& t) : tw(&t) {}

    const TwistedRing& twist() const { return *tw; }
    Elem zero() const { return tw->carrier().zero(); }
    bool is_zero(const Elem& m) const { return tw->carrier().is_zero(m); }
    Elem add(const Elem& a, const Elem& b) const { return tw->carrier().add(a, b); }
    Elem neg(const Elem& a) const { return tw->carrier().neg(a); }
    Elem act(const Elem& m, const RingElem& r) const { return tw->carrier().mul(m, r); }
    std::string name(const Elem& m) const { return tw->carrier().to_string(m); }
};

template <class M>
class InvPoly {
  public:
    using Coeff = typename M::Elem;

    InvPoly() = default;

    // index i holds the coefficient of x^-i
    const std::map<unsigned, Coeff>& terms() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }

    // max stored index (deepest inverse power); 0 for the zero element
    unsigned depth() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    // negative degree: -depth, with the zero element mapped to neg_infinity
    int degree() const { return coeffs_.empty() ? neg_infinity : -static_cast<int>(depth()); }

    Coeff coeff(const M& mod, unsigned i) const {
        auto it = coeffs_.find(i);
        return it == coeffs_.end() ? mod.zero() : it->second;
    }

    // lc: the coefficient of the leading monomial x^-depth
    Coeff leading_coeff() const {
        if (coeffs_.empty()) throw ZeroPolynomial("leading coefficient of the zero inverse polynomial");
        return coeffs_.rbegin()->second;
    }

    void set_coeff(const M& mod, unsigned i, const Coeff& c) {
        if (mod.is_zero(c))
            coeffs_.erase(i);
        else
            coeffs_[i] = c;
    }

    void add_to_coeff(const M& mod, unsigned i, const Coeff& c) { set_coeff(mod, i, mod.add(coeff(mod, i), c)); }

    static InvPoly monomial(const M& mod, const Coeff& m, unsigned i) {
        InvPoly p;
        p.set_coeff(mod, i, m);
        return p;
    }

    friend bool operator==(const InvPoly& a, const InvPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const InvPoly& a, const InvPoly& b) { return !(a.coeffs_ == b.coeffs_); }

  private:
    std::map<unsigned, Coeff> coeffs_;
};

template <class M>
InvPoly<M> add(const M& mod, const InvPoly<M>& a, const InvPoly<M>& b) {
    InvPoly<M> out = a;
    for (const auto& [i, c] : b.terms()) out.add_to_coeff(mod, i, c);
    return out;
}

template <class M>
InvPoly<M> neg(const M& mod, const InvPoly<M>& a) {
    InvPoly<M> out;
    for (const auto& [i, c] : a.terms()) out.set_coeff(mod, i, mod.neg(c));
    return out;
}

// The right action of A.
template <class M>
InvPoly<M> act(const M& mod, const InvPoly<M>& m, const SkewPoly& f) {
    const TwistedRing& tw = mod.twist();
    if (!tw.same(f.twist())) throw TwistMismatch("inverse polynomial and operand belong to different algebras");
    InvPoly<M> out;
    for (const auto& [i, mc] : m.terms()) {
        for (const auto& [j, r] : f.terms()) {
            // m x^-i . r x^j: only expansion terms x^-l with l >= j survive
            for (unsigned l = j; l <= i; ++l) {
                RingElem op = f_op(tw, i, l, r);
                if (tw.carrier().is_zero(op)) continue;
                out.add_to_coeff(mod, l - j, mod.act(mc, op));
            }
        }
    }
    return out;
}

template <class M>
std::string to_string(const M& mod, const InvPoly<M>& m) {
    if (m.is_zero()) return "0";
    const std::string& x = mod.twist().ore_var();
    std::string out;
    for (auto it = m.terms().begin(); it != m.terms().end(); ++it) {
        std::string cs = mod.name(it->second);
        bool composite = cs.find_first_of("+-", 1) != std::string::npos;
        if (!out.empty()) {
            if (!composite && cs.front() == '-') {
                out += " - ";
                cs = cs.substr(1);
            } else {
                out += " + ";
            }
        }
        if (composite) cs = "(" + cs + ")";
        if (it->first == 0)
            out += cs;
        else
            out += cs + "*" + x + "^-" + std::to_string(it->first);
    }
    return out;
}

}  // namespace orepoly
