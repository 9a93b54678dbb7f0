#pragma once

// Arithmetic in the skew Ore polynomial ring A = R(x; sigma, delta).
//
// Elements are left normal forms r_0 + r_1 x + ... + r_k x^k.  Moving x
// right past a coefficient expands by local nilpotency of delta:
//
//   x r = sigma(r) x + sigma(delta(r)) x^2 + ... + sigma(delta^{n-1}(r)) x^n
//
// with n = nilpotency_index(r).  Multiplication rewrites with this rule;
// the expansion of each coefficient is memoized per algebra because the
// same coefficients recur heavily inside polynomial products.

#include <cstdint>
#include <limits>
#include <map>
#include <string>

#include "orepoly/twist.hpp"

namespace orepoly {

// Degree of the zero polynomial.
inline constexpr int neg_infinity = std::numeric_limits<int>::min();

class SkewPoly {
  public:
    explicit SkewPoly(const TwistedRing& tw) : tw_(&tw) {}

    static SkewPoly constant(const TwistedRing& tw, const RingElem& c) {
        SkewPoly f(tw);
        f.set_coeff(0, c);
        return f;
    }

    static SkewPoly monomial(const TwistedRing& tw, const RingElem& c, unsigned deg) {
        SkewPoly f(tw);
        f.set_coeff(deg, c);
        return f;
    }

    // The Ore indeterminate x.
    static SkewPoly variable(const TwistedRing& tw) { return monomial(tw, tw.carrier().one(), 1); }

    static SkewPoly x_power(const TwistedRing& tw, unsigned p) { return monomial(tw, tw.carrier().one(), p); }

    static SkewPoly one(const TwistedRing& tw) { return constant(tw, tw.carrier().one()); }

    const TwistedRing& twist() const { return *tw_; }
    const std::map<unsigned, RingElem>& terms() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }

    int degree() const { return coeffs_.empty() ? neg_infinity : static_cast<int>(coeffs_.rbegin()->first); }

    RingElem leading_coeff() const {
        if (coeffs_.empty()) throw ZeroPolynomial("leading coefficient of the zero polynomial");
        return coeffs_.rbegin()->second;
    }

    RingElem coeff(unsigned deg) const {
        auto it = coeffs_.find(deg);
        return it == coeffs_.end() ? tw_->carrier().zero() : it->second;
    }

    void set_coeff(unsigned deg, const RingElem& c) {
        tw_->carrier().require(c);
        if (tw_->carrier().is_zero(c))
            coeffs_.erase(deg);
        else
            coeffs_[deg] = c;
    }

    void add_to_coeff(unsigned deg, const RingElem& c) { set_coeff(deg, tw_->carrier().add(coeff(deg), c)); }

    friend bool operator==(const SkewPoly& a, const SkewPoly& b) {
        return a.tw_->same(*b.tw_) && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const SkewPoly& a, const SkewPoly& b) { return !(a == b); }

  private:
    const TwistedRing* tw_;
    std::map<unsigned, RingElem> coeffs_;
};

namespace detail {

inline void require_same_twist(const SkewPoly& a, const SkewPoly& b) {
    if (!a.twist().same(b.twist())) throw TwistMismatch("operands belong to different algebras");
}

// Memoized expansion of x*r: entry j holds the degree-(j+1) coefficient
// sigma(delta^j(r)).  Exactly nilpotency_index(r) entries, none zero.
inline const std::vector<RingElem>& push_expansion(const TwistedRing& tw, const RingElem& r) {
    auto& caches = tw.caches();
    {
        std::lock_guard<std::mutex> lk(caches.mtx);
        auto it = caches.push_through.find(r);
        if (it != caches.push_through.end()) return it->second;
    }
    std::vector<RingElem> out;
    const Carrier& c = tw.carrier();
    RingElem cur = r;
    while (!c.is_zero(cur)) {
        if (out.size() >= tw.nilpotency_cap())
            throw NotLocallyNilpotent("delta^n(r) != 0 for all n <= " + std::to_string(tw.nilpotency_cap()) +
                                      " at r = " + c.to_string(r));
        out.push_back(tw.sigma(cur));
        cur = tw.delta(cur);
    }
    std::lock_guard<std::mutex> lk(caches.mtx);
    return caches.push_through.emplace(r, std::move(out)).first->second;
}

}  // namespace detail

inline SkewPoly add(const SkewPoly& a, const SkewPoly& b) {
    detail::require_same_twist(a, b);
    SkewPoly out = a;
    for (const auto& [d, c] : b.terms()) out.add_to_coeff(d, c);
    return out;
}

inline SkewPoly neg(const SkewPoly& a) {
    SkewPoly out(a.twist());
    for (const auto& [d, c] : a.terms()) out.set_coeff(d, a.twist().carrier().neg(c));
    return out;
}

inline SkewPoly sub(const SkewPoly& a, const SkewPoly& b) { return add(a, neg(b)); }

// r*f: multiplies every coefficient on the left.
inline SkewPoly scale_left(const RingElem& r, const SkewPoly& f) {
    const Carrier& c = f.twist().carrier();
    SkewPoly out(f.twist());
    for (const auto& [d, a] : f.terms()) out.set_coeff(d, c.mul(r, a));
    return out;
}

// Normal form of x*r.
inline SkewPoly push_x_through(const TwistedRing& tw, const RingElem& r) {
    const auto& exp = detail::push_expansion(tw, r);
    SkewPoly out(tw);
    for (std::size_t j = 0; j < exp.size(); ++j) out.set_coeff(static_cast<unsigned>(j) + 1, exp[j]);
    return out;
}

// Normal form of x*f.
inline SkewPoly x_times(const SkewPoly& f) {
    const TwistedRing& tw = f.twist();
    SkewPoly out(tw);
    for (const auto& [k, c] : f.terms()) {
        const auto& exp = detail::push_expansion(tw, c);
        for (std::size_t j = 0; j < exp.size(); ++j) out.add_to_coeff(k + static_cast<unsigned>(j) + 1, exp[j]);
    }
    return out;
}

inline SkewPoly mul(const SkewPoly& f, const SkewPoly& g) {
    detail::require_same_twist(f, g);
    SkewPoly acc(f.twist());
    SkewPoly cur = g;  // x^i * g, advanced incrementally
    unsigned done = 0;
    for (const auto& [i, a] : f.terms()) {
        for (; done < i; ++done) cur = x_times(cur);
        acc = add(acc, scale_left(a, cur));
    }
    return acc;
}

inline SkewPoly pow(const SkewPoly& f, unsigned n) {
    SkewPoly acc = SkewPoly::one(f.twist());
    for (unsigned i = 0; i < n; ++i) acc = mul(acc, f);
    return acc;
}

// The element a_p with x^p a = a_p x^p, computed by p-fold application of
// the one-step swap x a = a' x.  The defining identity is re-verified by
// direct multiplication; a mismatch is a bug in the rewriting engine.
inline SkewPoly ore_swap(const SkewPoly& a, unsigned p) {
    const TwistedRing& tw = a.twist();
    SkewPoly res = a;
    for (unsigned step = 0; step < p; ++step) {
        SkewPoly next(tw);
        for (const auto& [k, c] : res.terms()) {
            const auto& exp = detail::push_expansion(tw, c);
            for (std::size_t j = 0; j < exp.size(); ++j) next.add_to_coeff(k + static_cast<unsigned>(j), exp[j]);
        }
        res = next;
    }
    if (mul(SkewPoly::x_power(tw, p), a) != mul(res, SkewPoly::x_power(tw, p)))
        throw VerificationBug("ore_swap postcondition x^p a = a_p x^p failed");
    return res;
}

// Prints the left normal form in ascending degree, e.g. "4 + 2*y*x + (y^2 + 1)*x^2".
inline std::string to_string(const SkewPoly& f) {
    if (f.is_zero()) return "0";
    const Carrier& c = f.twist().carrier();
    const std::string& x = f.twist().ore_var();
    std::string out;
    bool first = true;
    for (auto it = f.terms().begin(); it != f.terms().end(); ++it) {
        std::string cs = c.to_string(it->second);
        bool composite = cs.find_first_of("+-", 1) != std::string::npos;
        if (!first) {
            if (!composite && cs.front() == '-') {
                out += " - ";
                cs = cs.substr(1);
            } else {
                out += " + ";
            }
        }
        first = false;
        unsigned d = it->first;
        if (d == 0) {
            out += cs;
            continue;
        }
        if (cs == "1")
            out += x;
        else
            out += (composite ? "(" + cs + ")" : cs) + "*" + x;
        if (d > 1) out += "^" + std::to_string(d);
    }
    return out;
}

}  // namespace orepoly
