#pragma once

// The f_j^i operator calculus for the inverse variable.
//
// f_j^i is the sum of all words in sigma', delta' with i letters sigma'
// and j-i letters delta'; these are the coefficient operators of the
// expansion  x^{-j} r = sum_{i=0..j} f_j^i(r) x^{-i}.  Endpoints:
// f_0^0 = id, f_j^j = sigma'^j, f_j^0 = delta'^j.  Values are memoized
// per algebra.  f_op_word_oracle enumerates the words explicitly and is
// the independent cross-check for the recursion.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "orepoly/skew_poly.hpp"

namespace orepoly {

namespace detail {

inline RingElem f_op_rec(const TwistedRing& tw, unsigned j, unsigned i, const RingElem& r) {
    if (i > j) return tw.carrier().zero();
    if (j == 0) return r;
    auto& caches = tw.caches();
    std::tuple<unsigned, unsigned, RingElem> key{j, i, r};
    {
        std::lock_guard<std::mutex> lk(caches.mtx);
        auto it = caches.fop.find(key);
        if (it != caches.fop.end()) return it->second;
    }
    // Split on the first letter: f_j^i = sigma' f_{j-1}^{i-1} + delta' f_{j-1}^i.
    RingElem acc = tw.carrier().zero();
    if (i >= 1) acc = tw.carrier().add(acc, tw.sigma_inv(f_op_rec(tw, j - 1, i - 1, r)));
    if (i <= j - 1) acc = tw.carrier().add(acc, tw.delta_prime(f_op_rec(tw, j - 1, i, r)));
    std::lock_guard<std::mutex> lk(caches.mtx);
    return caches.fop.emplace(std::move(key), std::move(acc)).first->second;
}

inline std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t b = 1;
    for (unsigned i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

}  // namespace detail

inline RingElem f_op(const TwistedRing& tw, unsigned j, unsigned i, const RingElem& r) {
    tw.carrier().require(r);
    if (i > j) throw IndexOutOfRange("f_j^i requires 0 <= i <= j");
    return detail::f_op_rec(tw, j, i, r);
}

// Sums all C(j, i) words explicitly; errors when the word count exceeds `cap`.
inline RingElem f_op_word_oracle(const TwistedRing& tw, unsigned j, unsigned i, const RingElem& r,
                                 std::uint64_t cap = 100000) {
    tw.carrier().require(r);
    if (i > j) throw IndexOutOfRange("f_j^i requires 0 <= i <= j");
    if (j > 62) throw CapExceeded("word length " + std::to_string(j) + " exceeds cap");
    if (detail::binomial(j, i) > cap)
        throw CapExceeded("word count C(" + std::to_string(j) + "," + std::to_string(i) + ") exceeds cap");
    if (j == 0) return r;
    const Carrier& c = tw.carrier();
    RingElem acc = c.zero();
    auto apply_word = [&](std::uint64_t mask) {
        // bit set at position t = letter sigma', clear = letter delta'
        RingElem w = r;
        for (unsigned t = 0; t < j; ++t)
            w = (mask >> t) & 1 ? tw.sigma_inv(w) : tw.delta_prime(w);
        acc = c.add(acc, w);
    };
    if (i == 0) {
        apply_word(0);
    } else {
        // Gosper's hack: next mask with the same popcount.
        std::uint64_t mask = (1ull << i) - 1;
        while (mask < (1ull << j)) {
            apply_word(mask);
            std::uint64_t lo = mask & (~mask + 1);
            std::uint64_t up = mask + lo;
            mask = (((up ^ mask) >> 2) / lo) | up;
        }
    }
    return acc;
}

// Coefficient list of x^{-k} r in the x^{-i} basis, ascending i, zeros omitted.
inline std::vector<std::pair<unsigned, RingElem>> inv_commute(const TwistedRing& tw, const RingElem& r,
                                                              unsigned k) {
    tw.carrier().require(r);
    std::vector<std::pair<unsigned, RingElem>> out;
    for (unsigned i = 0; i <= k; ++i) {
        RingElem v = f_op(tw, k, i, r);
        if (!tw.carrier().is_zero(v)) out.emplace_back(i, v);
    }
    return out;
}

// One application of x^{-1} r = sigma'(r) x^{-1} + delta'(r) to every term
// of an element of R[x^{-1}], given as (exponent, coefficient) pairs.
inline std::vector<std::pair<unsigned, RingElem>> inv_single_step(
    const TwistedRing& tw, const std::vector<std::pair<unsigned, RingElem>>& terms) {
    const Carrier& c = tw.carrier();
    std::map<unsigned, RingElem> acc;
    auto put = [&](unsigned e, const RingElem& v) {
        auto it = acc.find(e);
        RingElem s = it == acc.end() ? v : c.add(it->second, v);
        if (c.is_zero(s))
            acc.erase(e);
        else
            acc[e] = s;
    };
    for (const auto& [e, v] : terms) {
        put(e + 1, tw.sigma_inv(v));
        put(e, tw.delta_prime(v));
    }
    return {acc.begin(), acc.end()};
}

// Probe for the product relation on R[x^{-1}].  The direct product
// (r x^{-k})(s x^{-k'}) is computed from k single-step commutations and is
// the ground truth; the report says which closed-form reading of the
// right-hand side matches it: all terms collapsed at exponent -(k+k'), or
// term i placed at exponent -(i+k').
struct Relation24Report {
    unsigned k = 0, k_prime = 0;
    std::string direct, collapsed_reading, indexed_reading;  // rendered elements of R[x^{-1}]
    bool collapsed_matches = false;
    bool indexed_matches = false;
};

namespace detail {

inline std::string render_inv_terms(const TwistedRing& tw,
                                    const std::vector<std::pair<unsigned, RingElem>>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (auto it = terms.begin(); it != terms.end(); ++it) {
        if (!out.empty()) out += " + ";
        std::string cs = tw.carrier().to_string(it->second);
        if (cs.find_first_of("+-", 1) != std::string::npos || cs.front() == '-') cs = "(" + cs + ")";
        if (it->first == 0)
            out += cs;
        else
            out += cs + "*" + tw.ore_var() + "^-" + std::to_string(it->first);
    }
    return out;
}

}  // namespace detail

inline Relation24Report check_product_relation_2_4(const TwistedRing& tw, const RingElem& r,
                                                   const RingElem& s, unsigned k, unsigned k_prime) {
    const Carrier& c = tw.carrier();
    c.require(r);
    c.require(s);
    Relation24Report rep;
    rep.k = k;
    rep.k_prime = k_prime;

    // Ground truth: move s through x^{-k} one step at a time, left-multiply
    // by r, then shift every exponent by k'.
    std::vector<std::pair<unsigned, RingElem>> moved{{0, s}};
    for (unsigned step = 0; step < k; ++step) moved = inv_single_step(tw, moved);
    std::map<unsigned, RingElem> direct;
    for (const auto& [e, v] : moved) {
        RingElem coeff = c.mul(r, v);
        if (!c.is_zero(coeff)) direct[e + k_prime] = coeff;
    }

    // Reading A: one monomial sum_i r f_k^i(s) at exponent k + k'.
    RingElem collapsed_coeff = c.zero();
    for (unsigned i = 0; i <= k; ++i) collapsed_coeff = c.add(collapsed_coeff, c.mul(r, f_op(tw, k, i, s)));
    std::map<unsigned, RingElem> collapsed;
    if (!c.is_zero(collapsed_coeff)) collapsed[k + k_prime] = collapsed_coeff;

    // Reading B: term i at exponent i + k'.
    std::map<unsigned, RingElem> indexed;
    for (unsigned i = 0; i <= k; ++i) {
        RingElem coeff = c.mul(r, f_op(tw, k, i, s));
        if (!c.is_zero(coeff)) indexed[i + k_prime] = coeff;
    }

    auto as_vec = [](const std::map<unsigned, RingElem>& m) {
        return std::vector<std::pair<unsigned, RingElem>>(m.begin(), m.end());
    };
    rep.collapsed_matches = direct == collapsed;
    rep.indexed_matches = direct == indexed;
    rep.direct = detail::render_inv_terms(tw, as_vec(direct));
    rep.collapsed_reading = detail::render_inv_terms(tw, as_vec(collapsed));
    rep.indexed_reading = detail::render_inv_terms(tw, as_vec(indexed));
    return rep;
}

}  // namespace orepoly
