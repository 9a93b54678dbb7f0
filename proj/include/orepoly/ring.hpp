#pragma once

// Exact coefficient carriers.
//
// A Carrier describes one of four exact coefficient rings:
//
//   zmod n        residue classes Z/n
//   fp p t        univariate polynomials F_p[t]
//   fptrunc p t k truncated polynomials F_p[t]/(t^k)
//   qpoly t       univariate polynomials Q[t]
//
// Elements are plain values (RingElem); all arithmetic goes through the
// Carrier so the ring context is always explicit.  Canonical form is
// unique: residues are reduced, polynomial coefficient vectors are dense
// ascending-degree with trailing zeros stripped, truncated polynomials
// keep degree < k.  Equality of canonical encodings is equality of ring
// elements.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "orepoly/errors.hpp"

namespace orepoly {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class CarrierKind { ZMod, FpPoly, FpTrunc, QPoly };

struct RingElem {
    // ZMod: scalar residue; FpPoly/FpTrunc: coefficients mod p; QPoly: rationals.
    std::variant<std::uint64_t, std::vector<std::uint64_t>, std::vector<Rat>> v;

    friend bool operator==(const RingElem& a, const RingElem& b) { return a.v == b.v; }
    friend bool operator!=(const RingElem& a, const RingElem& b) { return !(a.v == b.v); }
    friend bool operator<(const RingElem& a, const RingElem& b) { return a.v < b.v; }
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    std::uint64_t s = a + b;
    if (s >= n || s < a) s -= n;
    return s;
}

// Inverse of a mod n via extended Euclid; throws when gcd(a, n) != 1.
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t n) {
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(n), newr = static_cast<std::int64_t>(a % n);
    while (newr != 0) {
        std::int64_t q = r / newr;
        t = std::exchange(newt, t - q * newt);
        r = std::exchange(newr, r - q * newr);
    }
    if (r != 1) throw NotInvertible("element not invertible mod " + std::to_string(n));
    if (t < 0) t += static_cast<std::int64_t>(n);
    return static_cast<std::uint64_t>(t);
}

template <class C>
void strip(std::vector<C>& coeffs) {
    while (!coeffs.empty() && coeffs.back() == C(0)) coeffs.pop_back();
}

}  // namespace detail

class Carrier {
  public:
    static Carrier zmod(std::uint64_t n) {
        if (n < 2) throw InvalidTwist("zmod modulus must be >= 2");
        Carrier c;
        c.kind_ = CarrierKind::ZMod;
        c.mod_ = n;
        return c;
    }

    static Carrier fp_poly(std::uint64_t p, std::string var) {
        require_prime(p);
        Carrier c;
        c.kind_ = CarrierKind::FpPoly;
        c.mod_ = p;
        c.var_ = std::move(var);
        return c;
    }

    static Carrier fp_trunc(std::uint64_t p, std::string var, unsigned k) {
        require_prime(p);
        if (k < 1) throw InvalidTwist("truncation order must be >= 1");
        Carrier c;
        c.kind_ = CarrierKind::FpTrunc;
        c.mod_ = p;
        c.var_ = std::move(var);
        c.trunc_ = k;
        return c;
    }

    static Carrier q_poly(std::string var) {
        Carrier c;
        c.kind_ = CarrierKind::QPoly;
        c.var_ = std::move(var);
        return c;
    }

    CarrierKind kind() const { return kind_; }
    std::uint64_t modulus() const { return mod_; }
    unsigned truncation() const { return trunc_; }
    const std::string& var() const { return var_; }

    bool finite() const { return kind_ == CarrierKind::ZMod || kind_ == CarrierKind::FpTrunc; }

    std::uint64_t size() const {
        if (kind_ == CarrierKind::ZMod) return mod_;
        if (kind_ == CarrierKind::FpTrunc) {
            std::uint64_t s = 1;
            for (unsigned i = 0; i < trunc_; ++i) s *= mod_;
            return s;
        }
        throw CapExceeded("carrier " + describe() + " is not finite");
    }

    RingElem zero() const {
        if (kind_ == CarrierKind::ZMod) return {std::uint64_t{0}};
        if (kind_ == CarrierKind::QPoly) return {std::vector<Rat>{}};
        return {std::vector<std::uint64_t>{}};
    }

    RingElem one() const { return from_int(1); }

    RingElem from_int(long long n) const {
        if (kind_ == CarrierKind::QPoly) {
            std::vector<Rat> c;
            if (n != 0) c.push_back(Rat(n));
            return {std::move(c)};
        }
        std::uint64_t r = reduce_int(n);
        if (kind_ == CarrierKind::ZMod) return {r};
        std::vector<std::uint64_t> c;
        if (r != 0) c.push_back(r);
        return {std::move(c)};
    }

    RingElem from_rat(const Rat& q) const {
        if (kind_ == CarrierKind::QPoly) {
            std::vector<Rat> c;
            if (q != 0) c.push_back(q);
            return {std::move(c)};
        }
        BigInt num = boost::multiprecision::numerator(q);
        BigInt den = boost::multiprecision::denominator(q);
        std::uint64_t n = reduce_big(num);
        std::uint64_t d = reduce_big(den);
        std::uint64_t r = detail::mulmod(n, detail::invmod(d, mod_), mod_);
        if (kind_ == CarrierKind::ZMod) return {r};
        std::vector<std::uint64_t> c;
        if (r != 0) c.push_back(r);
        return {std::move(c)};
    }

    // The polynomial generator t; error for scalar carriers.
    RingElem gen() const {
        switch (kind_) {
            case CarrierKind::ZMod:
                throw CarrierMismatch("carrier " + describe() + " has no polynomial generator");
            case CarrierKind::QPoly:
                return {std::vector<Rat>{Rat(0), Rat(1)}};
            default:
                if (kind_ == CarrierKind::FpTrunc && trunc_ == 1) return zero();
                return {std::vector<std::uint64_t>{0, 1}};
        }
    }

    bool check(const RingElem& e) const {
        switch (kind_) {
            case CarrierKind::ZMod:
                return std::holds_alternative<std::uint64_t>(e.v) && std::get<std::uint64_t>(e.v) < mod_;
            case CarrierKind::QPoly: {
                auto* c = std::get_if<std::vector<Rat>>(&e.v);
                return c && (c->empty() || c->back() != 0);
            }
            default: {
                auto* c = std::get_if<std::vector<std::uint64_t>>(&e.v);
                if (!c) return false;
                if (!c->empty() && c->back() == 0) return false;
                for (auto x : *c)
                    if (x >= mod_) return false;
                if (kind_ == CarrierKind::FpTrunc && c->size() > trunc_) return false;
                return true;
            }
        }
    }

    void require(const RingElem& e) const {
        if (!check(e)) throw CarrierMismatch("element does not belong to carrier " + describe());
    }

    bool is_zero(const RingElem& e) const {
        if (auto* s = std::get_if<std::uint64_t>(&e.v)) return *s == 0;
        if (auto* c = std::get_if<std::vector<std::uint64_t>>(&e.v)) return c->empty();
        return std::get<std::vector<Rat>>(e.v).empty();
    }

    bool is_one(const RingElem& e) const { return e == one(); }

    RingElem add(const RingElem& a, const RingElem& b) const {
        switch (kind_) {
            case CarrierKind::ZMod:
                return {detail::addmod(std::get<std::uint64_t>(a.v), std::get<std::uint64_t>(b.v), mod_)};
            case CarrierKind::QPoly: {
                const auto& x = std::get<std::vector<Rat>>(a.v);
                const auto& y = std::get<std::vector<Rat>>(b.v);
                std::vector<Rat> out(std::max(x.size(), y.size()), Rat(0));
                for (std::size_t i = 0; i < x.size(); ++i) out[i] += x[i];
                for (std::size_t i = 0; i < y.size(); ++i) out[i] += y[i];
                detail::strip(out);
                return {std::move(out)};
            }
            default: {
                const auto& x = std::get<std::vector<std::uint64_t>>(a.v);
                const auto& y = std::get<std::vector<std::uint64_t>>(b.v);
                std::vector<std::uint64_t> out(std::max(x.size(), y.size()), 0);
                for (std::size_t i = 0; i < x.size(); ++i) out[i] = detail::addmod(out[i], x[i], mod_);
                for (std::size_t i = 0; i < y.size(); ++i) out[i] = detail::addmod(out[i], y[i], mod_);
                detail::strip(out);
                return {std::move(out)};
            }
        }
    }

    RingElem neg(const RingElem& a) const {
        switch (kind_) {
            case CarrierKind::ZMod: {
                auto s = std::get<std::uint64_t>(a.v);
                return {s == 0 ? std::uint64_t{0} : mod_ - s};
            }
            case CarrierKind::QPoly: {
                auto c = std::get<std::vector<Rat>>(a.v);
                for (auto& x : c) x = -x;
                return {std::move(c)};
            }
            default: {
                auto c = std::get<std::vector<std::uint64_t>>(a.v);
                for (auto& x : c)
                    if (x != 0) x = mod_ - x;
                return {std::move(c)};
            }
        }
    }

    RingElem sub(const RingElem& a, const RingElem& b) const { return add(a, neg(b)); }

    RingElem mul(const RingElem& a, const RingElem& b) const {
        switch (kind_) {
            case CarrierKind::ZMod:
                return {detail::mulmod(std::get<std::uint64_t>(a.v), std::get<std::uint64_t>(b.v), mod_)};
            case CarrierKind::QPoly: {
                const auto& x = std::get<std::vector<Rat>>(a.v);
                const auto& y = std::get<std::vector<Rat>>(b.v);
                if (x.empty() || y.empty()) return zero();
                std::vector<Rat> out(x.size() + y.size() - 1, Rat(0));
                for (std::size_t i = 0; i < x.size(); ++i)
                    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
                detail::strip(out);
                return {std::move(out)};
            }
            default: {
                const auto& x = std::get<std::vector<std::uint64_t>>(a.v);
                const auto& y = std::get<std::vector<std::uint64_t>>(b.v);
                if (x.empty() || y.empty()) return zero();
                std::size_t len = x.size() + y.size() - 1;
                if (kind_ == CarrierKind::FpTrunc && len > trunc_) len = trunc_;
                std::vector<std::uint64_t> out(len, 0);
                for (std::size_t i = 0; i < x.size(); ++i)
                    for (std::size_t j = 0; j < y.size(); ++j) {
                        if (i + j >= len) break;
                        out[i + j] = detail::addmod(out[i + j], detail::mulmod(x[i], y[j], mod_), mod_);
                    }
                detail::strip(out);
                return {std::move(out)};
            }
        }
    }

    bool is_unit(const RingElem& a) const {
        switch (kind_) {
            case CarrierKind::ZMod: {
                std::uint64_t v = std::get<std::uint64_t>(a.v);
                return v != 0 && std::gcd(v, mod_) == 1;
            }
            case CarrierKind::QPoly: {
                const auto& c = std::get<std::vector<Rat>>(a.v);
                return c.size() == 1;
            }
            case CarrierKind::FpPoly: {
                const auto& c = std::get<std::vector<std::uint64_t>>(a.v);
                return c.size() == 1;
            }
            default: {
                const auto& c = std::get<std::vector<std::uint64_t>>(a.v);
                return !c.empty() && c.front() != 0;
            }
        }
    }

    RingElem inv(const RingElem& a) const {
        switch (kind_) {
            case CarrierKind::ZMod:
                return {detail::invmod(std::get<std::uint64_t>(a.v), mod_)};
            case CarrierKind::QPoly: {
                const auto& c = std::get<std::vector<Rat>>(a.v);
                if (c.size() != 1) throw NotInvertible("non-constant polynomial has no inverse");
                return {std::vector<Rat>{1 / c[0]}};
            }
            case CarrierKind::FpPoly: {
                const auto& c = std::get<std::vector<std::uint64_t>>(a.v);
                if (c.size() != 1) throw NotInvertible("non-constant polynomial has no inverse");
                return {std::vector<std::uint64_t>{detail::invmod(c[0], mod_)}};
            }
            default: {
                // Power series inversion mod t^k: iterate inv <- inv*(2 - a*inv).
                const auto& c = std::get<std::vector<std::uint64_t>>(a.v);
                if (c.empty() || c.front() == 0) throw NotInvertible("constant term is not a unit");
                RingElem r{std::vector<std::uint64_t>{detail::invmod(c.front(), mod_)}};
                RingElem two = from_int(2);
                for (unsigned prec = 1; prec < trunc_; prec *= 2)
                    r = mul(r, sub(two, mul(a, r)));
                return r;
            }
        }
    }

    // f(image): the unital endomorphism extension of gen -> image.
    RingElem substitute(const RingElem& f, const RingElem& image) const {
        if (kind_ == CarrierKind::ZMod) return f;
        RingElem acc = zero();
        if (kind_ == CarrierKind::QPoly) {
            const auto& c = std::get<std::vector<Rat>>(f.v);
            for (std::size_t i = c.size(); i-- > 0;)
                acc = add(mul(acc, image), from_rat(c[i]));
        } else {
            const auto& c = std::get<std::vector<std::uint64_t>>(f.v);
            for (std::size_t i = c.size(); i-- > 0;)
                acc = add(mul(acc, image), from_int(static_cast<long long>(c[i])));
        }
        return acc;
    }

    int poly_degree(const RingElem& e) const {
        if (kind_ == CarrierKind::ZMod) return is_zero(e) ? -1 : 0;
        if (kind_ == CarrierKind::QPoly) return static_cast<int>(std::get<std::vector<Rat>>(e.v).size()) - 1;
        return static_cast<int>(std::get<std::vector<std::uint64_t>>(e.v).size()) - 1;
    }

    // Finite enumeration: a fixed bijection {0, ..., size()-1} <-> elements.
    RingElem element_at(std::uint64_t idx) const {
        if (kind_ == CarrierKind::ZMod) return {idx};
        if (kind_ != CarrierKind::FpTrunc) throw CapExceeded("cannot enumerate infinite carrier");
        std::vector<std::uint64_t> c;
        for (unsigned i = 0; i < trunc_; ++i) {
            c.push_back(idx % mod_);
            idx /= mod_;
        }
        detail::strip(c);
        return {std::move(c)};
    }

    std::uint64_t index_of(const RingElem& e) const {
        if (kind_ == CarrierKind::ZMod) return std::get<std::uint64_t>(e.v);
        if (kind_ != CarrierKind::FpTrunc) throw CapExceeded("cannot enumerate infinite carrier");
        const auto& c = std::get<std::vector<std::uint64_t>>(e.v);
        std::uint64_t idx = 0;
        for (std::size_t i = c.size(); i-- > 0;) idx = idx * mod_ + c[i];
        return idx;
    }

    // Deterministic sampling; avoids std::uniform_int_distribution so streams
    // are identical across standard library implementations.
    RingElem random_element(std::mt19937_64& rng, unsigned degree_bound = 4) const {
        switch (kind_) {
            case CarrierKind::ZMod:
                return {rng() % mod_};
            case CarrierKind::FpTrunc:
                return element_at(rng() % size());
            case CarrierKind::FpPoly: {
                unsigned d = static_cast<unsigned>(rng() % (degree_bound + 1));
                std::vector<std::uint64_t> c(d + 1);
                for (auto& x : c) x = rng() % mod_;
                detail::strip(c);
                return {std::move(c)};
            }
            default: {
                unsigned d = static_cast<unsigned>(rng() % (degree_bound + 1));
                std::vector<Rat> c(d + 1);
                for (auto& x : c) {
                    long long num = static_cast<long long>(rng() % 19) - 9;
                    x = Rat(num);
                }
                detail::strip(c);
                return {std::move(c)};
            }
        }
    }

    std::string to_string(const RingElem& e) const {
        if (kind_ == CarrierKind::ZMod) return std::to_string(std::get<std::uint64_t>(e.v));
        std::ostringstream os;
        bool first = true;
        auto emit = [&](const std::string& coeff, bool negative, std::size_t deg) {
            if (first) {
                if (negative) os << "-";
                first = false;
            } else {
                os << (negative ? " - " : " + ");
            }
            bool unit_coeff = coeff == "1" && deg > 0;
            if (!unit_coeff) os << coeff;
            if (deg > 0) {
                if (!unit_coeff) os << "*";
                os << var_;
                if (deg > 1) os << "^" << deg;
            }
        };
        if (kind_ == CarrierKind::QPoly) {
            const auto& c = std::get<std::vector<Rat>>(e.v);
            for (std::size_t i = c.size(); i-- > 0;) {
                if (c[i] == 0) continue;
                Rat a = c[i] < 0 ? Rat(-c[i]) : c[i];
                std::ostringstream cs;
                cs << a;
                emit(cs.str(), c[i] < 0, i);
            }
        } else {
            const auto& c = std::get<std::vector<std::uint64_t>>(e.v);
            for (std::size_t i = c.size(); i-- > 0;) {
                if (c[i] == 0) continue;
                emit(std::to_string(c[i]), false, i);
            }
        }
        if (first) return "0";
        return os.str();
    }

    std::string describe() const {
        switch (kind_) {
            case CarrierKind::ZMod:
                return "zmod " + std::to_string(mod_);
            case CarrierKind::FpPoly:
                return "fp " + std::to_string(mod_) + " " + var_;
            case CarrierKind::FpTrunc:
                return "fptrunc " + std::to_string(mod_) + " " + var_ + " " + std::to_string(trunc_);
            default:
                return "qpoly " + var_;
        }
    }

    friend bool operator==(const Carrier& a, const Carrier& b) {
        return a.kind_ == b.kind_ && a.mod_ == b.mod_ && a.trunc_ == b.trunc_ && a.var_ == b.var_;
    }

  private:
    Carrier() = default;

    static void require_prime(std::uint64_t p) {
        if (p < 2) throw InvalidTwist("characteristic must be prime");
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw InvalidTwist(std::to_string(p) + " is not prime");
    }

    std::uint64_t reduce_int(long long n) const {
        long long m = n % static_cast<long long>(mod_);
        if (m < 0) m += static_cast<long long>(mod_);
        return static_cast<std::uint64_t>(m);
    }

    std::uint64_t reduce_big(const BigInt& n) const {
        BigInt m = n % BigInt(mod_);
        if (m < 0) m += BigInt(mod_);
        return m.convert_to<std::uint64_t>();
    }

    CarrierKind kind_ = CarrierKind::ZMod;
    std::uint64_t mod_ = 0;
    unsigned trunc_ = 0;
    std::string var_;
};

}  // namespace orepoly
