#pragma once

// TwistedRing: a carrier R packaged with an automorphism sigma (and its
// explicit inverse), a locally nilpotent sigma-derivation delta, and the
// induced maps sigma' = sigma^-1, delta' = -delta o sigma^-1.
//
// sigma and delta are normally specified by their action on the carrier
// generator and extended mechanically: sigma multiplicatively, delta by
// additivity plus the product law delta(rs) = sigma(r)delta(s) + delta(r)s.
// On quotient carriers F_p[t]/(t^k) the extension must respect the ideal;
// this is checked at construction.  A constructor taking raw callables
// exists for nonstandard twists; validate() then decides whether the
// algebraic laws actually hold.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "orepoly/ring.hpp"

namespace orepoly {

struct LawCheck {
    std::string law;
    bool pass = true;
    std::string witness;  // empty when pass
};

struct ValidationReport {
    std::vector<LawCheck> checks;
    bool sampled = false;  // true when laws were checked on a random sample
    std::uint64_t seed = 0;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

struct TwistCaches {
    std::mutex mtx;
    std::map<RingElem, std::vector<RingElem>> push_through;            // x*r expansion
    std::map<std::tuple<unsigned, unsigned, RingElem>, RingElem> fop;  // f_j^i values
    std::vector<RingElem> delta_pow;                                   // delta(t^n)
};

}  // namespace detail

class TwistedRing {
  public:
    using Map = std::function<RingElem(const RingElem&)>;

    // Generator-image construction for polynomial carriers: the arguments
    // are the values of sigma, sigma^-1 and delta at the generator.
    TwistedRing(Carrier carrier, RingElem sigma_gen, RingElem sigma_inv_gen, RingElem delta_gen,
                std::string ore_var = "x", unsigned nilpotency_cap = 64)
        : carrier_(std::move(carrier)),
          ore_var_(std::move(ore_var)),
          cap_(nilpotency_cap),
          from_images_(true),
          caches_(std::make_shared<detail::TwistCaches>()) {
        if (carrier_.kind() == CarrierKind::ZMod)
            throw InvalidTwist("scalar carriers admit only the identity twist; use TwistedRing::identity");
        carrier_.require(sigma_gen);
        carrier_.require(sigma_inv_gen);
        carrier_.require(delta_gen);
        sigma_gen_ = std::move(sigma_gen);
        sigma_inv_gen_ = std::move(sigma_inv_gen);
        delta_gen_ = std::move(delta_gen);
        if (carrier_.kind() == CarrierKind::FpTrunc) check_well_defined();
    }

    // Identity twist (sigma = id, delta = 0); the only twist on Z/n.
    static TwistedRing identity(Carrier carrier, std::string ore_var = "x", unsigned cap = 64) {
        if (carrier.kind() == CarrierKind::ZMod)
            return TwistedRing(scalar_tag{}, std::move(carrier), std::move(ore_var), cap);
        RingElem g = carrier.gen();
        RingElem z = carrier.zero();
        return TwistedRing(std::move(carrier), g, g, z, std::move(ore_var), cap);
    }

    // Raw callable construction; nothing is derived or checked beyond what
    // validate() reports.  The callables must not dangle: capture by value.
    TwistedRing(Carrier carrier, Map sigma, Map sigma_inv, Map delta, std::string ore_var = "x",
                unsigned nilpotency_cap = 64)
        : carrier_(std::move(carrier)),
          ore_var_(std::move(ore_var)),
          cap_(nilpotency_cap),
          from_images_(false),
          sigma_fn_(std::move(sigma)),
          sigma_inv_fn_(std::move(sigma_inv)),
          delta_fn_(std::move(delta)),
          caches_(std::make_shared<detail::TwistCaches>()) {}

    const Carrier& carrier() const { return carrier_; }
    const std::string& ore_var() const { return ore_var_; }
    unsigned nilpotency_cap() const { return cap_; }

    // Two TwistedRing values denote the same algebra iff they share caches;
    // copies of one object stay compatible.
    bool same(const TwistedRing& o) const { return caches_ == o.caches_; }

    RingElem sigma(const RingElem& r) const {
        carrier_.require(r);
        if (!from_images_) return sigma_fn_(r);
        if (carrier_.kind() == CarrierKind::ZMod) return r;
        return carrier_.substitute(r, sigma_gen_);
    }

    RingElem sigma_inv(const RingElem& r) const {
        carrier_.require(r);
        if (!from_images_) return sigma_inv_fn_(r);
        if (carrier_.kind() == CarrierKind::ZMod) return r;
        return carrier_.substitute(r, sigma_inv_gen_);
    }

    RingElem delta(const RingElem& r) const {
        carrier_.require(r);
        if (!from_images_) return delta_fn_(r);
        return delta_extend(r);
    }

    // delta'(r) = -delta(sigma^-1(r)), the inverse-variable derivation.
    RingElem delta_prime(const RingElem& r) const { return carrier_.neg(delta(sigma_inv(r))); }

    // Smallest n >= 1 with delta^n(r) = 0.
    unsigned nilpotency_index(const RingElem& r) const {
        carrier_.require(r);
        RingElem cur = delta(r);
        for (unsigned n = 1; n <= cap_; ++n) {
            if (carrier_.is_zero(cur)) return n;
            cur = delta(cur);
        }
        throw NotLocallyNilpotent("delta^n(r) != 0 for all n <= " + std::to_string(cap_) +
                                  " at r = " + carrier_.to_string(r));
    }

    // The ring twisted by (sigma', delta') instead of (sigma, delta).
    TwistedRing inverse_twist() const {
        TwistedRing self = *this;
        return TwistedRing(
            carrier_, [self](const RingElem& r) { return self.sigma_inv(r); },
            [self](const RingElem& r) { return self.sigma(r); },
            [self](const RingElem& r) { return self.delta_prime(r); }, ore_var_, cap_);
    }

    // Runs the law suite: exhaustive on finite carriers of size <= 4096,
    // otherwise on seeded random samples (>= `samples` pairs).
    ValidationReport validate(std::uint64_t seed = 0, unsigned samples = 1000) const {
        ValidationReport rep;
        rep.seed = seed;
        std::vector<RingElem> set;
        std::vector<std::pair<RingElem, RingElem>> sampled_pairs;
        if (carrier_.finite() && carrier_.size() <= 4096) {
            for (std::uint64_t i = 0; i < carrier_.size(); ++i) set.push_back(carrier_.element_at(i));
        } else {
            rep.sampled = true;
            std::mt19937_64 rng(seed);
            for (unsigned i = 0; i < samples; ++i) set.push_back(carrier_.random_element(rng));
            for (unsigned i = 0; i < samples; ++i)
                sampled_pairs.emplace_back(carrier_.random_element(rng), carrier_.random_element(rng));
        }

        auto pair_check = [&](const std::string& law, auto&& pred) {
            LawCheck c{law, true, ""};
            auto try_pair = [&](const RingElem& r, const RingElem& s) {
                if (!pred(r, s)) {
                    c = {law, false, "(" + carrier_.to_string(r) + ", " + carrier_.to_string(s) + ")"};
                    return false;
                }
                return true;
            };
            if (rep.sampled) {
                for (const auto& [r, s] : sampled_pairs)
                    if (!try_pair(r, s)) break;
            } else {
                for (const auto& r : set) {
                    for (const auto& s : set)
                        if (!try_pair(r, s)) break;
                    if (!c.pass) break;
                }
            }
            rep.checks.push_back(std::move(c));
        };
        auto unary_check = [&](const std::string& law, auto&& pred) {
            LawCheck c{law, true, ""};
            for (const auto& r : set)
                if (!pred(r)) {
                    c = {law, false, carrier_.to_string(r)};
                    break;
                }
            rep.checks.push_back(std::move(c));
        };

        rep.checks.push_back({"sigma(1) = 1", sigma(carrier_.one()) == carrier_.one(), ""});
        pair_check("sigma(r+s) = sigma(r)+sigma(s)", [&](const RingElem& r, const RingElem& s) {
            return sigma(carrier_.add(r, s)) == carrier_.add(sigma(r), sigma(s));
        });
        pair_check("sigma(rs) = sigma(r)sigma(s)", [&](const RingElem& r, const RingElem& s) {
            return sigma(carrier_.mul(r, s)) == carrier_.mul(sigma(r), sigma(s));
        });
        unary_check("sigma(sigma_inv(r)) = r", [&](const RingElem& r) { return sigma(sigma_inv(r)) == r; });
        unary_check("sigma_inv(sigma(r)) = r", [&](const RingElem& r) { return sigma_inv(sigma(r)) == r; });
        pair_check("delta(r+s) = delta(r)+delta(s)", [&](const RingElem& r, const RingElem& s) {
            return delta(carrier_.add(r, s)) == carrier_.add(delta(r), delta(s));
        });
        pair_check("delta(rs) = sigma(r)delta(s)+delta(r)s", [&](const RingElem& r, const RingElem& s) {
            return delta(carrier_.mul(r, s)) ==
                   carrier_.add(carrier_.mul(sigma(r), delta(s)), carrier_.mul(delta(r), s));
        });
        unary_check("delta locally nilpotent (cap " + std::to_string(cap_) + ")", [&](const RingElem& r) {
            try {
                nilpotency_index(r);
                return true;
            } catch (const NotLocallyNilpotent&) {
                return false;
            }
        });
        return rep;
    }

    detail::TwistCaches& caches() const { return *caches_; }

  private:
    struct scalar_tag {};
    TwistedRing(scalar_tag, Carrier carrier, std::string ore_var, unsigned cap)
        : carrier_(std::move(carrier)),
          ore_var_(std::move(ore_var)),
          cap_(cap),
          from_images_(true),
          caches_(std::make_shared<detail::TwistCaches>()) {}

    // delta on a polynomial, from delta(t) by additivity and the product law:
    // delta(t^n) = sigma(t) delta(t^{n-1}) + delta(t) t^{n-1}.
    RingElem delta_extend(const RingElem& r) const {
        if (carrier_.kind() == CarrierKind::ZMod) return carrier_.zero();
        int deg = carrier_.poly_degree(r);
        if (deg < 1) return carrier_.zero();
        std::lock_guard<std::mutex> lk(caches_->mtx);
        auto& dp = caches_->delta_pow;
        if (dp.empty()) {
            dp.push_back(carrier_.zero());  // delta(1) = 0
            dp.push_back(delta_gen_);
        }
        while (dp.size() <= static_cast<std::size_t>(deg)) {
            std::size_t n = dp.size();
            RingElem tn1 = carrier_.one();
            for (std::size_t i = 0; i + 1 < n; ++i) tn1 = carrier_.mul(tn1, carrier_.gen());
            dp.push_back(carrier_.add(carrier_.mul(sigma_gen_, dp[n - 1]), carrier_.mul(delta_gen_, tn1)));
        }
        RingElem acc = carrier_.zero();
        if (carrier_.kind() == CarrierKind::QPoly) {
            const auto& c = std::get<std::vector<Rat>>(r.v);
            for (std::size_t i = 1; i < c.size(); ++i)
                if (c[i] != 0) acc = carrier_.add(acc, carrier_.mul(carrier_.from_rat(c[i]), dp[i]));
        } else {
            const auto& c = std::get<std::vector<std::uint64_t>>(r.v);
            for (std::size_t i = 1; i < c.size(); ++i)
                if (c[i] != 0)
                    acc = carrier_.add(acc, carrier_.mul(carrier_.from_int(static_cast<long long>(c[i])), dp[i]));
        }
        return acc;
    }

    // On F_p[t]/(t^k) the generator images must induce well-defined maps:
    // sigma(t)^k, sigma_inv(t)^k and the extension of delta at t^k must all
    // reduce to 0 mod t^k.  Computed in the full polynomial ring.
    void check_well_defined() const {
        Carrier full = Carrier::fp_poly(carrier_.modulus(), carrier_.var());
        unsigned k = carrier_.truncation();
        auto reduces_to_zero = [&](const RingElem& f) {
            const auto& c = std::get<std::vector<std::uint64_t>>(f.v);
            for (std::size_t i = 0; i < c.size() && i < k; ++i)
                if (c[i] != 0) return false;
            return true;
        };
        RingElem spow = full.one(), sipow = full.one();
        for (unsigned i = 0; i < k; ++i) {
            spow = full.mul(spow, sigma_gen_);
            sipow = full.mul(sipow, sigma_inv_gen_);
        }
        if (!reduces_to_zero(spow))
            throw InvalidTwist("sigma does not preserve the ideal (t^" + std::to_string(k) + ")");
        if (!reduces_to_zero(sipow))
            throw InvalidTwist("sigma_inv does not preserve the ideal (t^" + std::to_string(k) + ")");
        RingElem dpow = delta_gen_, tpow = full.one();
        for (unsigned n = 2; n <= k; ++n) {
            tpow = full.mul(tpow, full.gen());  // t^{n-1}
            dpow = full.add(full.mul(sigma_gen_, dpow), full.mul(delta_gen_, tpow));
        }
        if (!reduces_to_zero(dpow))
            throw InvalidTwist("delta does not preserve the ideal (t^" + std::to_string(k) + ")");
    }

    Carrier carrier_;
    std::string ore_var_;
    unsigned cap_ = 64;
    bool from_images_ = true;
    RingElem sigma_gen_, sigma_inv_gen_, delta_gen_;
    Map sigma_fn_, sigma_inv_fn_, delta_fn_;
    std::shared_ptr<detail::TwistCaches> caches_;
};

}  // namespace orepoly
