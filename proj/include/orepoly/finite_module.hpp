#pragma once

// Finite right R-modules over finite carriers: submodule lattices,
// quotients, annihilators, and the compatibility checkers.
//
// Elements are dense ids 0..n-1 with 0 the zero element; addition, negation
// and the right action are materialized as tables against the carrier
// enumeration.  Right-module axioms are validated at construction:
// exhaustively within the budget, on a seeded sample (flagged) beyond it.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "orepoly/twist.hpp"

namespace orepoly {

struct ModuleValidation {
    std::vector<LawCheck> checks;
    bool sampled = false;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

class Submodule;

class FiniteModule {
  public:
    using Elem = std::uint32_t;

    static constexpr std::uint64_t default_size_cap = 4096;
    static constexpr std::uint64_t exhaustive_budget = 1u << 22;

    // R/I for a right ideal I given by generators; I = {0} gives R itself.
    static FiniteModule quotient_of_ring(const TwistedRing& tw, const std::vector<RingElem>& ideal_gens,
                                         std::uint64_t size_cap = default_size_cap) {
        const Carrier& c = tw.carrier();
        std::uint64_t S = c.size();
        if (S > size_cap) throw CapExceeded("carrier too large to enumerate as a module");

        // right-ideal closure of the generators
        std::vector<char> in_ideal(S, 0);
        std::vector<std::uint64_t> work;
        auto push = [&](std::uint64_t idx) {
            if (!in_ideal[idx]) {
                in_ideal[idx] = 1;
                work.push_back(idx);
            }
        };
        push(c.index_of(c.zero()));
        for (const auto& g : ideal_gens) {
            c.require(g);
            push(c.index_of(g));
        }
        while (!work.empty()) {
            std::uint64_t a = work.back();
            work.pop_back();
            RingElem av = c.element_at(a);
            std::vector<std::uint64_t> members;
            for (std::uint64_t i = 0; i < S; ++i)
                if (in_ideal[i]) members.push_back(i);
            for (std::uint64_t b : members) push(c.index_of(c.add(av, c.element_at(b))));
            for (std::uint64_t r = 0; r < S; ++r) push(c.index_of(c.mul(av, c.element_at(r))));
        }

        // cosets: representative = least carrier index
        std::vector<std::int64_t> coset_of(S, -1);
        std::vector<std::uint64_t> reps;
        for (std::uint64_t v = 0; v < S; ++v) {
            if (coset_of[v] >= 0) continue;
            Elem id = static_cast<Elem>(reps.size());
            reps.push_back(v);
            RingElem vv = c.element_at(v);
            for (std::uint64_t i = 0; i < S; ++i)
                if (in_ideal[i]) coset_of[c.index_of(c.add(vv, c.element_at(i)))] = id;
        }

        FiniteModule m;
        m.tw_.emplace(tw);
        m.n_ = static_cast<Elem>(reps.size());
        for (std::uint64_t rep : reps) m.names_.push_back("[" + c.to_string(c.element_at(rep)) + "]");
        m.add_.resize(static_cast<std::size_t>(m.n_) * m.n_);
        for (Elem a = 0; a < m.n_; ++a)
            for (Elem b = 0; b < m.n_; ++b)
                m.add_[a * m.n_ + b] =
                    static_cast<Elem>(coset_of[c.index_of(c.add(c.element_at(reps[a]), c.element_at(reps[b])))]);
        m.act_.resize(static_cast<std::size_t>(m.n_) * S);
        for (Elem a = 0; a < m.n_; ++a)
            for (std::uint64_t r = 0; r < S; ++r)
                m.act_[a * S + r] =
                    static_cast<Elem>(coset_of[c.index_of(c.mul(c.element_at(reps[a]), c.element_at(r)))]);
        m.proj_.assign(coset_of.begin(), coset_of.end());
        m.finish_build();
        return m;
    }

    // Explicit table module: addition rows plus, on polynomial carriers, the
    // action of the generator; the rest of the action is derived from ring
    // additivity and multiplicativity.
    static FiniteModule from_tables(const TwistedRing& tw, const std::vector<std::string>& names,
                                    const std::string& zero_name,
                                    const std::map<std::pair<std::string, std::string>, std::string>& add_rows,
                                    const std::map<std::string, std::string>& gen_action,
                                    std::uint64_t size_cap = default_size_cap) {
        const Carrier& c = tw.carrier();
        std::uint64_t S = c.size();
        if (S > size_cap || names.size() > size_cap) throw CapExceeded("module too large");
        if (names.empty()) throw InvalidModule("module needs at least the zero element");

        // reorder so the zero element gets id 0
        std::vector<std::string> ordered = names;
        auto zit = std::find(ordered.begin(), ordered.end(), zero_name);
        if (zit == ordered.end()) throw InvalidModule("zero element '" + zero_name + "' is not listed");
        std::iter_swap(ordered.begin(), zit);
        std::map<std::string, Elem> id_of;
        for (Elem i = 0; i < ordered.size(); ++i) {
            if (id_of.count(ordered[i])) throw InvalidModule("duplicate element name '" + ordered[i] + "'");
            id_of[ordered[i]] = i;
        }

        FiniteModule m;
        m.tw_.emplace(tw);
        m.n_ = static_cast<Elem>(ordered.size());
        m.names_ = ordered;
        m.add_.assign(static_cast<std::size_t>(m.n_) * m.n_, m.n_);  // n_ = unset marker
        auto lookup = [&](const std::string& s) {
            auto it = id_of.find(s);
            if (it == id_of.end()) throw InvalidModule("unknown module element '" + s + "'");
            return it->second;
        };
        for (Elem a = 0; a < m.n_; ++a) {
            m.add_[0 * m.n_ + a] = a;  // 0 + a = a
            m.add_[a * m.n_ + 0] = a;
        }
        for (const auto& [ab, sum] : add_rows) {
            Elem a = lookup(ab.first), b = lookup(ab.second), s = lookup(sum);
            m.add_[a * m.n_ + b] = s;
            m.add_[b * m.n_ + a] = s;
        }
        for (Elem a = 0; a < m.n_; ++a)
            for (Elem b = 0; b < m.n_; ++b)
                if (m.add_[a * m.n_ + b] == m.n_)
                    throw InvalidModule("addition row missing for (" + ordered[a] + ", " + ordered[b] + ")");

        // generator action (id on scalars): a dense map Elem -> Elem
        std::vector<Elem> gen_act(m.n_);
        if (c.kind() == CarrierKind::ZMod) {
            for (Elem a = 0; a < m.n_; ++a) gen_act[a] = a;  // unused
            if (!gen_action.empty()) throw InvalidModule("scalar carriers need no generator action");
        } else {
            std::vector<char> seen(m.n_, 0);
            for (const auto& [from, to] : gen_action) {
                Elem a = lookup(from);
                gen_act[a] = lookup(to);
                seen[a] = 1;
            }
            for (Elem a = 0; a < m.n_; ++a)
                if (!seen[a]) throw InvalidModule("generator action missing for '" + ordered[a] + "'");
        }

        // derive m.r for every carrier element r = sum c_i t^i:
        // m.r = sum_i (m.t^i) repeated c_i times
        m.act_.resize(static_cast<std::size_t>(m.n_) * S);
        for (Elem a = 0; a < m.n_; ++a) {
            for (std::uint64_t r = 0; r < S; ++r) {
                RingElem rv = c.element_at(r);
                Elem acc = 0;
                auto add_times = [&](Elem base, std::uint64_t times) {
                    for (std::uint64_t t = 0; t < times; ++t) acc = m.add_[acc * m.n_ + base];
                };
                if (c.kind() == CarrierKind::ZMod) {
                    add_times(a, std::get<std::uint64_t>(rv.v));
                } else {
                    const auto& coeffs = std::get<std::vector<std::uint64_t>>(rv.v);
                    Elem power = a;  // a . t^i
                    for (std::size_t i = 0; i < coeffs.size(); ++i) {
                        if (i > 0) power = gen_act[power];
                        add_times(power, coeffs[i]);
                    }
                }
                m.act_[a * S + r] = acc;
            }
        }
        m.finish_build();
        return m;
    }

    // M/N with the inherited structure.
    FiniteModule quotient_by(const Submodule& sub) const;

    // The same module viewed over a different twist of the same carrier
    // (the action only involves the carrier, so tables carry over).
    FiniteModule retwisted(const TwistedRing& tw) const {
        if (!(tw.carrier() == tw_->carrier())) throw CarrierMismatch("retwisted needs the same carrier");
        FiniteModule m = *this;
        m.tw_.emplace(tw);
        return m;
    }

    Elem size() const { return n_; }
    const TwistedRing& twist() const { return *tw_; }
    const std::string& name_of(Elem a) const { return names_[a]; }
    const ModuleValidation& validation() const { return validation_; }

    Elem zero() const { return 0; }
    bool is_zero(Elem a) const { return a == 0; }
    Elem add(Elem a, Elem b) const { return add_[static_cast<std::size_t>(a) * n_ + b]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem act_idx(Elem a, std::uint64_t r) const { return act_[static_cast<std::size_t>(a) * ring_size_ + r]; }
    Elem act(Elem a, const RingElem& r) const { return act_idx(a, tw_->carrier().index_of(r)); }
    std::uint64_t ring_size() const { return ring_size_; }

    std::optional<Elem> find(const std::string& name) const {
        for (Elem i = 0; i < n_; ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    // Quotient-of-ring modules remember the projection R -> M.
    bool has_projection() const { return !proj_.empty(); }

    Elem project(const RingElem& r) const {
        if (proj_.empty()) throw InvalidModule("module has no projection from the carrier");
        return static_cast<Elem>(proj_[tw_->carrier().index_of(r)]);
    }

    // InvPoly coefficient-module interface
    std::string name(Elem a) const { return names_[a]; }

  private:
    friend class Submodule;

    FiniteModule() = default;

    void finish_build() {
        ring_size_ = tw_->carrier().size();
        neg_.resize(n_);
        for (Elem a = 0; a < n_; ++a) {
            bool found = false;
            for (Elem b = 0; b < n_; ++b)
                if (add(a, b) == 0) {
                    neg_[a] = b;
                    found = true;
                    break;
                }
            if (!found) throw InvalidModule("element '" + names_[a] + "' has no additive inverse");
        }
        validate_axioms();
        if (!validation_.all_pass()) {
            for (const auto& c : validation_.checks)
                if (!c.pass) throw InvalidModule("module axiom failed: " + c.law + " at " + c.witness);
        }
    }

    void validate_axioms() {
        const Carrier& c = tw_->carrier();
        std::uint64_t S = ring_size_;
        ModuleValidation v;
        std::mt19937_64 rng(2024);
        auto sample_flag = [&](std::uint64_t total) {
            if (total > exhaustive_budget) v.sampled = true;
            return total > exhaustive_budget;
        };

        {  // abelian group laws
            LawCheck chk{"(M,+) is an abelian group", true, ""};
            std::uint64_t total = static_cast<std::uint64_t>(n_) * n_ * n_;
            bool sampled = sample_flag(total);
            std::uint64_t iters = sampled ? 2000 : total;
            for (std::uint64_t it = 0; it < iters && chk.pass; ++it) {
                Elem a, b, d;
                if (sampled) {
                    a = static_cast<Elem>(rng() % n_);
                    b = static_cast<Elem>(rng() % n_);
                    d = static_cast<Elem>(rng() % n_);
                } else {
                    a = static_cast<Elem>(it / (static_cast<std::uint64_t>(n_) * n_));
                    b = static_cast<Elem>((it / n_) % n_);
                    d = static_cast<Elem>(it % n_);
                }
                if (add(add(a, b), d) != add(a, add(b, d)) || add(a, b) != add(b, a))
                    chk = {chk.law, false, "(" + names_[a] + ", " + names_[b] + ", " + names_[d] + ")"};
            }
            v.checks.push_back(chk);
        }
        {  // m . 1 = m
            LawCheck chk{"m . 1 = m", true, ""};
            std::uint64_t one = c.index_of(c.one());
            for (Elem a = 0; a < n_ && chk.pass; ++a)
                if (act_idx(a, one) != a) chk = {chk.law, false, names_[a]};
            v.checks.push_back(chk);
        }
        {  // m(r+s) = mr + ms and m(rs) = (mr)s
            LawCheck lin{"m(r+s) = mr + ms", true, ""};
            LawCheck assoc{"m(rs) = (mr)s", true, ""};
            std::uint64_t total = static_cast<std::uint64_t>(n_) * S * S;
            bool sampled = sample_flag(total);
            std::uint64_t iters = sampled ? 2000 : total;
            for (std::uint64_t it = 0; it < iters && (lin.pass || assoc.pass); ++it) {
                Elem a;
                std::uint64_t r, s;
                if (sampled) {
                    a = static_cast<Elem>(rng() % n_);
                    r = rng() % S;
                    s = rng() % S;
                } else {
                    a = static_cast<Elem>(it / (S * S));
                    r = (it / S) % S;
                    s = it % S;
                }
                RingElem rv = c.element_at(r), sv = c.element_at(s);
                std::string w =
                    "(" + names_[a] + ", " + c.to_string(rv) + ", " + c.to_string(sv) + ")";
                if (lin.pass && act_idx(a, c.index_of(c.add(rv, sv))) != add(act_idx(a, r), act_idx(a, s)))
                    lin = {lin.law, false, w};
                if (assoc.pass && act_idx(a, c.index_of(c.mul(rv, sv))) != act_idx(act_idx(a, r), s))
                    assoc = {assoc.law, false, w};
            }
            v.checks.push_back(lin);
            v.checks.push_back(assoc);
        }
        {  // (m+m')r = mr + m'r
            LawCheck chk{"(m+m')r = mr + m'r", true, ""};
            std::uint64_t total = static_cast<std::uint64_t>(n_) * n_ * S;
            bool sampled = sample_flag(total);
            std::uint64_t iters = sampled ? 2000 : total;
            for (std::uint64_t it = 0; it < iters && chk.pass; ++it) {
                Elem a, b;
                std::uint64_t r;
                if (sampled) {
                    a = static_cast<Elem>(rng() % n_);
                    b = static_cast<Elem>(rng() % n_);
                    r = rng() % S;
                } else {
                    a = static_cast<Elem>(it / (static_cast<std::uint64_t>(n_) * S));
                    b = static_cast<Elem>((it / S) % n_);
                    r = it % S;
                }
                if (act_idx(add(a, b), r) != add(act_idx(a, r), act_idx(b, r)))
                    chk = {chk.law, false,
                           "(" + names_[a] + ", " + names_[b] + ", " + c.to_string(c.element_at(r)) + ")"};
            }
            v.checks.push_back(chk);
        }
        validation_ = std::move(v);
    }

    std::optional<TwistedRing> tw_;
    Elem n_ = 0;
    std::uint64_t ring_size_ = 0;
    std::vector<std::string> names_;
    std::vector<Elem> add_, neg_, act_;
    std::vector<std::int64_t> proj_;  // carrier index -> element id (quotients of R)
    ModuleValidation validation_;
};

// A submodule as a sorted id set; always contains 0.
class Submodule {
  public:
    Submodule() = default;
    explicit Submodule(std::vector<FiniteModule::Elem> sorted_elems) : elems_(std::move(sorted_elems)) {}

    const std::vector<FiniteModule::Elem>& elems() const { return elems_; }
    std::size_t size() const { return elems_.size(); }

    bool contains(FiniteModule::Elem a) const {
        return std::binary_search(elems_.begin(), elems_.end(), a);
    }

    bool contains_all(const Submodule& o) const {
        return std::includes(elems_.begin(), elems_.end(), o.elems_.begin(), o.elems_.end());
    }

    std::string to_string(const FiniteModule& m) const {
        std::string s = "{";
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (i) s += ", ";
            s += m.name_of(elems_[i]);
        }
        return s + "}";
    }

    friend bool operator==(const Submodule& a, const Submodule& b) { return a.elems_ == b.elems_; }
    friend bool operator<(const Submodule& a, const Submodule& b) {
        if (a.elems_.size() != b.elems_.size()) return a.elems_.size() < b.elems_.size();
        return a.elems_ < b.elems_;
    }

  private:
    std::vector<FiniteModule::Elem> elems_;
};

// Smallest submodule containing gens: add/neg/action closure.
inline Submodule submodule_closure(const FiniteModule& m, const std::vector<FiniteModule::Elem>& gens) {
    std::vector<char> in(m.size(), 0);
    std::vector<FiniteModule::Elem> work, members;
    auto push = [&](FiniteModule::Elem e) {
        if (!in[e]) {
            in[e] = 1;
            work.push_back(e);
        }
    };
    push(0);
    for (auto g : gens) push(g);
    while (!work.empty()) {
        FiniteModule::Elem a = work.back();
        work.pop_back();
        members.clear();
        for (FiniteModule::Elem e = 0; e < m.size(); ++e)
            if (in[e]) members.push_back(e);
        for (auto b : members) push(m.add(a, b));
        push(m.neg(a));
        for (std::uint64_t r = 0; r < m.ring_size(); ++r) push(m.act_idx(a, r));
    }
    std::vector<FiniteModule::Elem> out;
    for (FiniteModule::Elem e = 0; e < m.size(); ++e)
        if (in[e]) out.push_back(e);
    return Submodule(std::move(out));
}

// Sum of two submodules {a + b}; closed because both operands are.
inline Submodule join(const FiniteModule& m, const Submodule& a, const Submodule& b) {
    std::vector<char> in(m.size(), 0);
    for (auto x : a.elems())
        for (auto y : b.elems()) in[m.add(x, y)] = 1;
    std::vector<FiniteModule::Elem> out;
    for (FiniteModule::Elem e = 0; e < m.size(); ++e)
        if (in[e]) out.push_back(e);
    return Submodule(std::move(out));
}

inline Submodule intersect(const Submodule& a, const Submodule& b) {
    std::vector<FiniteModule::Elem> out;
    std::set_intersection(a.elems().begin(), a.elems().end(), b.elems().begin(), b.elems().end(),
                          std::back_inserter(out));
    return Submodule(std::move(out));
}

// The full lattice: cyclic submodules saturated under pairwise joins.
inline std::vector<Submodule> all_submodules(const FiniteModule& m, std::size_t cap = 1u << 16) {
    std::set<Submodule> seen;
    std::vector<Submodule> work;
    auto push = [&](Submodule s) {
        if (seen.insert(s).second) {
            if (seen.size() > cap) throw LatticeTooLarge("submodule lattice exceeds cap");
            work.push_back(std::move(s));
        }
    };
    for (FiniteModule::Elem e = 0; e < m.size(); ++e) push(submodule_closure(m, {e}));
    while (!work.empty()) {
        Submodule s = std::move(work.back());
        work.pop_back();
        std::vector<Submodule> snapshot(seen.begin(), seen.end());
        for (const auto& t : snapshot) push(join(m, s, t));
    }
    return {seen.begin(), seen.end()};
}

inline FiniteModule FiniteModule::quotient_by(const Submodule& sub) const {
    // cosets with least-id representatives
    std::vector<std::int64_t> coset_of(n_, -1);
    std::vector<Elem> reps;
    for (Elem v = 0; v < n_; ++v) {
        if (coset_of[v] >= 0) continue;
        Elem id = static_cast<Elem>(reps.size());
        reps.push_back(v);
        for (auto s : sub.elems()) coset_of[add(v, s)] = id;
    }
    FiniteModule q;
    q.tw_ = tw_;
    q.n_ = static_cast<Elem>(reps.size());
    for (Elem rep : reps) q.names_.push_back("[" + names_[rep] + "]");
    q.add_.resize(static_cast<std::size_t>(q.n_) * q.n_);
    for (Elem a = 0; a < q.n_; ++a)
        for (Elem b = 0; b < q.n_; ++b) q.add_[a * q.n_ + b] = static_cast<Elem>(coset_of[add(reps[a], reps[b])]);
    q.act_.resize(static_cast<std::size_t>(q.n_) * ring_size_);
    for (Elem a = 0; a < q.n_; ++a)
        for (std::uint64_t r = 0; r < ring_size_; ++r)
            q.act_[a * ring_size_ + r] = static_cast<Elem>(coset_of[act_idx(reps[a], r)]);
    q.finish_build();
    return q;
}

// --- annihilators ----------------------------------------------------------

// A right ideal of the finite carrier, stored as its full element set
// (sorted carrier indices).
struct IdealSet {
    std::vector<std::uint64_t> elems;

    bool contains(std::uint64_t idx) const { return std::binary_search(elems.begin(), elems.end(), idx); }
    std::size_t size() const { return elems.size(); }

    std::string to_string(const Carrier& c) const {
        std::string s = "(";
        for (std::size_t i = 0; i < elems.size(); ++i) {
            if (i) s += ", ";
            s += c.to_string(c.element_at(elems[i]));
        }
        return s + ")";
    }

    friend bool operator==(const IdealSet& a, const IdealSet& b) { return a.elems == b.elems; }
    friend bool operator<(const IdealSet& a, const IdealSet& b) { return a.elems < b.elems; }
};

// ann(M) = {r : M r = 0}
inline IdealSet annihilator(const FiniteModule& m) {
    IdealSet out;
    for (std::uint64_t r = 0; r < m.ring_size(); ++r) {
        bool kills = true;
        for (FiniteModule::Elem a = 0; a < m.size() && kills; ++a) kills = m.act_idx(a, r) == 0;
        if (kills) out.elems.push_back(r);
    }
    return out;
}

// ann(M/N) = {r : M r <= N}
inline IdealSet annihilator_of_quotient(const FiniteModule& m, const Submodule& n) {
    IdealSet out;
    for (std::uint64_t r = 0; r < m.ring_size(); ++r) {
        bool into = true;
        for (FiniteModule::Elem a = 0; a < m.size() && into; ++a) into = n.contains(m.act_idx(a, r));
        if (into) out.elems.push_back(r);
    }
    return out;
}

// ann(N) for a submodule N of M
inline IdealSet annihilator_of_submodule(const FiniteModule& m, const Submodule& n) {
    IdealSet out;
    for (std::uint64_t r = 0; r < m.ring_size(); ++r) {
        bool kills = true;
        for (auto a : n.elems()) {
            if (m.act_idx(a, r) != 0) {
                kills = false;
                break;
            }
        }
        if (kills) out.elems.push_back(r);
    }
    return out;
}

// Right-prime criterion over the finite carrier: a R b <= P implies a or b in P.
inline bool is_prime_ideal(const TwistedRing& tw, const IdealSet& p, std::string* witness = nullptr) {
    const Carrier& c = tw.carrier();
    std::uint64_t S = c.size();
    if (S * S * S > (1ull << 24)) throw CapExceeded("carrier too large for exhaustive primality check");
    if (p.size() == S) return false;  // the improper ideal is not prime
    for (std::uint64_t a = 0; a < S; ++a) {
        if (p.contains(a)) continue;
        RingElem av = c.element_at(a);
        for (std::uint64_t b = 0; b < S; ++b) {
            if (p.contains(b)) continue;
            RingElem bv = c.element_at(b);
            bool all_in = true;
            for (std::uint64_t r = 0; r < S && all_in; ++r)
                all_in = p.contains(c.index_of(c.mul(c.mul(av, c.element_at(r)), bv)));
            if (all_in) {
                if (witness)
                    *witness = "a = " + c.to_string(av) + ", b = " + c.to_string(bv) + " with aRb in P";
                return false;
            }
        }
    }
    return true;
}

// --- compatibility checkers ------------------------------------------------

struct CompatResult {
    bool ok = true;
    bool sampled = false;
    std::string witness;  // empty when ok
};

namespace detail {

// sigma and delta as index maps over the carrier enumeration
struct TwistIndexMaps {
    std::vector<std::uint64_t> sigma, delta;

    explicit TwistIndexMaps(const TwistedRing& tw) {
        const Carrier& c = tw.carrier();
        std::uint64_t S = c.size();
        sigma.resize(S);
        delta.resize(S);
        for (std::uint64_t r = 0; r < S; ++r) {
            sigma[r] = c.index_of(tw.sigma(c.element_at(r)));
            delta[r] = c.index_of(tw.delta(c.element_at(r)));
        }
    }
};

template <class Fn>
CompatResult pair_sweep(const FiniteModule& m, Fn&& bad_pair) {
    const Carrier& c = m.twist().carrier();
    std::uint64_t S = m.ring_size();
    std::uint64_t total = static_cast<std::uint64_t>(m.size()) * S;
    CompatResult res;
    if (total <= (1u << 20)) {
        for (FiniteModule::Elem a = 0; a < m.size(); ++a)
            for (std::uint64_t r = 0; r < S; ++r)
                if (bad_pair(a, r)) {
                    res.ok = false;
                    res.witness = "(m = " + m.name_of(a) + ", r = " + c.to_string(c.element_at(r)) + ")";
                    return res;
                }
    } else {
        res.sampled = true;
        std::mt19937_64 rng(4242);
        for (unsigned it = 0; it < 4000; ++it) {
            FiniteModule::Elem a = static_cast<FiniteModule::Elem>(rng() % m.size());
            std::uint64_t r = rng() % S;
            if (bad_pair(a, r)) {
                res.ok = false;
                res.witness = "(m = " + m.name_of(a) + ", r = " + c.to_string(c.element_at(r)) + ")";
                return res;
            }
        }
    }
    return res;
}

}  // namespace detail

// sigma-compatibility of M/N: m r in N iff m sigma(r) in N.  N = {0} (the
// default) checks M itself.
inline CompatResult is_sigma_compatible(const FiniteModule& m, const Submodule* n = nullptr) {
    detail::TwistIndexMaps maps(m.twist());
    auto in_n = [&](FiniteModule::Elem e) { return n ? n->contains(e) : e == 0; };
    return detail::pair_sweep(m, [&](FiniteModule::Elem a, std::uint64_t r) {
        return in_n(m.act_idx(a, r)) != in_n(m.act_idx(a, maps.sigma[r]));
    });
}

// delta-compatibility of M/N: m r in N implies m delta(r) in N.
inline CompatResult is_delta_compatible(const FiniteModule& m, const Submodule* n = nullptr) {
    detail::TwistIndexMaps maps(m.twist());
    auto in_n = [&](FiniteModule::Elem e) { return n ? n->contains(e) : e == 0; };
    return detail::pair_sweep(m, [&](FiniteModule::Elem a, std::uint64_t r) {
        return in_n(m.act_idx(a, r)) && !in_n(m.act_idx(a, maps.delta[r]));
    });
}

inline CompatResult is_compatible(const FiniteModule& m, const Submodule* n = nullptr) {
    CompatResult s = is_sigma_compatible(m, n);
    if (!s.ok) {
        s.witness = "sigma-compatibility fails at " + s.witness;
        return s;
    }
    CompatResult d = is_delta_compatible(m, n);
    if (!d.ok) d.witness = "delta-compatibility fails at " + d.witness;
    d.sampled = d.sampled || s.sampled;
    return d;
}

struct CompleteCompatResult {
    bool ok = true;
    bool sampled = false;
    std::string witness;                      // inner (m, r) witness
    std::optional<Submodule> bad_submodule;   // quotient where it failed
};

// Completely (sigma, delta)-compatible: every quotient M/N is compatible.
// Both the sigma and the delta part are enforced at every quotient.
inline CompleteCompatResult is_completely_compatible(const FiniteModule& m, std::size_t lattice_cap = 1u << 16) {
    CompleteCompatResult res;
    for (const auto& n : all_submodules(m, lattice_cap)) {
        CompatResult c = is_compatible(m, &n);
        res.sampled = res.sampled || c.sampled;
        if (!c.ok) {
            res.ok = false;
            res.witness = c.witness;
            res.bad_submodule = n;
            return res;
        }
    }
    return res;
}

// --- derived closure properties (consequences of complete compatibility) ---

struct PropertyReport {
    bool precondition_ok = true;
    bool sampled = false;
    std::vector<LawCheck> checks;

    bool all_pass() const {
        if (!precondition_ok) return false;
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// For completely compatible M and a submodule N:
//   (1) ma in N  =>  m sigma^i(a), m delta^j(a) in N
//   (2) mab in N =>  m sigma(delta^j(a)) delta(b), m sigma^i(delta(a)) delta^j(b) in N,
//       in particular m a delta^j(b), m delta^j(a) b in N
//   (3) mab in N or m sigma(a) b in N  =>  m delta(a) b in N
// sigma-powers run over the full orbit (finite), delta-powers until zero.
inline PropertyReport check_derived_closure_properties(const FiniteModule& m, const Submodule& n) {
    PropertyReport rep;
    CompleteCompatResult cc = is_completely_compatible(m);
    if (!cc.ok) {
        rep.precondition_ok = false;
        rep.checks.push_back({"module is completely compatible", false,
                              cc.witness + (cc.bad_submodule ? " in M/" + cc.bad_submodule->to_string(m) : "")});
        return rep;
    }
    const TwistedRing& tw = m.twist();
    const Carrier& c = tw.carrier();
    std::uint64_t S = m.ring_size();

    auto sigma_orbit = [&](const RingElem& a) {
        std::vector<RingElem> orbit{a};
        RingElem cur = tw.sigma(a);
        while (cur != a) {
            if (orbit.size() > S) throw VerificationBug("sigma orbit exceeds carrier size");
            orbit.push_back(cur);
            cur = tw.sigma(cur);
        }
        return orbit;
    };
    auto delta_chain = [&](const RingElem& a) {
        std::vector<RingElem> chain{a};  // delta^0 .. delta^last nonzero, then 0
        RingElem cur = tw.delta(a);
        while (!c.is_zero(cur)) {
            if (chain.size() > tw.nilpotency_cap())
                throw NotLocallyNilpotent("delta chain exceeds the nilpotency cap");
            chain.push_back(cur);
            cur = tw.delta(cur);
        }
        chain.push_back(c.zero());
        return chain;
    };
    auto in_n = [&](FiniteModule::Elem e) { return n.contains(e); };

    LawCheck p1{"ma in N => m sigma^i(a), m delta^j(a) in N", true, ""};
    LawCheck p2{"mab in N => twisted products stay in N", true, ""};
    LawCheck p3{"mab in N or m sigma(a)b in N => m delta(a)b in N", true, ""};

    std::uint64_t total = static_cast<std::uint64_t>(m.size()) * S * S;
    bool sampled = total > FiniteModule::exhaustive_budget;
    rep.sampled = sampled;
    std::mt19937_64 rng(777);
    std::uint64_t iters = sampled ? 4000 : total;

    for (std::uint64_t it = 0; it < iters; ++it) {
        FiniteModule::Elem me;
        std::uint64_t ai, bi;
        if (sampled) {
            me = static_cast<FiniteModule::Elem>(rng() % m.size());
            ai = rng() % S;
            bi = rng() % S;
        } else {
            me = static_cast<FiniteModule::Elem>(it / (S * S));
            ai = (it / S) % S;
            bi = it % S;
        }
        RingElem a = c.element_at(ai), b = c.element_at(bi);
        auto witness = [&]() {
            return "(m = " + m.name_of(me) + ", a = " + c.to_string(a) + ", b = " + c.to_string(b) + ")";
        };

        if (p1.pass && (sampled || bi == 0) && in_n(m.act_idx(me, ai))) {  // (1) depends on (m, a) only
            for (const auto& s : sigma_orbit(a))
                if (!in_n(m.act(me, s))) p1 = {p1.law, false, witness()};
            for (const auto& d : delta_chain(a))
                if (!in_n(m.act(me, d))) p1 = {p1.law, false, witness()};
        }
        RingElem ab = c.mul(a, b);
        bool mab_in = in_n(m.act(me, ab));
        if (p2.pass && mab_in) {
            for (const auto& dja : delta_chain(a))
                if (!in_n(m.act(me, c.mul(tw.sigma(dja), tw.delta(b))))) p2 = {p2.law, false, witness()};
            for (const auto& da_i : sigma_orbit(tw.delta(a)))
                for (const auto& djb : delta_chain(b))
                    if (!in_n(m.act(me, c.mul(da_i, djb)))) p2 = {p2.law, false, witness()};
            for (const auto& djb : delta_chain(b))
                if (!in_n(m.act(me, c.mul(a, djb)))) p2 = {p2.law, false, witness()};
            for (const auto& dja : delta_chain(a))
                if (!in_n(m.act(me, c.mul(dja, b)))) p2 = {p2.law, false, witness()};
        }
        if (p3.pass && (mab_in || in_n(m.act(me, c.mul(tw.sigma(a), b))))) {
            if (!in_n(m.act(me, c.mul(tw.delta(a), b)))) p3 = {p3.law, false, witness()};
        }
    }
    rep.checks.push_back(p1);
    rep.checks.push_back(p2);
    rep.checks.push_back(p3);
    return rep;
}

// --- prime / coprime / Bass -------------------------------------------------

// Prime: ann(M) = ann(N) for every nonzero submodule N.
inline CompatResult is_prime_module(const FiniteModule& m, std::size_t lattice_cap = 1u << 16) {
    if (m.size() <= 1) throw ZeroModule("prime modules must be nonzero");
    IdealSet ann_m = annihilator(m);
    CompatResult res;
    for (const auto& n : all_submodules(m, lattice_cap)) {
        if (n.size() <= 1) continue;
        if (annihilator_of_submodule(m, n) != ann_m) {
            res.ok = false;
            res.witness = "ann differs on submodule " + n.to_string(m);
            return res;
        }
    }
    return res;
}

// Coprime: ann(M) = ann(M/Q) for every proper submodule Q.
inline CompatResult is_coprime_module(const FiniteModule& m, std::size_t lattice_cap = 1u << 16) {
    if (m.size() <= 1) throw ZeroModule("coprime modules must be nonzero");
    IdealSet ann_m = annihilator(m);
    CompatResult res;
    for (const auto& q : all_submodules(m, lattice_cap)) {
        if (q.size() == m.size()) continue;
        if (annihilator_of_quotient(m, q) != ann_m) {
            res.ok = false;
            res.witness = "ann differs on quotient M/" + q.to_string(m);
            return res;
        }
    }
    return res;
}

// Every proper submodule sits inside a maximal one; constructively true for
// finite modules, verified by inspecting the lattice.
inline bool is_bass(const FiniteModule& m, std::size_t lattice_cap = 1u << 16) {
    if (m.size() <= 1) return true;  // vacuous
    std::vector<Submodule> lattice = all_submodules(m, lattice_cap);
    std::vector<Submodule> maximal;
    for (const auto& a : lattice) {
        if (a.size() == m.size()) continue;
        bool is_max = true;
        for (const auto& b : lattice)
            if (b.size() != m.size() && b.size() > a.size() && b.contains_all(a)) {
                is_max = false;
                break;
            }
        if (is_max) maximal.push_back(a);
    }
    for (const auto& n : lattice) {
        if (n.size() == m.size()) continue;
        bool covered = false;
        for (const auto& mx : maximal)
            if (mx.contains_all(n)) {
                covered = true;
                break;
            }
        if (!covered) return false;
    }
    return true;
}

}  // namespace orepoly
