#pragma once

// Command-line entry points.
//
//   orepoly SUBCOMMAND [args] [flags]
//
// subcommands: catalog, normalize, mul, ore-swap, finv, act, compat-check,
// ass, att, verify-lemma, verify-theorem, relation-2-4-probe
//
// global flags: --preset NAME, --param K=V, --algebra FILE, --module FILE,
// --submodule "g1, g2", --seed N, --format text|json, --bound K
//
// exit codes: 0 pass, 1 verification or precondition failure, 2 usage or
// parse error, 3 resource cap exceeded.

#include <chrono>
#include <iostream>
#include <optional>

#include "orepoly/config.hpp"
#include "orepoly/primes.hpp"
#include "orepoly/report.hpp"

namespace orepoly {

namespace detail {

struct CliOptions {
    std::string subcommand;
    std::vector<std::string> positional;
    std::optional<std::string> preset_name, algebra_file, module_file, submodule;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 0;
    std::optional<unsigned> bound;
    std::string format = "text";
};

inline CliOptions parse_cli(const std::vector<std::string>& args) {
    CliOptions o;
    std::size_t i = 0;
    auto value = [&](const std::string& flag) {
        if (i + 1 >= args.size()) throw UsageError(flag + " needs a value");
        return args[++i];
    };
    for (; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--preset")
            o.preset_name = value(a);
        else if (a == "--algebra")
            o.algebra_file = value(a);
        else if (a == "--module")
            o.module_file = value(a);
        else if (a == "--submodule")
            o.submodule = value(a);
        else if (a == "--seed")
            o.seed = std::stoull(value(a));
        else if (a == "--bound")
            o.bound = static_cast<unsigned>(std::stoul(value(a)));
        else if (a == "--format") {
            o.format = value(a);
            if (o.format != "text" && o.format != "json") throw UsageError("--format must be text or json");
        } else if (a == "--param") {
            std::string kv = value(a);
            std::size_t eq = kv.find('=');
            if (eq == std::string::npos) throw UsageError("--param expects K=V");
            o.params[kv.substr(0, eq)] = kv.substr(eq + 1);
        } else if (a.rfind("--", 0) == 0) {
            throw UsageError("unknown flag " + a);
        } else if (o.subcommand.empty()) {
            o.subcommand = a;
        } else {
            o.positional.push_back(a);
        }
    }
    if (o.subcommand.empty()) throw UsageError("no subcommand; try 'orepoly catalog'");
    return o;
}

inline Algebra resolve_algebra(const CliOptions& o) {
    if (o.preset_name) return preset(*o.preset_name, o.params);
    if (o.algebra_file) return load_algebra_file(*o.algebra_file, o.seed);
    if (o.module_file) {
        std::string text = read_file(*o.module_file);
        if (has_ring_section(text)) return load_algebra_text(text, o.seed);
    }
    throw UsageError("this command needs an algebra: --preset NAME or --algebra FILE");
}

inline FiniteModule resolve_module(const CliOptions& o, const Algebra& a) {
    if (!o.module_file) throw UsageError("this command needs --module FILE");
    return load_module_file(*o.module_file, a.twist);
}

inline Submodule resolve_submodule(const CliOptions& o, const FiniteModule& m) {
    if (!o.submodule) return submodule_closure(m, {});
    std::vector<FiniteModule::Elem> gens;
    for (const auto& g : split_commas(*o.submodule)) {
        if (m.has_projection()) {
            gens.push_back(m.project(parse_carrier_elem(m.twist(), g)));
        } else {
            auto id = m.find(g);
            if (!id) throw UsageError("unknown module element '" + g + "' in --submodule");
            gens.push_back(*id);
        }
    }
    return submodule_closure(m, gens);
}

inline void need_args(const CliOptions& o, std::size_t n, const std::string& usage) {
    if (o.positional.size() != n) throw UsageError("usage: " + o.subcommand + " " + usage);
}

inline void merge_att_report(ReportEnvelope& env, const AttReport& rep, const std::string& prefix = "") {
    for (const auto& c : rep.checks) env.checks.push_back({prefix + c.law, c.pass, c.witness});
    for (const auto& [k, v] : rep.details) env.note(prefix + k, v);
}

// --- subcommand bodies -------------------------------------------------------

inline void cmd_catalog(const CliOptions&, ReportEnvelope& env) {
    env.algebra = "(catalog)";
    for (const auto& name : preset_names()) {
        Algebra a = preset(name);
        bool ok = true;
        for (const auto& c : a.relation_checks) ok = ok && c.pass;
        env.check(name + ": defining relations verified by mul", ok);
        env.note(name, a.description);
    }
}

inline void cmd_normalize(const CliOptions& o, ReportEnvelope& env) {
    need_args(o, 1, "EXPR");
    Algebra a = resolve_algebra(o);
    env.algebra = a.description;
    SkewPoly f = parse_expr(a.twist, o.positional[0]);
    env.check("parsed and normalized", true);
    env.note("input", o.positional[0]);
    env.note("normal_form", to_string(f));
    env.note("degree", f.degree() == neg_infinity ? "-inf" : std::to_string(f.degree()));
}

inline void cmd_mul(const CliOptions& o, ReportEnvelope& env) {
    need_args(o, 2, "EXPR EXPR");
    Algebra a = resolve_algebra(o);
    env.algebra = a.description;
    SkewPoly f = parse_expr(a.twist, o.positional[0]);
    SkewPoly g = parse_expr(a.twist, o.positional[1]);
    env.check("multiplied in normal form", true);
    env.note("product", to_string(mul(f, g)));
}

inline void cmd_ore_swap(const CliOptions& o, ReportEnvelope& env) {
    need_args(o, 2, "EXPR P");
    Algebra a = resolve_algebra(o);
    env.algebra = a.description;
    SkewPoly f = parse_expr(a.twist, o.positional[0]);
    unsigned p = static_cast<unsigned>(std::stoul(o.positional[1]));
    SkewPoly ap = ore_swap(f, p);  // verifies x^p a = a_p x^p internally
    env.check("swap identity x^p a = a_p x^p verified by mul", true);
    env.note("a_p", to_string(ap));
}

inline void cmd_finv(const CliOptions& o, ReportEnvelope& env) {
    need_args(o, 3, "J I ELEM");
    Algebra a = resolve_algebra(o);
    env.algebra = a.description;
    unsigned j = static_cast<unsigned>(std::stoul(o.positional[0]));
    unsigned i = static_cast<unsigned>(std::stoul(o.positional[1]));
    RingElem r = parse_carrier_elem(a.twist, o.positional[2]);
    RingElem v = f_op(a.twist, j, i, r);
    RingElem w = f_op_word_oracle(a.twist, j, i, r);
    env.check("f_j^i matches the word-enumeration oracle", v == w,
              a.twist.carrier().to_string(v) + " != " + a.twist.carrier().to_string(w));
    env.note("f_" + o.positional[0] + "^" + o.positional[1] + "(" + o.positional[2] + ")",
             a.twist.carrier().to_string(v));
}

inline void cmd_act(const CliOptions& o, ReportEnvelope& env) {
    need_args(o, 2, "INVPOLY EXPR");
    Algebra a = resolve_algebra(o);
    env.algebra = a.description;
    SkewPoly f = parse_expr(a.twist, o.positional[1]);
    if (o.module_file) {
        FiniteModule m = resolve_module(o, a);
        InvPoly<FiniteModule> mp = parse_inv_poly(m, o.positional[0]);
        env.check("acted on the inverse polynomial", true);
        env.note("result", to_string(m, act(m, mp, f)));
    } else {
        RingModule m(a.twist);
        InvPoly<RingModule> mp = parse_inv_poly(m, o.positional[0]);
        env.check("acted on the inverse polynomial", true);
        env.note("result", to_string(m, act(m, mp, f)));
    }
}

inline void cmd_compat_check(const CliOptions& o, ReportEnvelope& env) {
    Algebra a = resolve_algebra(o);
    env.algebra = a.description;
    FiniteModule m = resolve_module(o, a);
    env.note("module size", std::to_string(m.size()));
    env.note("module axioms", m.validation().sampled ? "validated on a seeded sample" : "validated exhaustively");

    CompatResult s = is_sigma_compatible(m);
    env.check("sigma-compatible", s.ok, s.witness);
    CompatResult d = is_delta_compatible(m);
    env.check("delta-compatible", d.ok, d.witness);
    CompleteCompatResult cc = is_completely_compatible(m);
    env.check("completely (sigma, delta)-compatible", cc.ok,
              cc.witness + (cc.bad_submodule ? " at quotient by " + cc.bad_submodule->to_string(m) : ""));
    if (cc.ok) {
        Submodule zero = submodule_closure(m, {});
        PropertyReport pr = check_derived_closure_properties(m, zero);
        for (const auto& c : pr.checks) env.checks.push_back(c);
        if (pr.sampled) env.note("derived properties", "checked on a seeded sample");
    }
    env.note("lattice size", std::to_string(all_submodules(m).size()));
    env.note("ann(M)", annihilator(m).to_string(m.twist().carrier()));
    if (m.size() > 1) {
        env.note("prime module", is_prime_module(m).ok ? "yes" : "no");
        env.note("coprime module", is_coprime_module(m).ok ? "yes" : "no");
    }
    env.note("Bass module", is_bass(m) ? "yes" : "no");
}

inline void cmd_primes(const CliOptions& o, ReportEnvelope& env, PrimeKind kind) {
    Algebra a = resolve_algebra(o);
    env.algebra = a.description;
    FiniteModule m = resolve_module(o, a);
    PrimeSet s = kind == PrimeKind::associated ? ass_primes(m) : att_primes(m);
    const Carrier& c = m.twist().carrier();
    env.check(kind == PrimeKind::associated ? "associated primes computed" : "attached primes computed", true);
    env.note(kind == PrimeKind::associated ? "Ass(M)" : "Att(M)", s.to_string(c));
    for (const auto& e : s.entries) {
        std::string w;
        bool prime = is_prime_ideal(m.twist(), e.ideal, &w);
        env.check("ideal " + e.ideal.to_string(c) + " is right prime", prime, w);
        env.note("witness for " + e.ideal.to_string(c),
                 (kind == PrimeKind::associated ? "prime submodule " : "coprime quotient by ") +
                     e.witness.to_string(m));
    }
}

inline void cmd_verify_lemma(const CliOptions& o, ReportEnvelope& env) {
    Algebra a = resolve_algebra(o);
    env.algebra = a.description;
    FiniteModule m = resolve_module(o, a);
    Submodule n = resolve_submodule(o, m);
    unsigned k = o.bound.value_or(5);
    env.bound = k;
    env.note("N", n.to_string(m));
    merge_att_report(env, verify_annihilator_lemma(m, n, k));
}

inline void cmd_verify_theorem(const CliOptions& o, ReportEnvelope& env) {
    Algebra a = resolve_algebra(o);
    env.algebra = a.description;
    FiniteModule m = resolve_module(o, a);
    unsigned k = o.bound.value_or(3);
    env.bound = k;
    merge_att_report(env, verify_att_inclusion(m, k), "inclusion: ");
    merge_att_report(env, verify_att_equality(m, k), "equality: ");
}

inline void cmd_relation_probe(const CliOptions& o, ReportEnvelope& env) {
    Algebra a = resolve_algebra(o);
    env.algebra = a.description;
    const Carrier& c = a.twist.carrier();
    std::vector<std::pair<RingElem, RingElem>> samples;
    if (c.kind() != CarrierKind::ZMod) samples.emplace_back(c.gen(), c.gen());
    std::mt19937_64 rng(env.seed);
    for (int i = 0; i < 2; ++i) samples.emplace_back(c.random_element(rng, 2), c.random_element(rng, 2));

    unsigned collapsed_hits = 0, indexed_hits = 0, total = 0;
    for (unsigned k = 0; k <= 2; ++k)
        for (unsigned kp = 1; kp <= 2; ++kp)
            for (std::size_t s = 0; s < samples.size(); ++s) {
                Relation24Report rep =
                    check_product_relation_2_4(a.twist, samples[s].first, samples[s].second, k, kp);
                ++total;
                collapsed_hits += rep.collapsed_matches;
                indexed_hits += rep.indexed_matches;
                std::string tag = "k=" + std::to_string(k) + " k'=" + std::to_string(kp) + " sample " +
                                  std::to_string(s);
                env.check(tag + ": some exponent reading matches the direct product",
                          rep.collapsed_matches || rep.indexed_matches,
                          "direct = " + rep.direct);
                std::string which = rep.collapsed_matches && rep.indexed_matches ? "both (collapse)"
                                    : rep.indexed_matches                        ? "-(i+k') only"
                                    : rep.collapsed_matches                      ? "-(k+k') only"
                                                                                 : "neither";
                env.note(tag, which + "; direct = " + rep.direct);
            }
    env.note("summary", "printed exponent -(k+k') matched " + std::to_string(collapsed_hits) + "/" +
                            std::to_string(total) + "; index-dependent exponent -(i+k') matched " +
                            std::to_string(indexed_hits) + "/" + std::to_string(total));
}

}  // namespace detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace detail;
    auto started = std::chrono::steady_clock::now();
    ReportEnvelope env;
    try {
        CliOptions o = parse_cli(args);
        env.command = o.subcommand;
        env.seed = o.seed;
        if (o.bound) env.bound = *o.bound;

        if (o.subcommand == "catalog")
            cmd_catalog(o, env);
        else if (o.subcommand == "normalize")
            cmd_normalize(o, env);
        else if (o.subcommand == "mul")
            cmd_mul(o, env);
        else if (o.subcommand == "ore-swap")
            cmd_ore_swap(o, env);
        else if (o.subcommand == "finv")
            cmd_finv(o, env);
        else if (o.subcommand == "act")
            cmd_act(o, env);
        else if (o.subcommand == "compat-check")
            cmd_compat_check(o, env);
        else if (o.subcommand == "ass")
            cmd_primes(o, env, PrimeKind::associated);
        else if (o.subcommand == "att")
            cmd_primes(o, env, PrimeKind::attached);
        else if (o.subcommand == "verify-lemma")
            cmd_verify_lemma(o, env);
        else if (o.subcommand == "verify-theorem")
            cmd_verify_theorem(o, env);
        else if (o.subcommand == "relation-2-4-probe")
            cmd_relation_probe(o, env);
        else
            throw UsageError("unknown subcommand '" + o.subcommand + "'");

        env.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
        if (o.format == "json")
            out << env.to_json().dump(2) << "\n";
        else
            env.render_text(out);
        return env.passed() ? 0 : 1;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidTwist& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidModule& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapExceeded& e) {
        err << "error (resource cap): " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error (verification): " << e.what() << "\n";
        return 1;
    }
}

}  // namespace orepoly
