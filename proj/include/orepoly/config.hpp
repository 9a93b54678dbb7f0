#pragma once

// Line-oriented sectioned config files for algebras and module fixtures.
//
//   # comment
//   [ring]
//   carrier = fp 5 y          # zmod N | fp P VAR | fptrunc P VAR K | qpoly VAR
//   var = x                   # Ore variable name (default x)
//   cap = 64                  # nilpotency cap (default 64)
//   [twist]
//   sigma = 2*y               # image of the carrier generator (default: identity)
//   sigma_inv = 3*y           # required whenever sigma is given
//   delta = 0                 # image of the generator under delta (default 0)
//   [module]
//   quotient = 2              # right-ideal generators, comma-separated, or:
//   elements = z a b ab       # explicit tables:
//   zero = z
//   add a b = ab              # one line per unordered pair (zero rows implied)
//   act a = b                 # generator action (polynomial carriers only)
//
// Values are expressions over the declared generators.  The twist is
// validated on load; a failing law is a configuration error.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "orepoly/expr.hpp"
#include "orepoly/presets.hpp"

namespace orepoly {

namespace detail {

struct ConfigLine {
    std::string section;
    std::string key;    // first word
    std::string mid;    // words between the key and '=' (table rows)
    std::string value;  // after '='
    std::size_t lineno;
};

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline std::vector<ConfigLine> parse_config_lines(const std::string& text) {
    std::vector<ConfigLine> out;
    std::istringstream in(text);
    std::string raw, section;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        std::string head = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (section.empty()) throw ConfigError("line " + std::to_string(lineno) + ": entry outside any section");
        std::istringstream hs(head);
        std::string key, word, mid;
        hs >> key;
        while (hs >> word) {
            if (!mid.empty()) mid += " ";
            mid += word;
        }
        out.push_back({section, key, mid, value, lineno});
    }
    return out;
}

inline std::vector<std::string> split_words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

inline std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t comma = s.find(',', start);
        if (comma == std::string::npos) {
            std::string part = trim(s.substr(start));
            if (!part.empty()) out.push_back(part);
            break;
        }
        std::string part = trim(s.substr(start, comma - start));
        if (!part.empty()) out.push_back(part);
        start = comma + 1;
    }
    return out;
}

inline Carrier parse_carrier_descriptor(const std::string& text) {
    std::vector<std::string> w = split_words(text);
    auto need = [&](std::size_t n) {
        if (w.size() != n) throw ConfigError("malformed carrier descriptor '" + text + "'");
    };
    try {
        if (!w.empty() && w[0] == "zmod") {
            need(2);
            return Carrier::zmod(std::stoull(w[1]));
        }
        if (!w.empty() && w[0] == "fp") {
            need(3);
            return Carrier::fp_poly(std::stoull(w[1]), w[2]);
        }
        if (!w.empty() && w[0] == "fptrunc") {
            need(4);
            return Carrier::fp_trunc(std::stoull(w[1]), w[2], static_cast<unsigned>(std::stoul(w[3])));
        }
        if (!w.empty() && w[0] == "qpoly") {
            need(2);
            return Carrier::q_poly(w[1]);
        }
    } catch (const InvalidTwist& e) {
        throw ConfigError(std::string("bad carrier: ") + e.what());
    } catch (const std::exception&) {
        throw ConfigError("malformed carrier descriptor '" + text + "'");
    }
    throw ConfigError("unknown carrier kind in '" + text + "'");
}

}  // namespace detail

// The [ring] and [twist] sections as an Algebra.  Throws ConfigError when
// the sections are missing or the twist fails validation.
inline Algebra load_algebra_text(const std::string& text, std::uint64_t seed = 0) {
    auto lines = detail::parse_config_lines(text);
    std::string carrier_text, ore_var = "x", sigma_text, sigma_inv_text, delta_text;
    unsigned cap = 64;
    bool have_ring = false;
    for (const auto& l : lines) {
        if (l.section == "ring") {
            have_ring = true;
            if (l.key == "carrier" && l.mid.empty())
                carrier_text = l.value;
            else if (l.key == "var" && l.mid.empty())
                ore_var = l.value;
            else if (l.key == "cap" && l.mid.empty())
                cap = static_cast<unsigned>(std::stoul(l.value));
            else
                throw ConfigError("line " + std::to_string(l.lineno) + ": unknown [ring] entry");
        } else if (l.section == "twist") {
            if (l.key == "sigma" && l.mid.empty())
                sigma_text = l.value;
            else if (l.key == "sigma_inv" && l.mid.empty())
                sigma_inv_text = l.value;
            else if (l.key == "delta" && l.mid.empty())
                delta_text = l.value;
            else
                throw ConfigError("line " + std::to_string(l.lineno) + ": unknown [twist] entry");
        } else if (l.section != "module") {
            throw ConfigError("line " + std::to_string(l.lineno) + ": unknown section [" + l.section + "]");
        }
    }
    if (!have_ring || carrier_text.empty()) throw ConfigError("config needs a [ring] section with a carrier");
    Carrier carrier = detail::parse_carrier_descriptor(carrier_text);

    auto build_twist = [&]() -> TwistedRing {
        if (carrier.kind() == CarrierKind::ZMod) {
            if (!sigma_text.empty() || !delta_text.empty())
                throw ConfigError("scalar carriers admit only the identity twist");
            return TwistedRing::identity(carrier, ore_var, cap);
        }
        TwistedRing plain = TwistedRing::identity(carrier, ore_var, cap);
        try {
            RingElem sg = sigma_text.empty() ? carrier.gen() : parse_carrier_elem(plain, sigma_text);
            RingElem sig;
            if (sigma_text.empty())
                sig = carrier.gen();
            else if (sigma_inv_text.empty())
                throw ConfigError("sigma_inv is required whenever sigma is given");
            else
                sig = parse_carrier_elem(plain, sigma_inv_text);
            RingElem dg = delta_text.empty() ? carrier.zero() : parse_carrier_elem(plain, delta_text);
            return TwistedRing(carrier, sg, sig, dg, ore_var, cap);
        } catch (const ParseError& e) {
            throw ConfigError(std::string("twist expression: ") + e.what());
        } catch (const InvalidTwist& e) {
            throw ConfigError(e.what());
        }
    };
    Algebra a{"custom", carrier.describe(), build_twist(), {}, {}};
    ValidationReport rep = a.twist.validate(seed);
    if (!rep.all_pass()) {
        std::string msg = "twist fails validation:";
        for (const auto& c : rep.checks)
            if (!c.pass) msg += " [" + c.law + " at " + c.witness + "]";
        throw ConfigError(msg);
    }
    a.relation_checks.push_back({"twist laws validated", true, ""});
    return a;
}

// The [module] section as a FiniteModule over the given algebra.
inline FiniteModule load_module_text(const std::string& text, const TwistedRing& tw) {
    auto lines = detail::parse_config_lines(text);
    std::string quotient_text, elements_text, zero_name;
    std::map<std::pair<std::string, std::string>, std::string> add_rows;
    std::map<std::string, std::string> gen_rows;
    bool have_module = false, have_quotient = false;
    for (const auto& l : lines) {
        if (l.section != "module") continue;
        have_module = true;
        if (l.key == "quotient" && l.mid.empty()) {
            quotient_text = l.value;
            have_quotient = true;
        } else if (l.key == "elements" && l.mid.empty()) {
            elements_text = l.value;
        } else if (l.key == "zero" && l.mid.empty()) {
            zero_name = l.value;
        } else if (l.key == "add") {
            auto parts = detail::split_words(l.mid);
            if (parts.size() != 2)
                throw ConfigError("line " + std::to_string(l.lineno) + ": add rows are 'add A B = C'");
            add_rows[{parts[0], parts[1]}] = l.value;
        } else if (l.key == "act") {
            auto parts = detail::split_words(l.mid);
            if (parts.size() != 1)
                throw ConfigError("line " + std::to_string(l.lineno) + ": act rows are 'act A = B'");
            gen_rows[parts[0]] = l.value;
        } else {
            throw ConfigError("line " + std::to_string(l.lineno) + ": unknown [module] entry");
        }
    }
    if (!have_module) throw ConfigError("no [module] section in the fixture");

    try {
        if (have_quotient) {
            std::vector<RingElem> gens;
            for (const auto& g : detail::split_commas(quotient_text)) gens.push_back(parse_carrier_elem(tw, g));
            return FiniteModule::quotient_of_ring(tw, gens);
        }
        if (elements_text.empty()) throw ConfigError("[module] needs either 'quotient' or 'elements'");
        if (zero_name.empty()) throw ConfigError("[module] table form needs a 'zero' entry");
        return FiniteModule::from_tables(tw, detail::split_words(elements_text), zero_name, add_rows, gen_rows);
    } catch (const ParseError& e) {
        throw ConfigError(std::string("module expression: ") + e.what());
    } catch (const InvalidModule& e) {
        throw ConfigError(e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Algebra load_algebra_file(const std::string& path, std::uint64_t seed = 0) {
    return load_algebra_text(read_file(path), seed);
}

inline FiniteModule load_module_file(const std::string& path, const TwistedRing& tw) {
    return load_module_text(read_file(path), tw);
}

// True when the text contains a [ring] section (a module file can double
// as its own algebra description).
inline bool has_ring_section(const std::string& text) {
    for (const auto& l : detail::parse_config_lines(text))
        if (l.section == "ring") return true;
    return false;
}

}  // namespace orepoly
