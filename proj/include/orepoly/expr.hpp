#pragma once

// Expression parsing for algebra elements.
//
// Grammar (whitespace-insensitive):
//
//   expr    := term (('+' | '-') term)*
//   term    := factor ('*' factor)*          -- noncommutative, left-assoc
//   factor  := atom ['^' NAT]
//   atom    := '-' factor | NAT ['/' NAT] | SYMBOL | '(' expr ')'
//
// Multiplication is always explicit; juxtaposition is not accepted.  The
// symbols in scope are the carrier generator and the Ore variable.  The
// rational literal NAT/NAT exists so that printed elements over the
// rationals (and scalar parameters like 1/2) round-trip exactly.
//
// Inverse polynomials use the extension  invterm := coeff ['*' VAR '^' '-' NAT]
// | VAR '^' '-' NAT, where coeff is a factor chain (default module R) or a
// module element name (finite module fixtures).

#include <cctype>
#include <string>
#include <vector>

#include "orepoly/finite_module.hpp"
#include "orepoly/inv_poly.hpp"

namespace orepoly {

namespace detail {

struct Token {
    enum Kind { Number, Symbol, Plus, Minus, Star, Caret, Slash, LParen, RParen, End } kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::Number, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Token::Symbol, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        Token::Kind k;
        switch (c) {
            case '+': k = Token::Plus; break;
            case '-': k = Token::Minus; break;
            case '*': k = Token::Star; break;
            case '^': k = Token::Caret; break;
            case '/': k = Token::Slash; break;
            case '(': k = Token::LParen; break;
            case ')': k = Token::RParen; break;
            default: throw ParseError(i, std::string("unexpected character '") + c + "'");
        }
        out.push_back({k, std::string(1, c), i});
        ++i;
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

class ExprParser {
  public:
    ExprParser(const TwistedRing& tw, const std::string& text, bool allow_ore_var)
        : tw_(tw), toks_(tokenize(text)), allow_ore_var_(allow_ore_var) {}

    SkewPoly parse() {
        SkewPoly e = expr();
        expect(Token::End, "end of input");
        return e;
    }

  private:
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }
    void expect(Token::Kind k, const std::string& what) {
        if (peek().kind != k) throw ParseError(peek().pos, "expected " + what);
        ++pos_;
    }

    SkewPoly expr() {
        SkewPoly acc = term();
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            bool minus = next().kind == Token::Minus;
            SkewPoly rhs = term();
            acc = minus ? sub(acc, rhs) : add(acc, rhs);
        }
        return acc;
    }

    SkewPoly term() {
        SkewPoly acc = factor();
        while (peek().kind == Token::Star) {
            next();
            acc = mul(acc, factor());
        }
        return acc;
    }

    SkewPoly factor() {
        SkewPoly base = atom();
        if (peek().kind == Token::Caret) {
            next();
            if (peek().kind != Token::Number)
                throw ParseError(peek().pos, "expected a nonnegative integer exponent");
            unsigned long e = std::stoul(next().text);
            return pow(base, static_cast<unsigned>(e));
        }
        return base;
    }

    SkewPoly atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Token::Minus:
                // unary minus binds looser than '^': -x^4 = -(x^4)
                next();
                return neg(factor());
            case Token::Number: {
                std::size_t at = t.pos;
                long long num = std::stoll(next().text);
                if (peek().kind == Token::Slash) {
                    next();
                    if (peek().kind != Token::Number)
                        throw ParseError(peek().pos, "expected an integer denominator");
                    long long den = std::stoll(next().text);
                    if (den == 0) throw ParseError(peek().pos, "zero denominator");
                    try {
                        return SkewPoly::constant(tw_, tw_.carrier().from_rat(Rat(num, den)));
                    } catch (const NotInvertible&) {
                        throw ParseError(at, "denominator is not invertible in " + tw_.carrier().describe());
                    }
                }
                return SkewPoly::constant(tw_, tw_.carrier().from_int(num));
            }
            case Token::Symbol: {
                Token s = next();
                if (s.text == tw_.carrier().var())
                    return SkewPoly::constant(tw_, tw_.carrier().gen());
                if (s.text == tw_.ore_var()) {
                    if (!allow_ore_var_)
                        throw ParseError(s.pos, "the Ore variable is not allowed in this context");
                    return SkewPoly::variable(tw_);
                }
                throw ParseError(s.pos, "unknown symbol '" + s.text + "'");
            }
            case Token::LParen: {
                next();
                SkewPoly e = expr();
                expect(Token::RParen, "')'");
                return e;
            }
            default:
                throw ParseError(t.pos, "expected a value");
        }
    }

    const TwistedRing& tw_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    bool allow_ore_var_;
};

}  // namespace detail

// The normal form of the denoted element of A.
inline SkewPoly parse_expr(const TwistedRing& tw, const std::string& text) {
    return detail::ExprParser(tw, text, true).parse();
}

// A carrier element (the Ore variable is rejected).
inline RingElem parse_carrier_elem(const TwistedRing& tw, const std::string& text) {
    SkewPoly p = detail::ExprParser(tw, text, false).parse();
    if (p.degree() > 0) throw ParseError(0, "expected a coefficient-ring element");
    return p.coeff(0);
}

namespace detail {

// Cuts the coefficient slice of one inverse-polynomial term: everything up
// to a top-level '+'/'-' or the '*' that precedes the Ore variable.
inline std::string coefficient_slice(const std::vector<Token>& toks, std::size_t& pos,
                                     const std::string& text, const std::string& var) {
    std::size_t start = toks[pos].pos;
    int parens = 0;
    std::size_t p = pos;
    while (toks[p].kind != Token::End) {
        if (toks[p].kind == Token::LParen) ++parens;
        if (toks[p].kind == Token::RParen) --parens;
        if (parens == 0 && p > pos && (toks[p].kind == Token::Plus || toks[p].kind == Token::Minus)) break;
        if (parens == 0 && toks[p].kind == Token::Star && toks[p + 1].kind == Token::Symbol &&
            toks[p + 1].text == var)
            break;
        ++p;
    }
    std::size_t end = toks[p].pos;
    if (end <= start) throw ParseError(start, "expected a coefficient");
    pos = p;
    return text.substr(start, end - start);
}

// Inverse polynomial parser, generic over the coefficient module.  CoeffFn
// parses one coefficient starting at token position `pos`; UnitFn supplies
// the coefficient of a bare inverse power.
template <class M, class CoeffFn, class UnitFn>
InvPoly<M> parse_inv_impl(const M& mod, const std::string& text, CoeffFn&& parse_coeff, UnitFn&& unit) {
    const std::string& var = mod.twist().ore_var();
    std::vector<Token> toks = tokenize(text);
    std::size_t pos = 0;
    InvPoly<M> out;
    bool first = true;
    if (toks[pos].kind == Token::End) throw ParseError(0, "empty inverse polynomial");
    while (toks[pos].kind != Token::End) {
        bool negate = false;
        if (toks[pos].kind == Token::Plus && !first) {
            ++pos;
        } else if (toks[pos].kind == Token::Minus) {
            negate = true;
            ++pos;
        } else if (!first) {
            throw ParseError(toks[pos].pos, "expected '+' or '-'");
        }
        first = false;

        typename M::Elem coeff;
        bool have_var = false;
        unsigned depth = 0;
        if (toks[pos].kind == Token::Symbol && toks[pos].text == var) {
            coeff = unit();
        } else {
            coeff = parse_coeff(toks, pos);
            if (toks[pos].kind == Token::Star && toks[pos + 1].kind == Token::Symbol &&
                toks[pos + 1].text == var)
                ++pos;  // consume the '*' before the variable
        }
        if (toks[pos].kind == Token::Symbol && toks[pos].text == var) {
            have_var = true;
            ++pos;
        }
        if (have_var) {
            if (toks[pos].kind != Token::Caret)
                throw ParseError(toks[pos].pos, "inverse powers are written VAR^-K");
            ++pos;
            if (toks[pos].kind != Token::Minus)
                throw ParseError(toks[pos].pos, "inverse powers are written VAR^-K");
            ++pos;
            if (toks[pos].kind != Token::Number) throw ParseError(toks[pos].pos, "expected an exponent");
            depth = static_cast<unsigned>(std::stoul(toks[pos].text));
            ++pos;
        }
        if (negate) coeff = mod.neg(coeff);
        out.add_to_coeff(mod, depth, coeff);
    }
    return out;
}

}  // namespace detail

// Inverse polynomial with coefficients in R (the default module).
inline InvPoly<RingModule> parse_inv_poly(const RingModule& mod, const std::string& text) {
    const std::string& var = mod.twist().ore_var();
    return detail::parse_inv_impl(
        mod, text,
        [&](const std::vector<detail::Token>& toks, std::size_t& pos) {
            return parse_carrier_elem(mod.twist(), detail::coefficient_slice(toks, pos, text, var));
        },
        [&] { return mod.twist().carrier().one(); });
}

// Inverse polynomial with coefficients in a finite module: quotient modules
// read coefficients as carrier expressions through the projection, table
// modules read element names.
inline InvPoly<FiniteModule> parse_inv_poly(const FiniteModule& mod, const std::string& text) {
    const std::string& var = mod.twist().ore_var();
    if (mod.has_projection()) {
        return detail::parse_inv_impl(
            mod, text,
            [&](const std::vector<detail::Token>& toks, std::size_t& pos) {
                return mod.project(
                    parse_carrier_elem(mod.twist(), detail::coefficient_slice(toks, pos, text, var)));
            },
            [&] { return mod.project(mod.twist().carrier().one()); });
    }
    return detail::parse_inv_impl(
        mod, text,
        [&](const std::vector<detail::Token>& toks, std::size_t& pos) {
            if (toks[pos].kind != detail::Token::Symbol)
                throw ParseError(toks[pos].pos, "expected a module element name");
            auto id = mod.find(toks[pos].text);
            if (!id) throw ParseError(toks[pos].pos, "unknown module element '" + toks[pos].text + "'");
            ++pos;
            return *id;
        },
        [&]() -> FiniteModule::Elem {
            throw ParseError(0, "a bare inverse power has no meaning for table modules; name an element");
        });
}

}  // namespace orepoly
