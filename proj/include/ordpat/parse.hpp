// Text notation for ordinal terms.
//
//   ordinal := sum
//   sum     := term ("+" term)*
//   term    := atom ("*" nat)?
//   atom    := "0" | "w^" atom | "k[" ordinal "," ordinal "]" | "v[" ordinal "]"
//            | "r" | "a" | "(" ordinal ")"
//
// k[x] abbreviates k[r,x].  The printer emits a canonical spelling that
// re-parses to an equal term.
#pragma once

#include <cctype>
#include <cstddef>
#include <string>

#include "term.hpp"

namespace ordpat {

struct ParseError : Error {
    ParseError(const std::string& w, std::size_t pos)
        : Error("ParseError", w + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

namespace detail {

inline std::string atom_str(const Atom& a);

inline std::string print_sum(const Term& t) {
    if (t.is_zero()) return "0";
    std::string out;
    for (const auto& m : t.monomials()) {
        if (!out.empty()) out += "+";
        out += atom_str(m.atom);
        if (m.coeff != 1) out += "*" + std::to_string(m.coeff);
    }
    return out;
}

inline std::string atom_str(const Atom& a) {
    switch (a.kind) {
        case AtomKind::Rho: return "r";
        case AtomKind::Alpha: return "a";
        case AtomKind::OmegaPow: {
            const Term& e = *a.arg;
            if (e.is_zero()) return "w^0";
            if (e.monomials().size() == 1 && e.monomials().front().coeff == 1)
                return "w^" + atom_str(e.monomials().front().atom);
            return "w^(" + print_sum(e) + ")";
        }
        case AtomKind::Kappa:
            if (a.level == Level::Rho) return "k[" + print_sum(*a.arg) + "]";
            return "k[a," + print_sum(*a.arg) + "]";
        case AtomKind::Nu: return "v[" + print_sum(*a.arg) + "]";
    }
    return "?";
}

class Parser {
  public:
    explicit Parser(const std::string& s) : s_(s) {}

    Term parse_all() {
        Term t = parse_sum();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("trailing input", pos_);
        return t;
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    std::uint64_t parse_nat() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw ParseError("expected a natural number", pos_);
        std::uint64_t n = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            n = n * 10 + static_cast<std::uint64_t>(s_[pos_++] - '0');
        return n;
    }

    Term parse_sum() {
        Term t = parse_term();
        while (eat('+')) {
            Term next = parse_term();
            auto ms = t.monomials();
            ms.insert(ms.end(), next.monomials().begin(), next.monomials().end());
            t = Term{std::move(ms)};
        }
        return t;
    }

    // Raw monomial list; normalization happens in parse_term's caller via
    // ordpat::parse.
    Term parse_term() {
        Term a = parse_atom();
        if (eat('*')) {
            std::uint64_t n = parse_nat();
            if (n == 0) return zero();
            // n-fold repetition; normalization folds it into ordinal product
            // by a natural (handles parenthesized sums correctly).
            std::vector<Monomial> ms;
            for (std::uint64_t i = 0; i < n; ++i)
                ms.insert(ms.end(), a.monomials().begin(), a.monomials().end());
            return Term{std::move(ms)};
        }
        return a;
    }

    Term raw_atom(AtomKind k, Level lv, Term arg) {
        return atom_term(Atom{k, lv, std::make_shared<const Term>(std::move(arg))});
    }

    Term parse_atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '0') { ++pos_; return zero(); }
        if (c == 'r') { ++pos_; return rho_term(); }
        if (c == 'a') { ++pos_; return alpha_term(); }
        if (c == '(') {
            ++pos_;
            Term t = parse_sum();
            expect(')');
            return t;
        }
        if (c == 'w') {
            ++pos_;
            expect('^');
            return raw_atom(AtomKind::OmegaPow, Level::Rho, parse_atom());
        }
        if (c == 'v') {
            ++pos_;
            expect('[');
            Term x = parse_sum();
            expect(']');
            return raw_atom(AtomKind::Nu, Level::Rho, std::move(x));
        }
        if (c == 'k') {
            ++pos_;
            expect('[');
            Term first = parse_sum();
            if (eat(',')) {
                Term idx = parse_sum();
                expect(']');
                Level lv;
                if (first == rho_term()) lv = Level::Rho;
                else if (first == alpha_term()) lv = Level::Alpha;
                else throw ParseError("kappa level must be r or a", pos_);
                return raw_atom(AtomKind::Kappa, lv, std::move(idx));
            }
            expect(']');
            return raw_atom(AtomKind::Kappa, Level::Rho, std::move(first));
        }
        throw ParseError("unexpected character", pos_);
    }
};

}  // namespace detail

inline std::string to_string(const Term& t) { return detail::print_sum(t); }

inline Term parse(const std::string& s, const TermBounds& bounds = {}) {
    return normalize(detail::Parser(s).parse_all(), bounds);
}

}  // namespace ordpat
