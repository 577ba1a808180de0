// Normal-form term algebra for the ordinal notations used throughout the
// engine.  A term is a CNF-style sum of monomials (atom, coefficient); every
// atom denotes an additively indecomposable ordinal, so addition is uniform
// left absorption.
#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ordpat {

struct Error : std::runtime_error {
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const { return name_; }
  private:
    std::string name_;
};

struct MalformedTerm : Error {
    explicit MalformedTerm(const std::string& w) : Error("MalformedTerm", w) {}
};
struct IncomparableAtoms : Error {
    explicit IncomparableAtoms(const std::string& w) : Error("IncomparableAtoms", w) {}
};
struct NotIndecomposable : Error {
    explicit NotIndecomposable(const std::string& w) : Error("NotIndecomposable", w) {}
};
struct OutOfRange : Error {
    explicit OutOfRange(const std::string& w) : Error("OutOfRange", w) {}
};

enum class Cmp { LT, EQ, GT };

enum class Level { Rho, Alpha };

enum class AtomKind : std::uint8_t { OmegaPow, Rho, Alpha, Kappa, Nu };

class Term;

struct Atom {
    AtomKind kind;
    Level level = Level::Rho;            // Kappa only
    std::shared_ptr<const Term> arg;     // OmegaPow, Kappa, Nu

    bool operator==(const Atom& o) const;
};

struct Monomial {
    Atom atom;
    std::uint64_t coeff = 1;
    bool operator==(const Monomial& o) const { return coeff == o.coeff && atom == o.atom; }
};

// Terms are immutable after construction; the empty monomial list is 0.
class Term {
  public:
    Term() = default;
    explicit Term(std::vector<Monomial> ms) : ms_(std::move(ms)) {}

    const std::vector<Monomial>& monomials() const { return ms_; }
    bool is_zero() const { return ms_.empty(); }
    bool operator==(const Term& o) const { return ms_ == o.ms_; }
    bool operator!=(const Term& o) const { return !(*this == o); }

  private:
    std::vector<Monomial> ms_;
};

Cmp compare(const Term& a, const Term& b);
inline bool lt(const Term& a, const Term& b) { return compare(a, b) == Cmp::LT; }
inline bool leq(const Term& a, const Term& b) { return compare(a, b) != Cmp::GT; }

inline bool Atom::operator==(const Atom& o) const {
    if (kind != o.kind) return false;
    if (kind == AtomKind::Kappa && level != o.level) return false;
    if (!arg != !o.arg) return false;
    return !arg || *arg == *o.arg;
}

inline int atom_depth(const Atom& a);

inline int term_depth(const Term& t) {
    int d = 0;
    for (const auto& m : t.monomials()) d = std::max(d, atom_depth(m.atom));
    return d;
}

inline int atom_depth(const Atom& a) {
    switch (a.kind) {
        case AtomKind::Rho:
        case AtomKind::Alpha: return 1;
        default: return 1 + (a.arg ? term_depth(*a.arg) : 0);
    }
}

inline constexpr int kDefaultDepthBound = 4;
inline constexpr std::uint64_t kDefaultCoeffBound = 32;

// ---- constructors (always produce normal forms) ----

inline Term zero() { return Term{}; }

inline Term atom_term(Atom a, std::uint64_t c = 1) {
    return Term{{Monomial{std::move(a), c}}};
}

inline Term rho_term() { return atom_term(Atom{AtomKind::Rho, Level::Rho, nullptr}); }
inline Term alpha_term(std::uint64_t c = 1) {
    return atom_term(Atom{AtomKind::Alpha, Level::Rho, nullptr}, c);
}
inline Term nat_term(std::uint64_t n) {
    if (n == 0) return zero();
    return atom_term(Atom{AtomKind::OmegaPow, Level::Rho, std::make_shared<const Term>()}, n);
}

Term omega_pow(const Term& t);
Term kappa(Level lv, const Term& arg);
Term nu(const Term& xi);

inline Term kappa_alpha() { return kappa(Level::Rho, alpha_term()); }

// Is t a pure base-omega term (built from OmegaPow atoms only, all the way
// down)?  Naturals count; ρ, α, κ, ν do not.
inline bool pure_omega(const Term& t) {
    for (const auto& m : t.monomials()) {
        if (m.atom.kind != AtomKind::OmegaPow) return false;
        if (!pure_omega(*m.atom.arg)) return false;
    }
    return true;
}

inline bool is_finite_nat(const Term& t, std::uint64_t* out = nullptr) {
    if (t.is_zero()) { if (out) *out = 0; return true; }
    const auto& ms = t.monomials();
    if (ms.size() == 1 && ms[0].atom.kind == AtomKind::OmegaPow && ms[0].atom.arg->is_zero()) {
        if (out) *out = ms[0].coeff;
        return true;
    }
    return false;
}

// ---- atom order (axiom table; gaps raise IncomparableAtoms) ----
//
// Adopted chain: base-omega terms < rho < alpha < kappa^rho_g (g >= 1)
//                < kappa^rho_alpha < nu_xi.
// kappa^alpha_b (0 < b < alpha) sits below alpha and is ordered only against
// its own kind and alpha.  rho is assumed infinite, so naturals sit below it;
// omega-towers against rho are refused rather than guessed.

std::string to_string(const Term& t);  // in print.hpp, declared for diagnostics

namespace detail {

inline int atom_class(const Atom& a) {
    switch (a.kind) {
        case AtomKind::OmegaPow: return 0;
        case AtomKind::Rho: return 1;
        case AtomKind::Alpha: return 3;
        case AtomKind::Kappa: return a.level == Level::Alpha ? 2 : 4;
        case AtomKind::Nu: return 5;
    }
    return -1;
}

inline Cmp flip(Cmp c) { return c == Cmp::LT ? Cmp::GT : c == Cmp::GT ? Cmp::LT : Cmp::EQ; }

inline Cmp compare_atoms(const Atom& a, const Atom& b) {
    const int ca = atom_class(a), cb = atom_class(b);
    if (ca == cb) {
        if (a.kind == AtomKind::Rho || a.kind == AtomKind::Alpha) return Cmp::EQ;
        return compare(*a.arg, *b.arg);
    }
    if (ca > cb) return flip(compare_atoms(b, a));
    // ca < cb from here on.
    switch (a.kind) {
        case AtomKind::OmegaPow: {
            // omega^t vs something larger-classed
            if (b.kind == AtomKind::Rho) {
                if (a.arg->is_zero()) return Cmp::LT;  // 1 < rho
                if (pure_omega(*a.arg))
                    throw IncomparableAtoms("w^t vs r depends on the choice of r");
                // t mentions rho or above: w^t > r iff t > r
                Cmp c = compare(*a.arg, rho_term());
                if (c == Cmp::GT) return Cmp::GT;
                if (c == Cmp::LT) return Cmp::LT;  // t < rho, t impure: t < rho => w^t <= w^rho; undecided in general
                throw IncomparableAtoms("w^r vs r depends on whether r is an epsilon number");
            }
            if (b.kind == AtomKind::Alpha) {
                // alpha is an epsilon number: w^t < alpha iff t < alpha
                Cmp c = compare(*a.arg, alpha_term());
                if (c == Cmp::EQ) return Cmp::EQ;  // normalized away, but harmless
                return c;
            }
            if (b.kind == AtomKind::Kappa && b.level == Level::Alpha)
                throw IncomparableAtoms("w^t vs k[a,_] is not determined by the quoted facts");
            // kappa^rho_g (g>=1) and nu atoms lie above alpha, hence above any
            // w^t with t < alpha; otherwise refuse.
            if (compare(*a.arg, alpha_term()) == Cmp::LT) return Cmp::LT;
            throw IncomparableAtoms("w^t vs kappa/nu with t >= alpha");
        }
        case AtomKind::Rho:
            if (b.kind == AtomKind::Kappa && b.level == Level::Alpha)
                throw IncomparableAtoms("r vs k[a,_] is not determined by the quoted facts");
            return Cmp::LT;  // rho < alpha <= kappa^rho, nu
        case AtomKind::Kappa:  // level Alpha, arg strictly between 0 and alpha
            return Cmp::LT;    // k[a,b] < alpha <= everything higher
        case AtomKind::Alpha:
            return Cmp::LT;  // alpha < kappa^rho_g <= nu
        case AtomKind::Nu:
            break;  // unreachable: Nu is the top class
    }
    throw IncomparableAtoms("unordered atom pair");
}

}  // namespace detail

inline Cmp compare(const Term& a, const Term& b) {
    const auto& x = a.monomials();
    const auto& y = b.monomials();
    const std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
        Cmp c = detail::compare_atoms(x[i].atom, y[i].atom);
        if (c != Cmp::EQ) return c;
        if (x[i].coeff != y[i].coeff) return x[i].coeff < y[i].coeff ? Cmp::LT : Cmp::GT;
    }
    if (x.size() == y.size()) return Cmp::EQ;
    return x.size() < y.size() ? Cmp::LT : Cmp::GT;
}

// ---- arithmetic ----

// Left-absorptive ordinal sum.
inline Term add(const Term& a, const Term& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    const Atom& lead = b.monomials().front().atom;
    std::vector<Monomial> out;
    for (const auto& m : a.monomials()) {
        Cmp c = detail::compare_atoms(m.atom, lead);
        if (c == Cmp::GT) { out.push_back(m); continue; }
        if (c == Cmp::EQ) {
            out.push_back(Monomial{m.atom, m.coeff + b.monomials().front().coeff});
            out.insert(out.end(), b.monomials().begin() + 1, b.monomials().end());
            return Term{std::move(out)};
        }
        break;  // absorbed
    }
    out.insert(out.end(), b.monomials().begin(), b.monomials().end());
    return Term{std::move(out)};
}

// Left subtraction: the unique c with b + c == a, defined for b <= a.
inline Term sub_left(const Term& a, const Term& b) {
    if (compare(b, a) == Cmp::GT) throw OutOfRange("sub_left: subtrahend exceeds term");
    const auto& x = a.monomials();
    const auto& y = b.monomials();
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i >= x.size()) throw OutOfRange("sub_left: subtrahend exceeds term");
        Cmp c = detail::compare_atoms(x[i].atom, y[i].atom);
        if (c == Cmp::EQ && x[i].coeff == y[i].coeff) continue;
        std::vector<Monomial> out;
        if (c == Cmp::EQ) {
            // x[i].coeff > y[i].coeff here
            out.push_back(Monomial{x[i].atom, x[i].coeff - y[i].coeff});
            out.insert(out.end(), x.begin() + i + 1, x.end());
        } else {
            out.insert(out.end(), x.begin() + i, x.end());
        }
        return Term{std::move(out)};
    }
    return Term{std::vector<Monomial>(x.begin() + y.size(), x.end())};
}

// a * n for a natural n: scales the leading coefficient.
inline Term mul_nat(const Term& a, std::uint64_t n) {
    if (n == 0 || a.is_zero()) return zero();
    std::vector<Monomial> out = a.monomials();
    out.front().coeff *= n;
    return Term{std::move(out)};
}

inline bool is_indecomposable(const Term& t) {
    return t.monomials().size() == 1 && t.monomials().front().coeff == 1;
}

inline void require_indecomposable(const Term& sigma) {
    if (!is_indecomposable(sigma))
        throw NotIndecomposable("sigma must be a single atom with coefficient 1");
}

// sigma | a, for additively indecomposable sigma: every tail of a must stay
// within sigma's multiples, i.e. the smallest atom of a is >= sigma's atom.
inline bool divides(const Term& sigma, const Term& a) {
    require_indecomposable(sigma);
    if (a.is_zero()) return true;
    return detail::compare_atoms(a.monomials().back().atom, sigma.monomials().front().atom) != Cmp::LT;
}

// Largest multiple of sigma that is <= a (the mu in "a = mu + chi").
inline Term sigma_floor(const Term& sigma, const Term& a) {
    require_indecomposable(sigma);
    const Atom& s = sigma.monomials().front().atom;
    std::vector<Monomial> out;
    for (const auto& m : a.monomials()) {
        if (detail::compare_atoms(m.atom, s) == Cmp::LT) break;
        out.push_back(m);
    }
    return Term{std::move(out)};
}

// The unique chi < sigma with a = mu + chi, sigma | mu.
inline Term rem_sigma(const Term& sigma, const Term& a) {
    require_indecomposable(sigma);
    const Atom& s = sigma.monomials().front().atom;
    const auto& ms = a.monomials();
    std::size_t i = 0;
    while (i < ms.size() && detail::compare_atoms(ms[i].atom, s) != Cmp::LT) ++i;
    return Term{std::vector<Monomial>(ms.begin() + i, ms.end())};
}

// ---- atom constructors with normal-form rewrites ----

inline Term omega_pow(const Term& t) {
    // w^alpha = alpha (alpha is an epsilon number); larger epsilon-like
    // arguments stay symbolic.
    if (!t.is_zero() && t == alpha_term()) return alpha_term();
    return atom_term(Atom{AtomKind::OmegaPow, Level::Rho, std::make_shared<const Term>(t)});
}

inline Term kappa(Level lv, const Term& arg) {
    if (arg.is_zero()) return zero();  // kappa_0 = 0
    if (lv == Level::Alpha) {
        // kappa^alpha_alpha = alpha and kappa^alpha_{alpha*m} = alpha*m
        // (I^alpha_alpha = {alpha} plus the Second Recurrence chain).
        const auto& ms = arg.monomials();
        if (ms.size() == 1 && ms[0].atom.kind == AtomKind::Alpha) return alpha_term(ms[0].coeff);
        if (compare(arg, alpha_term()) == Cmp::GT)
            throw MalformedTerm("k[a,_] supported only for indices <= alpha or alpha-multiples");
    }
    return atom_term(Atom{AtomKind::Kappa, lv, std::make_shared<const Term>(arg)});
}

namespace detail {
// Length, in kappa_alpha units, of the interval J_zeta for zeta with last CNF
// exponent eta: eta + 1.  Used to rewrite nu of successor indices past a
// limit; only finite eta is supported.
inline bool limit_block_units(const Term& zeta_last_exp, std::uint64_t* units) {
    std::uint64_t eta;
    if (!is_finite_nat(zeta_last_exp, &eta)) return false;
    *units = eta + 1;
    return true;
}
}  // namespace detail

inline Term nu(const Term& xi) {
    std::uint64_t m;
    if (is_finite_nat(xi, &m))
        return mul_nat(kappa_alpha(), m + 1);  // nu_m = kappa_alpha * (m+1)
    // Split xi = zeta + m with zeta a limit; rewrite past-limit successors as
    // nu_zeta + kappa_alpha * (eta + m) where eta is zeta's last CNF exponent.
    const auto& ms = xi.monomials();
    if (ms.back().atom.kind == AtomKind::OmegaPow && ms.back().atom.arg->is_zero()) {
        std::uint64_t tail = ms.back().coeff;
        Term zeta{std::vector<Monomial>(ms.begin(), ms.end() - 1)};
        const Atom& last = zeta.monomials().back().atom;
        std::uint64_t units;
        if (last.kind == AtomKind::OmegaPow && detail::limit_block_units(*last.arg, &units))
            return add(nu(zeta), mul_nat(kappa_alpha(), units + tail - 1));
        throw MalformedTerm("nu index successor past an unsupported limit");
    }
    return atom_term(Atom{AtomKind::Nu, Level::Rho, std::make_shared<const Term>(xi)});
}

// index(chi) for chi < kappa_alpha: the g with kappa_g <= chi < kappa_{g+1}.
// kappa_0 = 0, so anything below kappa_1 has index 0.
inline Term index_of(const Term& chi) {
    if (compare(chi, kappa_alpha()) != Cmp::LT)
        throw OutOfRange("index_of: argument must lie below kappa_alpha");
    if (chi.is_zero()) return zero();
    const Atom& lead = chi.monomials().front().atom;
    if (lead.kind == AtomKind::Kappa && lead.level == Level::Rho) return *lead.arg;
    return zero();
}

// ---- normalization of raw term trees ----
//
// Raw trees re-enter through the same constructors, so normalize is a
// recursive rebuild plus bound checks.  Idempotent by construction.

struct TermBounds {
    int depth = kDefaultDepthBound;
    std::uint64_t coeff = kDefaultCoeffBound;
};

inline Term normalize(const Term& raw, const TermBounds& bounds = {}) {
    Term acc = zero();
    for (const auto& m : raw.monomials()) {
        if (m.coeff == 0) throw MalformedTerm("zero coefficient");
        if (m.coeff > bounds.coeff) throw MalformedTerm("coefficient exceeds configured bound");
        Term piece;
        switch (m.atom.kind) {
            case AtomKind::Rho: piece = rho_term(); break;
            case AtomKind::Alpha: piece = alpha_term(); break;
            case AtomKind::OmegaPow: piece = omega_pow(normalize(*m.atom.arg, bounds)); break;
            case AtomKind::Kappa: piece = kappa(m.atom.level, normalize(*m.atom.arg, bounds)); break;
            case AtomKind::Nu: piece = nu(normalize(*m.atom.arg, bounds)); break;
        }
        acc = add(acc, mul_nat(piece, m.coeff));
    }
    if (term_depth(acc) > bounds.depth)
        throw MalformedTerm("atom nesting exceeds configured depth bound");
    for (const auto& m : acc.monomials())  // merging can push past the raw check
        if (m.coeff > bounds.coeff) throw MalformedTerm("coefficient exceeds configured bound");
    return acc;
}

}  // namespace ordpat
