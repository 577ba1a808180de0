// Run parameters: the (rho, alpha) pair, the theta_2 mode, the level-alpha
// interval oracle, and the perturbable axiom table driving the nu-sequence.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "term.hpp"

namespace ordpat {

struct OracleGap : Error {
    explicit OracleGap(const std::string& w) : Error("OracleGap", w) {}
};
struct BeyondBound : Error {
    explicit BeyondBound(const std::string& w) : Error("BeyondBound", w) {}
};

struct Theta2Mode {
    bool infinite = false;
    Term bound;  // successor mode: theta_2 = bound + 1

    static Theta2Mode successor(Term b) { return Theta2Mode{false, std::move(b)}; }
    static Theta2Mode unbounded() { return Theta2Mode{true, {}}; }
};

// max(I^alpha_beta) table.  Defaults cover beta = 0 (-> 0) and beta an
// alpha-multiple (-> that multiple); explicit entries override and extend.
struct AlphaIntervalOracle {
    std::vector<std::pair<Term, Term>> entries;

    std::optional<Term> lookup(const Term& beta) const {
        for (const auto& [b, mx] : entries)
            if (b == beta) return mx;
        if (beta.is_zero()) return zero();
        const auto& ms = beta.monomials();
        if (ms.size() == 1 && ms[0].atom.kind == AtomKind::Alpha) return beta;
        return std::nullopt;
    }

    Term max_of(const Term& beta) const {
        if (auto r = lookup(beta)) return *r;
        throw OracleGap("no max(I^a_b) entry for b = " + to_string(beta));
    }
};

// Imported base facts, with the nu-spacing unit exposed so the mutation
// suite can perturb it.  nu_m = kappa_alpha * (m + nu_unit_offset).
struct AxiomTable {
    std::uint64_t nu_unit_offset = 1;
    bool level_shift_enabled = true;
};

struct StructureParams {
    Term rho = rho_term();
    Term alpha = alpha_term();
    Theta2Mode theta2 = Theta2Mode::successor(parse_bound_default());
    bool alpha_succ_is_theta1 = false;  // alpha + 1 = theta_1 mode
    AlphaIntervalOracle oracle;
    TermBounds bounds;

    static Term parse_bound_default() {
        // A roomy successor-mode bound: omega^9 (well beyond every desk-scale
        // index the suite touches).
        return omega_pow(nat_term(9));
    }
};

// Largest supported exponent in nu indices; nu_of reports BeyondBound past it.
inline constexpr std::uint64_t kMaxNuExponent = 9;

}  // namespace ordpat
