// Decision engine for the <=1 / <=2 relations on notation terms.
//
// Verdicts are three-valued.  True/False verdicts are produced only by the
// imported base facts (the rule ids in the traces); everything else is an
// honest Unknown with a reason, never a guess.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "params.hpp"
#include "parse.hpp"
#include "term.hpp"

namespace ordpat {

enum class V3 { True, False, Unknown };

inline const char* to_string(V3 v) {
    switch (v) {
        case V3::True: return "true";
        case V3::False: return "false";
        case V3::Unknown: return "unknown";
    }
    return "?";
}

struct Verdict {
    V3 value = V3::Unknown;
    std::vector<std::string> trace;   // rule ids, outermost first
    std::string reason;               // set when value == Unknown
    bool oracle_gap = false;

    bool is_true() const { return value == V3::True; }
    bool is_false() const { return value == V3::False; }
    bool is_unknown() const { return value == V3::Unknown; }
};

struct IntervalLocation {
    Term xi;       // nu_xi <= beta < nu_{xi+1}
    Term offset;   // beta - nu_xi
    bool boundary; // beta == nu_xi (shared endpoint of adjacent closed intervals)
};

class Engine {
  public:
    explicit Engine(StructureParams params, AxiomTable table = {})
        : params_(std::move(params)), table_(std::move(table)) {}

    const StructureParams& params() const { return params_; }
    const AxiomTable& table() const { return table_; }

    // nu_xi.  Finite indices use the spacing unit from the axiom table;
    // limit-built indices are translation-invariant in that unit.
    Term nu_of(const Term& xi) const {
        check_nu_index(xi);
        std::uint64_t m;
        if (is_finite_nat(xi, &m))
            return mul_nat(kappa_alpha(), m + table_.nu_unit_offset);
        return nu(xi);
    }

    // The xi with nu_xi <= beta < nu_{xi+1}.
    IntervalLocation locate_interval(const Term& beta) const {
        Term nu0 = nu_of(zero());
        if (lt(beta, nu0)) throw OutOfRange("locate_interval: argument below nu_0");
        Term xi = interval_start(beta);
        for (;;) {
            Term next = add(xi, nat_term(1));
            Term nv = nu_of(next);
            if (leq(nv, beta)) { xi = next; continue; }
            Term off = sub_left(beta, nu_of(xi));
            return IntervalLocation{std::move(xi), off, off.is_zero()};
        }
    }

    // The level-alpha copy of the nu-sequence: nu^a_m = alpha * (m + offset),
    // finite indices only.
    Term nu_of_alpha(std::uint64_t m) const { return alpha_term(m + table_.nu_unit_offset); }

    Verdict leq_k(Level level, int k, const Term& a, const Term& b,
                  bool allow_level_shift = true) {
        if (k != 1 && k != 2) throw OutOfRange("k must be 1 or 2");
        return decide(level, k, a, b, allow_level_shift, 0);
    }

  private:
    StructureParams params_;
    AxiomTable table_;
    std::map<std::string, Verdict> memo_;

    static constexpr int kMaxDepth = 64;

    void check_nu_index(const Term& xi) const {
        if (!params_.theta2.infinite && lt(params_.theta2.bound, xi))
            throw OutOfRange("nu index exceeds the configured theta_2 bound");
        for (const auto& m : xi.monomials()) {
            std::uint64_t e;
            if (m.atom.kind != AtomKind::OmegaPow ||
                !is_finite_nat(*m.atom.arg, &e) || e > kMaxNuExponent)
                throw BeyondBound("nu index outside the supported range (< w^" +
                                  std::to_string(kMaxNuExponent + 1) + ")");
        }
    }

    // A cheap starting point for the locate walk, always <= the answer.
    Term interval_start(const Term& beta) const {
        const Monomial& lead = beta.monomials().front();
        if (lead.atom.kind == AtomKind::Nu) {
            if (lead.coeff != 1)
                throw BeyondBound("locate_interval: repeated nu atoms are outside desk scale");
            return *lead.atom.arg;
        }
        if (lead.atom.kind == AtomKind::Kappa && lead.atom.level == Level::Rho &&
            *lead.atom.arg == alpha_term()) {
            std::uint64_t c = lead.coeff;
            if (c < table_.nu_unit_offset)
                throw OutOfRange("locate_interval: argument below nu_0");
            return nat_term(c - table_.nu_unit_offset);
        }
        return zero();
    }

    Term block(Level level) const {
        return level == Level::Rho ? kappa_alpha() : alpha_term();
    }

    // If a == nu_xi at the given level, yield xi.
    bool as_nu(Level level, const Term& a, Term* xi) const {
        if (level == Level::Alpha) {
            const auto& ms = a.monomials();
            if (ms.size() == 1 && ms[0].atom.kind == AtomKind::Alpha &&
                ms[0].coeff >= table_.nu_unit_offset) {
                *xi = nat_term(ms[0].coeff - table_.nu_unit_offset);
                return true;
            }
            return false;
        }
        if (lt(a, nu_of(zero()))) return false;
        IntervalLocation loc = locate_interval(a);
        if (!loc.offset.is_zero()) return false;
        *xi = loc.xi;
        return true;
    }

    Term nu_at(Level level, const Term& xi) const {
        if (level == Level::Rho) return nu_of(xi);
        std::uint64_t m;
        if (!is_finite_nat(xi, &m))
            throw BeyondBound("level-alpha nu-sequence is supported for finite indices only");
        return nu_of_alpha(m);
    }

    // Is t a grid offset kappa_alpha*d + kappa_g (g < alpha, possibly absent)?
    // These are the points the collapse pair carries down to level alpha as
    // alpha*d + g; the level-shift rule applies only to them.
    static bool grid_offset(const Term& t, std::uint64_t* d, Term* g) {
        *d = 0; *g = zero();
        const auto& ms = t.monomials();
        std::size_t i = 0;
        if (i < ms.size() && ms[i].atom.kind == AtomKind::Kappa &&
            ms[i].atom.level == Level::Rho && *ms[i].atom.arg == alpha_term()) {
            *d = ms[i].coeff;
            ++i;
        }
        if (i < ms.size()) {
            if (ms[i].coeff != 1 || ms[i].atom.kind != AtomKind::Kappa ||
                ms[i].atom.level != Level::Rho || !lt(*ms[i].atom.arg, alpha_term()))
                return false;
            *g = *ms[i].atom.arg;
            ++i;
        }
        return i == ms.size();
    }

    static Verdict yes(std::string rule) {
        Verdict v; v.value = V3::True; v.trace.push_back(std::move(rule)); return v;
    }
    static Verdict no(std::string rule) {
        Verdict v; v.value = V3::False; v.trace.push_back(std::move(rule)); return v;
    }
    static Verdict unknown(std::string reason) {
        Verdict v; v.reason = std::move(reason); return v;
    }
    static Verdict wrap(std::string rule, Verdict inner) {
        inner.trace.insert(inner.trace.begin(), std::move(rule));
        return inner;
    }

    Verdict decide(Level level, int k, const Term& a, const Term& b, bool shift, int depth) {
        std::string key = (level == Level::Rho ? "r|" : "a|") + std::to_string(k) + "|" +
                          to_string(a) + "|" + to_string(b) + "|" + (shift ? "s" : "m");
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Verdict v;
        if (depth > kMaxDepth) {
            v = unknown("rewrite depth limit reached");
        } else {
            try {
                v = decide_core(level, k, a, b, shift, depth);
            } catch (const IncomparableAtoms& e) {
                v = unknown(std::string("incomparable terms: ") + e.what());
            } catch (const OracleGap& e) {
                v = unknown(e.what());
                v.oracle_gap = true;
            } catch (const BeyondBound& e) {
                v = unknown(e.what());
            }
        }
        memo_[key] = v;
        return v;
    }

    Verdict decide_core(Level level, int k, const Term& a, const Term& b, bool shift,
                        int depth) {
        if (a == b) return yes("refl");
        if (lt(b, a)) return no("order");
        if (a.is_zero()) return yes("zero-trivial");

        const Term B = block(level);
        const Term mu_a = sigma_floor(B, a), chi_a = rem_sigma(B, a);
        const Term mu_b = sigma_floor(B, b), chi_b = rem_sigma(B, b);

        // A positive sub-block offset never reaches past its own block.
        if (!chi_a.is_zero() && lt(mu_a, mu_b)) return no("rtsi-block-confinement");

        // Same block: the relation only depends on the offsets.
        if (!chi_a.is_zero() && !mu_a.is_zero() && mu_a == mu_b)
            return wrap("rtsi-translate", decide(level, k, chi_a, chi_b, shift, depth + 1));

        if (chi_a.is_zero()) {
            // a is a block multiple below b's block: never <=2 into a strict
            // sub-block point.
            if (k == 2 && !chi_b.is_zero() && leq(a, mu_b)) return no("rtsi-no-leq2");

            // nu-interval facts: nu_xi <=1 everything up to nu_{xi+1}; <=2
            // exactly at the block multiples in between.
            Term xi;
            if (as_nu(level, a, &xi)) {
                bool in_interval = false;
                try {
                    in_interval = leq(b, nu_at(level, add(xi, nat_term(1))));
                } catch (const BeyondBound&) {
                } catch (const OutOfRange&) {
                }
                if (in_interval) {
                    if (k == 1) return yes("nu-leq1-interval");
                    return divides(B, b) ? yes("nu-leq2-divisible") : no("nu-leq2-divisible");
                }
            }

            // Replace b's offset by the kappa indexing its sub-block position
            // (an iff, so the rewritten verdict transfers both ways).  Level
            // rho only: the level-alpha index function is not tabulated.
            if (level == Level::Rho && !chi_b.is_zero()) {
                Term chi2 = kappa(Level::Rho, index_of(chi_b));
                if (chi2 != chi_b) {
                    Verdict inner = decide(level, k, a, add(mu_b, chi2), shift, depth + 1);
                    if (!inner.is_unknown()) return wrap("index-rewrite", inner);
                }
            }
        }

        // Order reduction: transport a pair lying in one nu-interval down to
        // the level-alpha copy of that interval.
        if (level == Level::Rho && shift && table_.level_shift_enabled && leq(nu_of(zero()), a)) {
            IntervalLocation loc = locate_interval(a);
            bool in_interval = false;
            try {
                in_interval = leq(b, nu_of(add(loc.xi, nat_term(1))));
            } catch (const BeyondBound&) {
            } catch (const OutOfRange&) {
            }
            std::uint64_t da, db;
            Term ga, gb;
            if (in_interval && grid_offset(loc.offset, &da, &ga) &&
                grid_offset(sub_left(b, nu_of(loc.xi)), &db, &gb)) {
                Term la = add(da ? alpha_term(da) : zero(), ga);
                Term lb = add(db ? alpha_term(db) : zero(), gb);
                Verdict inner = decide(Level::Alpha, k, la, lb, false, depth + 1);
                if (!inner.is_unknown()) return wrap("order-reduction-shift", inner);
            }
        }

        // <=2 implies <=1, so a refuted <=1 refutes <=2.
        if (k == 2) {
            Verdict one = decide(level, 1, a, b, shift, depth + 1);
            if (one.is_false()) return wrap("leq2-implies-leq1", one);
        }

        return unknown("no imported fact decides this pair");
    }
};

}  // namespace ordpat
