// Finite-pattern combinatorics: carriers with <=1 / <=2 matrices, interval
// decompositions over kappa_alpha blocks, floor-closure, and covering-map
// verification.  Everything here is decided by explicit checks; this layer is
// the brute-force oracle the rest of the system is tested against.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parse.hpp"
#include "relation.hpp"
#include "term.hpp"

namespace ordpat {

struct TargetRelationUnknown : Error {
    explicit TargetRelationUnknown(const std::string& w) : Error("TargetRelationUnknown", w) {}
};
struct PreconditionViolated : Error {
    explicit PreconditionViolated(const std::string& w) : Error("PreconditionViolated", w) {}
};

enum class Rel : std::int8_t { No = 0, Yes = 1, Unknown = 2 };
enum class Provenance { ComputedByEngine, Asserted };
enum class MapKind { Covering, Embedding, Isomorphism };

struct FinitePattern {
    std::vector<Term> carrier;                // strictly increasing
    std::vector<std::vector<Rel>> leq1, leq2; // carrier-indexed
    Provenance provenance = Provenance::Asserted;

    std::size_t size() const { return carrier.size(); }

    std::optional<std::size_t> find(const Term& t) const {
        for (std::size_t i = 0; i < carrier.size(); ++i)
            if (carrier[i] == t) return i;
        return std::nullopt;
    }

    Rel rel(int k, std::size_t i, std::size_t j) const {
        return k == 1 ? leq1[i][j] : leq2[i][j];
    }

    // Checks the structural invariants on the known entries: square matrices,
    // strictly increasing carrier, reflexivity, transitivity, leq2 within
    // leq1, and respect for the term order.
    void validate() const {
        const std::size_t n = carrier.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (!lt(carrier[i], carrier[i + 1]))
                throw PreconditionViolated("pattern carrier is not strictly increasing");
        if (leq1.size() != n || leq2.size() != n)
            throw PreconditionViolated("pattern matrix size mismatch");
        for (const auto& row : leq1)
            if (row.size() != n) throw PreconditionViolated("pattern matrix size mismatch");
        for (const auto& row : leq2)
            if (row.size() != n) throw PreconditionViolated("pattern matrix size mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            if (leq1[i][i] == Rel::No || leq2[i][i] == Rel::No)
                throw PreconditionViolated("pattern relation is not reflexive");
            for (std::size_t j = 0; j < n; ++j) {
                if (leq2[i][j] == Rel::Yes && leq1[i][j] == Rel::No)
                    throw PreconditionViolated("leq2 entry outside leq1");
                if (i > j && (leq1[i][j] == Rel::Yes || leq2[i][j] == Rel::Yes))
                    throw PreconditionViolated("relation entry violates the term order");
                for (std::size_t l = 0; l < n; ++l) {
                    if (leq1[i][j] == Rel::Yes && leq1[j][l] == Rel::Yes &&
                        leq1[i][l] == Rel::No)
                        throw PreconditionViolated("leq1 is not transitive");
                    if (leq2[i][j] == Rel::Yes && leq2[j][l] == Rel::Yes &&
                        leq2[i][l] == Rel::No)
                        throw PreconditionViolated("leq2 is not transitive");
                }
            }
        }
    }

    bool total() const {
        for (const auto& row : leq1)
            for (Rel r : row)
                if (r == Rel::Unknown) return false;
        for (const auto& row : leq2)
            for (Rel r : row)
                if (r == Rel::Unknown) return false;
        return true;
    }
};

// A pattern whose only related pairs are the reflexive ones; the standard
// Asserted universe for sub-block incompressibility searches.
inline FinitePattern reflexive_pattern(std::vector<Term> carrier) {
    std::sort(carrier.begin(), carrier.end(), lt);
    carrier.erase(std::unique(carrier.begin(), carrier.end()), carrier.end());
    const std::size_t n = carrier.size();
    FinitePattern p;
    p.carrier = std::move(carrier);
    p.leq1.assign(n, std::vector<Rel>(n, Rel::No));
    p.leq2.assign(n, std::vector<Rel>(n, Rel::No));
    for (std::size_t i = 0; i < n; ++i) p.leq1[i][i] = p.leq2[i][i] = Rel::Yes;
    return p;
}

// Matrices computed by the relation engine; undecided pairs stay Unknown.
// True entries are transitively closed (the engine's rule set is not itself
// closed under composition).
inline FinitePattern pattern_from_engine(Engine& engine, Level level,
                                         std::vector<Term> carrier) {
    std::sort(carrier.begin(), carrier.end(), lt);
    carrier.erase(std::unique(carrier.begin(), carrier.end()), carrier.end());
    const std::size_t n = carrier.size();
    FinitePattern p;
    p.carrier = std::move(carrier);
    p.provenance = Provenance::ComputedByEngine;
    for (int k = 1; k <= 2; ++k) {
        auto& m = k == 1 ? p.leq1 : p.leq2;
        m.assign(n, std::vector<Rel>(n, Rel::No));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                if (i == j) { m[i][j] = Rel::Yes; continue; }
                Verdict v = engine.leq_k(level, k, p.carrier[i], p.carrier[j]);
                m[i][j] = v.is_true() ? Rel::Yes : v.is_false() ? Rel::No : Rel::Unknown;
            }
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j)
                    for (std::size_t l = j; l < n; ++l)
                        if (m[i][j] == Rel::Yes && m[j][l] == Rel::Yes &&
                            m[i][l] != Rel::Yes) {
                            if (m[i][l] == Rel::No)
                                throw PreconditionViolated(
                                    "engine verdicts are not transitively consistent");
                            m[i][l] = Rel::Yes;
                            changed = true;
                        }
        }
    }
    return p;
}

struct CoveringMap {
    FinitePattern source;
    FinitePattern target_universe;
    std::vector<std::size_t> map;  // source index -> target index
    MapKind kind = MapKind::Covering;

    const Term& image(std::size_t i) const { return target_universe.carrier[map[i]]; }
};

// ---- interval decomposition ----

struct IntervalDecomposition {
    std::vector<Term> M;                // kappa_alpha multiples, increasing
    std::vector<std::vector<Term>> R;   // offsets per block, increasing

    std::vector<Term> reassemble() const {
        std::vector<Term> out;
        for (std::size_t i = 0; i < M.size(); ++i)
            for (const auto& r : R[i]) out.push_back(add(M[i], r));
        return out;
    }
};

inline IntervalDecomposition interval_decomposition(std::vector<Term> X) {
    std::sort(X.begin(), X.end(), lt);
    X.erase(std::unique(X.begin(), X.end()), X.end());
    IntervalDecomposition d;
    const Term B = kappa_alpha();
    for (const auto& x : X) {
        Term mu = sigma_floor(B, x), chi = rem_sigma(B, x);
        if (d.M.empty() || d.M.back() != mu) {
            d.M.push_back(mu);
            d.R.emplace_back();
        }
        d.R.back().push_back(chi);
    }
    return d;
}

// sigma-floor closure: whenever x splits as mu + chi with 0 < chi < sigma,
// the floor mu must itself belong to X (including mu = 0, so that the block
// equivalences "closed iff 0 in every R_mu" hold on the nose).
inline bool is_closed(const std::vector<Term>& X, const Term& sigma) {
    require_indecomposable(sigma);
    auto member = [&](const Term& t) {
        return std::find(X.begin(), X.end(), t) != X.end();
    };
    for (const auto& x : X) {
        Term chi = rem_sigma(sigma, x);
        if (!chi.is_zero() && !member(sigma_floor(sigma, x))) return false;
    }
    return true;
}

// ---- covering verification ----

struct CheckedPair {
    std::size_t x, y;
    int k;
};

struct CoveringCertificate {
    bool ok = true;
    std::vector<CheckedPair> checked;
    std::string violation;  // empty iff ok
};

inline CoveringCertificate verify_covering(const CoveringMap& h) {
    const FinitePattern& S = h.source;
    const FinitePattern& U = h.target_universe;
    const std::size_t n = S.size();
    CoveringCertificate cert;
    auto fail = [&](std::string why) {
        cert.ok = false;
        cert.violation = std::move(why);
        return cert;
    };
    if (h.map.size() != n) return fail("map is not total on the source carrier");
    for (std::size_t i = 0; i < n; ++i)
        if (h.map[i] >= U.size()) return fail("map image outside the target universe");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (h.map[i] >= h.map[i + 1])
            return fail("map is not strictly order preserving at position " +
                        std::to_string(i));
    const bool reflect = h.kind != MapKind::Covering;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (int k = 1; k <= 2; ++k) {
                Rel s = S.rel(k, i, j);
                Rel t = U.rel(k, h.map[i], h.map[j]);
                if (s == Rel::Yes) {
                    if (t == Rel::Unknown)
                        throw TargetRelationUnknown(
                            "target universe does not decide <=_" + std::to_string(k) +
                            " on (" + to_string(U.carrier[h.map[i]]) + ", " +
                            to_string(U.carrier[h.map[j]]) + ")");
                    if (t == Rel::No)
                        return fail("<=_" + std::to_string(k) + " not preserved at (" +
                                    to_string(S.carrier[i]) + ", " + to_string(S.carrier[j]) +
                                    ")");
                }
                if (reflect && t == Rel::Yes && s == Rel::No)
                    return fail("<=_" + std::to_string(k) + " not reflected at (" +
                                to_string(S.carrier[i]) + ", " + to_string(S.carrier[j]) +
                                ")");
                if (reflect && t == Rel::Yes && s == Rel::Unknown)
                    throw TargetRelationUnknown("source does not decide a reflected pair");
                cert.checked.push_back(CheckedPair{i, j, k});
            }
    if (h.kind == MapKind::Isomorphism && n != U.size())
        return fail("isomorphism is not onto the target universe");
    return cert;
}

}  // namespace ordpat
