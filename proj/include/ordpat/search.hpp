// Exhaustive searches over strictly monotone maps between finite patterns:
// covering search, incompressibility (index-monotonicity under all coverings
// within an explicit universe), and incompressible extension.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pattern.hpp"

namespace ordpat {

struct SearchBudgetExceeded : Error {
    explicit SearchBudgetExceeded(const std::string& w) : Error("SearchBudgetExceeded", w) {}
};
struct CannotExtend : Error {
    explicit CannotExtend(const std::string& w) : Error("CannotExtend", w) {}
};

struct SearchBudget {
    std::uint64_t node_cap = 2'000'000;
};

struct CoveringConstraints {
    std::vector<Term> fix;          // elements that must map to themselves
    std::optional<Term> above;      // images of non-fixed elements must be >= this
    std::optional<Term> cap;        // all images must be <= this
};

struct CoveringSearchResult {
    std::optional<CoveringMap> witness;  // lexicographically least, if any
    std::uint64_t nodes = 0;
};

namespace detail {

// Backtracking enumeration of strictly increasing index assignments, in
// lexicographic order, pruned by the forward-preservation obligations that
// are already decidable on the chosen prefix.
inline bool covering_search(const FinitePattern& X, const FinitePattern& U,
                            const std::function<bool(std::size_t, std::size_t)>& admissible,
                            std::uint64_t node_cap, std::uint64_t* nodes,
                            std::vector<std::size_t>* out,
                            const std::function<bool(const std::vector<std::size_t>&)>& accept) {
    const std::size_t n = X.size(), m = U.size();
    std::vector<std::size_t> pick;
    pick.reserve(n);
    std::function<bool()> step = [&]() -> bool {
        if (pick.size() == n) {
            if (!accept(pick)) return false;
            *out = pick;
            return true;
        }
        const std::size_t i = pick.size();
        std::size_t lo = pick.empty() ? 0 : pick.back() + 1;
        for (std::size_t j = lo; j < m; ++j) {
            if (++*nodes > node_cap)
                throw SearchBudgetExceeded("covering search exceeded the node cap");
            if (!admissible(i, j)) continue;
            bool ok = true;
            for (std::size_t p = 0; p <= i && ok; ++p) {
                std::size_t q = p == i ? j : pick[p];
                // An Unknown target entry cannot certify the obligation, so
                // the candidate is rejected, same as a No.
                for (int k = 1; k <= 2 && ok; ++k)
                    if (X.rel(k, p, i) == Rel::Yes && U.rel(k, q, j) != Rel::Yes) ok = false;
            }
            if (!ok) continue;
            pick.push_back(j);
            if (step()) return true;
            pick.pop_back();
        }
        return false;
    };
    return step();
}

}  // namespace detail

inline CoveringSearchResult find_covering(const FinitePattern& X, const FinitePattern& universe,
                                          const CoveringConstraints& constraints = {},
                                          const SearchBudget& budget = {}) {
    std::vector<bool> fixed(X.size(), false);
    std::vector<std::size_t> fixed_target(X.size(), 0);
    for (const auto& f : constraints.fix) {
        auto si = X.find(f);
        if (!si) throw PreconditionViolated("fix constraint names a non-carrier element");
        auto ti = universe.find(f);
        if (!ti) throw PreconditionViolated("fix constraint element missing from the universe");
        fixed[*si] = true;
        fixed_target[*si] = *ti;
    }
    auto admissible = [&](std::size_t i, std::size_t j) {
        if (fixed[i]) return j == fixed_target[i];
        const Term& img = universe.carrier[j];
        if (constraints.above && lt(img, *constraints.above)) return false;
        if (constraints.cap && lt(*constraints.cap, img)) return false;
        return true;
    };
    CoveringSearchResult res;
    std::vector<std::size_t> pick;
    bool found = detail::covering_search(X, universe, admissible, budget.node_cap, &res.nodes,
                                         &pick, [](const std::vector<std::size_t>&) { return true; });
    if (found) {
        CoveringMap h;
        h.source = X;
        h.target_universe = universe;
        h.map = pick;
        h.kind = MapKind::Covering;
        res.witness = std::move(h);
    }
    return res;
}

// index(t), extended to 0 for terms with no kappa lead; search helpers only.
inline Term covering_index(const Term& t) {
    if (t.is_zero()) return zero();
    const Atom& lead = t.monomials().front().atom;
    if (lead.kind == AtomKind::Kappa && lead.level == Level::Rho) return *lead.arg;
    return zero();
}

// True iff no covering of Z into the universe drops any element's index.
// A semi-decision relative to the supplied universe (recorded by the caller).
inline bool is_incompressible(const FinitePattern& Z, const FinitePattern& universe,
                              const SearchBudget& budget = {}) {
    std::uint64_t nodes = 0;
    std::vector<std::size_t> pick;
    auto admissible = [](std::size_t, std::size_t) { return true; };
    auto drops_index = [&](const std::vector<std::size_t>& m) {
        for (std::size_t i = 0; i < m.size(); ++i)
            if (lt(covering_index(universe.carrier[m[i]]), covering_index(Z.carrier[i])))
                return true;
        return false;
    };
    bool found = detail::covering_search(Z, universe, admissible, budget.node_cap, &nodes,
                                         &pick, drops_index);
    return !found;
}

// Smallest superset R' of R (with 0 adjoined) drawn from the universe inside
// [low, high) that keeps the maximal index and is incompressible there.
inline std::vector<Term> incompressible_extension(const std::vector<Term>& R, const Term& low,
                                                  const Term& high, const FinitePattern& universe,
                                                  const SearchBudget& budget = {}) {
    std::vector<Term> base = R;
    if (std::find(base.begin(), base.end(), zero()) == base.end()) base.push_back(zero());
    std::sort(base.begin(), base.end(), lt);
    Term max_index = zero();
    for (const auto& r : R)
        if (lt(max_index, covering_index(r))) max_index = covering_index(r);
    for (const auto& r : base)
        if (lt(r, low) || !lt(r, high))
            throw PreconditionViolated("extension seed outside [low, high)");

    std::vector<Term> pool;
    for (const auto& u : universe.carrier)
        if (!lt(u, low) && lt(u, high) && !lt(max_index, covering_index(u)) &&
            std::find(base.begin(), base.end(), u) == base.end())
            pool.push_back(u);

    const std::size_t p = pool.size();
    if (p >= 20) throw CannotExtend("candidate pool too large for exhaustive extension");
    auto as_pattern = [&](const std::vector<Term>& set) {
        FinitePattern z = reflexive_pattern(set);
        return z;
    };
    // Increasing subset size, lexicographic within a size: first hit is the
    // canonical extension.
    for (std::size_t extra = 0; extra <= p; ++extra) {
        std::vector<bool> mask(p, false);
        std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(extra), true);
        // std::prev_permutation over the mask walks subsets in lexicographic
        // order of chosen pool indices.
        do {
            std::vector<Term> cand = base;
            for (std::size_t i = 0; i < p; ++i)
                if (mask[i]) cand.push_back(pool[i]);
            std::sort(cand.begin(), cand.end(), lt);
            if (is_incompressible(as_pattern(cand), universe, budget)) return cand;
        } while (std::prev_permutation(mask.begin(), mask.end()));
    }
    throw CannotExtend("no incompressible superset exists within the supplied universe");
}

// 0 in every R_mu and each R_mu incompressible within the sub-block universe.
inline bool is_locally_incompressible(const std::vector<Term>& X,
                                      const FinitePattern& sub_universe,
                                      const SearchBudget& budget = {}) {
    IntervalDecomposition d = interval_decomposition(X);
    for (std::size_t i = 0; i < d.M.size(); ++i) {
        if (std::find(d.R[i].begin(), d.R[i].end(), zero()) == d.R[i].end()) return false;
        if (!is_incompressible(reflexive_pattern(d.R[i]), sub_universe, budget)) return false;
    }
    return true;
}

// The default Asserted universe for sub-block searches: 0 and the first few
// kappa_g grid points, related only reflexively.
inline FinitePattern default_sub_universe(std::uint64_t max_index = 6) {
    std::vector<Term> c{zero()};
    for (std::uint64_t g = 1; g <= max_index; ++g) c.push_back(kappa(Level::Rho, nat_term(g)));
    return reflexive_pattern(std::move(c));
}

}  // namespace ordpat
