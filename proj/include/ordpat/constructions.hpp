// Explicit constructions over patterns: block-wise covering lifts, the index
// lower-bound certificate, the finitized cofinal-family reduction, the
// initial-segment isomorphism between omega-power intervals, domain
// inclusion, and the composite push-down covering.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "collapse.hpp"
#include "pattern.hpp"
#include "relation.hpp"
#include "search.hpp"
#include "verify.hpp"

namespace ordpat {

struct EmptyKept : Error {
    explicit EmptyKept(const std::string& w) : Error("EmptyKept", w) {}
};

// Block-wise lift: h(mu + chi) = mu + h_mu(chi), identity on blocks without a
// replacement.  Each replacement must be a covering of that block's offsets
// whose image is incompressible in the sub-block universe.
inline CoveringMap lift_covering_decomposition(
    Engine& engine, const FinitePattern& X,
    const std::vector<std::pair<Term, CoveringMap>>& per_interval,
    const FinitePattern& sub_universe, const SearchBudget& budget = {}) {
    if (!is_closed(X.carrier, rho_term()))
        throw PreconditionViolated("lift_covering_decomposition: X must be rho-closed");
    IntervalDecomposition d = interval_decomposition(X.carrier);
    std::map<std::string, const CoveringMap*> by_block;
    for (const auto& [mu, h] : per_interval) by_block[to_string(mu)] = &h;

    auto block_map = [&](const Term& mu) -> const CoveringMap* {
        auto it = by_block.find(to_string(mu));
        return it == by_block.end() ? nullptr : it->second;
    };
    for (std::size_t b = 0; b < d.M.size(); ++b) {
        const CoveringMap* hm = block_map(d.M[b]);
        if (!hm) continue;
        if (hm->source.carrier != d.R[b])
            throw PreconditionViolated(
                "lift_covering_decomposition: replacement source differs from the block offsets");
        CoveringCertificate c = verify_covering(*hm);
        if (!c.ok)
            throw PreconditionViolated("lift_covering_decomposition: replacement at " +
                                       to_string(d.M[b]) + " is not a covering: " + c.violation);
        std::vector<Term> image;
        for (std::size_t i = 0; i < hm->map.size(); ++i) image.push_back(hm->image(i));
        if (!is_incompressible(reflexive_pattern(image), sub_universe, budget))
            throw PreconditionViolated("lift_covering_decomposition: replacement image at " +
                                       to_string(d.M[b]) + " is compressible");
    }
    std::vector<Term> images;
    for (const auto& x : X.carrier) {
        Term mu = sigma_floor(kappa_alpha(), x);
        Term chi = rem_sigma(kappa_alpha(), x);
        const CoveringMap* hm = block_map(mu);
        if (!hm) {
            images.push_back(x);
            continue;
        }
        auto i = hm->source.find(chi);
        images.push_back(add(mu, hm->image(*i)));
    }
    return detail::assemble(engine, Level::Rho, X, images, "lift_covering_decomposition");
}

// Certifies h(mu + chi) >= h(mu) + kappa_{index(chi)} on a locally
// incompressible X whose block multiples move to kappa_alpha multiples.
inline CoveringCertificate index_lower_bound_check(const FinitePattern& X,
                                                   const CoveringMap& h,
                                                   const FinitePattern& sub_universe) {
    if (!is_locally_incompressible(X.carrier, sub_universe))
        throw PreconditionViolated("index_lower_bound_check: X must be locally incompressible");
    CoveringCertificate cert;
    for (std::size_t i = 0; i < X.size(); ++i) {
        const Term& x = X.carrier[i];
        Term mu = sigma_floor(kappa_alpha(), x);
        Term chi = rem_sigma(kappa_alpha(), x);
        if (chi.is_zero()) {
            if (!divides(kappa_alpha(), h.image(i)))
                throw PreconditionViolated(
                    "index_lower_bound_check: block multiple moved off the block grid");
            continue;
        }
        auto mi = X.find(mu);
        Term lower = add(h.image(*mi), kappa(Level::Rho, index_of(chi)));
        cert.checked.push_back(CheckedPair{i, *mi, 1});
        if (lt(h.image(i), lower)) {
            cert.ok = false;
            cert.violation = "h(" + to_string(x) + ") < " + to_string(lower);
            return cert;
        }
    }
    return cert;
}

struct FamilyReduction {
    std::vector<Term> R;
    std::vector<std::size_t> kept;  // indices into the input family
    std::vector<CoveringMap> lifts;
};

// Finitized cofinal-family reduction: keep the largest class of members with
// identical block offsets, extend those offsets to an incompressible R, and
// lift each kept member into X plus its blocks refilled with R.
inline FamilyReduction family_reduce(Engine& engine, const FinitePattern& X,
                                     const std::vector<FinitePattern>& family,
                                     const Term& lambda_bound,
                                     const FinitePattern& sub_universe,
                                     const SearchBudget& budget = {}) {
    std::vector<std::vector<Term>> offsets(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        IntervalDecomposition d = interval_decomposition(family[i].carrier);
        std::vector<Term> all;
        for (const auto& r : d.R)
            for (const auto& t : r) all.push_back(t);
        std::sort(all.begin(), all.end(), lt);
        all.erase(std::unique(all.begin(), all.end()), all.end());
        offsets[i] = std::move(all);
        if (!family[i].carrier.empty() && lt(lambda_bound, family[i].carrier.back()))
            throw PreconditionViolated("family_reduce: member exceeds the bound");
    }
    // Largest class with identical offset sets; first such class on ties.
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < family.size(); ++i) {
        std::vector<std::size_t> cls;
        for (std::size_t j = 0; j < family.size(); ++j)
            if (offsets[j] == offsets[i]) cls.push_back(j);
        if (cls.size() > kept.size()) kept = std::move(cls);
    }
    if (kept.size() < 2 && family.size() > 1)
        throw EmptyKept("family_reduce: no offset class has two members");
    if (kept.empty()) throw EmptyKept("family_reduce: empty family");

    for (const auto& x : X.carrier)
        for (std::size_t ki : kept)
            if (!family[ki].carrier.empty() &&
                !lt(x, sigma_floor(kappa_alpha(), family[ki].carrier.front())))
                throw PreconditionViolated("family_reduce: X reaches into a kept member");

    FamilyReduction out;
    out.kept = kept;
    out.R = incompressible_extension(offsets[kept.front()], zero(), kappa_alpha(),
                                     sub_universe, budget);
    for (std::size_t ki : kept) {
        const FinitePattern& Y = family[ki];
        FinitePattern ry = reflexive_pattern(offsets[ki]);
        CoveringSearchResult into_R =
            find_covering(ry, reflexive_pattern(out.R), {}, budget);
        if (!into_R.witness)
            throw CannotExtend("family_reduce: block offsets do not embed into R");
        std::vector<Term> source = X.carrier;
        source.insert(source.end(), Y.carrier.begin(), Y.carrier.end());
        FinitePattern S = pattern_from_engine(engine, Level::Rho, source);
        std::vector<Term> images;
        for (const auto& s : S.carrier) {
            if (X.find(s)) {
                images.push_back(s);
                continue;
            }
            Term mu = sigma_floor(kappa_alpha(), s);
            Term chi = rem_sigma(kappa_alpha(), s);
            images.push_back(add(mu, into_R.witness->image(*ry.find(chi))));
        }
        out.lifts.push_back(detail::assemble(engine, Level::Rho, S, images, "family_reduce"));
    }
    return out;
}

// The shift nu_{w^eta1} + beta -> nu_{w^eta2} + beta on the engine-decidable
// grid of the shorter interval, verified as an isomorphism both ways.
inline CoveringMap initial_segment_iso(Engine& engine, const Term& eta1, const Term& eta2) {
    if (!lt(eta1, eta2))
        throw PreconditionViolated("initial_segment_iso: requires eta1 < eta2");
    Term xi1 = omega_pow(eta1), xi2 = omega_pow(eta2);
    CollapseContext c1 = make_collapse_context(engine, xi1);
    CollapseContext c2 = make_collapse_context(engine, xi2);
    if (!c1.dom_max || !c2.dom_max)
        throw OracleGap("initial_segment_iso: unbounded interval");
    Term lam = leq(*c1.dom_max, *c2.dom_max) ? *c1.dom_max : *c2.dom_max;
    std::uint64_t units = lam.monomials()[0].coeff;

    std::vector<Term> grid1, grid2;
    for (std::uint64_t d2 = 0; d2 <= units; ++d2) {
        Term step = mul_nat(kappa_alpha(), d2);
        grid1.push_back(add(c1.nu_xi, step));
        grid2.push_back(add(c2.nu_xi, step));
        if (d2 < units) {
            Term off = add(step, kappa(Level::Rho, nat_term(1)));
            grid1.push_back(add(c1.nu_xi, off));
            grid2.push_back(add(c2.nu_xi, off));
        }
    }
    CoveringMap iso;
    iso.source = pattern_from_engine(engine, Level::Rho, grid1);
    iso.target_universe = pattern_from_engine(engine, Level::Rho, grid2);
    for (std::size_t i = 0; i < iso.source.size(); ++i) iso.map.push_back(i);
    iso.kind = MapKind::Isomorphism;
    CoveringCertificate cert = verify_covering(iso);
    if (!cert.ok)
        throw PreconditionViolated("initial_segment_iso: shift fails verification: " +
                                   cert.violation);
    return iso;
}

inline bool dom_inclusion_check(Engine& engine, const Term& eta_prime, const Term& eta) {
    if (lt(eta, eta_prime))
        throw PreconditionViolated("dom_inclusion_check: requires eta' <= eta");
    CollapseContext cp = make_collapse_context(engine, omega_pow(eta_prime));
    CollapseContext c = make_collapse_context(engine, omega_pow(eta));
    if (!c.dom_max) return true;
    if (!cp.dom_max) return false;
    return leq(*cp.dom_max, *c.dom_max);
}

struct PushDownResult {
    Term eta;
    CoveringMap h;
};

// Composite push-down covering: move Y below nu_xi (h1), shift the block of
// h1(nu_xi) to an interval start (h2), compress into that interval fixing its
// part (h3), then carry the interval to its omega-power representative (h4).
// Each existential step is searched, never assumed.
inline PushDownResult push_down_covering(Engine& engine, const Term& xi, const Term& nu_bound,
                                         const FinitePattern& Y,
                                         const SearchBudget& budget = {}) {
    const Term nu_xi = engine.nu_of(xi);
    {
        std::uint64_t m;
        if (is_finite_nat(xi, &m))
            throw PreconditionViolated("push_down_covering: xi must be a limit");
    }
    if (nu_xi == nu_bound || !engine.leq_k(Level::Rho, 2, nu_xi, nu_bound).is_true())
        throw PreconditionViolated("push_down_covering: nu_xi <_2 nu is not established");
    if (!Y.find(nu_xi) || !is_closed(Y.carrier, rho_term()))
        throw PreconditionViolated("push_down_covering: Y must be rho-closed and contain nu_xi");
    for (const auto& y : Y.carrier)
        if (lt(y, nu_xi) || !lt(y, nu_bound))
            throw PreconditionViolated("push_down_covering: Y leaves [nu_xi, nu)");

    std::vector<bool> reaches(Y.size(), false);
    for (std::size_t i = 0; i < Y.size(); ++i)
        reaches[i] = engine.leq_k(Level::Rho, 1, Y.carrier[i], nu_bound).is_true();

    // Candidate images for h1: the finite-region block grid above nu_1, plus
    // the grids of the first limit intervals strictly below xi (their spans
    // grow, so sources reaching past one block can still land somewhere).
    std::vector<Term> pool;
    for (std::uint64_t c = 3; c <= 10; ++c) {
        pool.push_back(mul_nat(kappa_alpha(), c));
        pool.push_back(add(mul_nat(kappa_alpha(), c), kappa(Level::Rho, nat_term(1))));
    }
    for (std::uint64_t e = 1; e <= 2; ++e) {
        Term cand_xi = omega_pow(nat_term(e));
        if (!lt(cand_xi, xi)) break;
        Term base = engine.nu_of(cand_xi);
        for (std::uint64_t d2 = 0; d2 <= e + 1; ++d2) {
            pool.push_back(add(base, mul_nat(kappa_alpha(), d2)));
            if (d2 <= e)
                pool.push_back(add(base, add(mul_nat(kappa_alpha(), d2),
                                             kappa(Level::Rho, nat_term(1)))));
        }
    }
    FinitePattern U1 = pattern_from_engine(engine, Level::Rho, pool);
    const std::size_t nu_pos = *Y.find(nu_xi);

    std::uint64_t nodes = 0;
    PushDownResult result;
    bool done = false;
    auto pipeline = [&](const std::vector<std::size_t>& pick) -> bool {
        std::vector<Term> r1;
        for (std::size_t j : pick) r1.push_back(U1.carrier[j]);
        const Term h1_nu = r1[nu_pos];
        if (!divides(kappa_alpha(), h1_nu)) return false;
        IntervalLocation loc = engine.locate_interval(h1_nu);
        if (loc.xi.is_zero()) return false;
        const Term nu_p = engine.nu_of(loc.xi);
        const Term nu_p1 = engine.nu_of(add(loc.xi, nat_term(1)));

        // h2: slide the block at h1(nu_xi) down to the interval start.
        std::vector<Term> r2;
        for (const auto& t : r1) {
            Term beta = sigma_floor(rho_term(), t);
            Term eps = rem_sigma(rho_term(), t);
            r2.push_back(beta == h1_nu ? add(nu_p, eps) : t);
        }
        for (std::size_t i = 0; i + 1 < r2.size(); ++i)
            if (!lt(r2[i], r2[i + 1])) return false;

        // h3: compress into the closed interval at loc.xi, fixing the part
        // already inside it.
        std::vector<Term> u3 = r2;
        Term span = sub_left(nu_p1, nu_p);
        for (std::uint64_t d2 = 0; d2 <= span.monomials()[0].coeff; ++d2)
            u3.push_back(add(nu_p, mul_nat(kappa_alpha(), d2)));
        FinitePattern S3, U3;
        try {
            S3 = pattern_from_engine(engine, Level::Rho, r2);
            U3 = pattern_from_engine(engine, Level::Rho, u3);
        } catch (const PreconditionViolated&) {
            return false;
        }
        CoveringConstraints c3;
        for (const auto& t : r2)
            if (!lt(t, nu_p) && lt(t, nu_p1)) c3.fix.push_back(t);
        c3.cap = nu_p1;
        CoveringSearchResult h3;
        try {
            h3 = find_covering(S3, U3, c3, budget);
        } catch (const TargetRelationUnknown&) {
            return false;
        }
        if (!h3.witness) return false;

        // h4: shift the interval at loc.xi onto its omega-power representative.
        const Monomial& last = loc.xi.monomials().back();
        Term eta = last.atom.arg ? *last.atom.arg : zero();
        Term xi_rep = omega_pow(eta);
        Term nu_rep = engine.nu_of(xi_rep);
        std::vector<Term> final_images;
        for (std::size_t i = 0; i < r2.size(); ++i) {
            Term t = h3.witness->image(i);
            final_images.push_back(add(nu_rep, sub_left(t, nu_p)));
        }
        for (std::size_t i = 0; i + 1 < final_images.size(); ++i)
            if (!lt(final_images[i], final_images[i + 1])) return false;
        if (final_images[nu_pos] != nu_rep) return false;
        Term nu_rep1 = engine.nu_of(add(xi_rep, nat_term(1)));
        for (std::size_t i = 0; i < Y.size(); ++i)
            if (reaches[i] &&
                !engine.leq_k(Level::Rho, 1, final_images[i], nu_rep1).is_true())
                return false;
        try {
            result.h = detail::assemble(engine, Level::Rho, Y, final_images,
                                        "push_down_covering");
        } catch (const Error&) {
            return false;
        }
        result.eta = eta;
        done = true;
        return true;
    };
    std::vector<std::size_t> pick;
    detail::covering_search(Y, U1, [](std::size_t, std::size_t) { return true; },
                            budget.node_cap, &nodes, &pick, pipeline);
    if (!done)
        throw CannotExtend("push_down_covering: no composite found within the search universe");
    return result;
}

}  // namespace ordpat
