// The collapse pair iota_xi / phi_xi identifying the kappa-grid of the
// interval at nu_xi with an initial segment of the level-alpha structure,
// plus the two covering transports between the levels.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pattern.hpp"
#include "relation.hpp"
#include "search.hpp"
#include "term.hpp"

namespace ordpat {

struct OutOfDomain : Error {
    explicit OutOfDomain(const std::string& w) : Error("OutOfDomain", w) {}
};
struct OutOfInterval : Error {
    explicit OutOfInterval(const std::string& w) : Error("OutOfInterval", w) {}
};
struct LocalIncompressibilityRequired : Error {
    explicit LocalIncompressibilityRequired(const std::string& w)
        : Error("LocalIncompressibilityRequired", w) {}
};

struct CollapseContext {
    Term xi;
    Term nu_xi;
    Term nu_next;               // nu_{xi+1}; meaningless when unbounded
    std::optional<Term> dom_max; // nullopt <=> unbounded final interval
};

inline CollapseContext make_collapse_context(const Engine& engine, const Term& xi) {
    CollapseContext ctx;
    ctx.xi = xi;
    ctx.nu_xi = engine.nu_of(xi);
    try {
        ctx.nu_next = engine.nu_of(add(xi, nat_term(1)));
    } catch (const OutOfRange&) {
        if (engine.params().alpha_succ_is_theta1) return ctx;  // unbounded last interval
        throw;
    }
    Term span = sub_left(ctx.nu_next, ctx.nu_xi);
    const auto& ms = span.monomials();
    if (ms.size() != 1 || ms[0].atom.kind != AtomKind::Kappa ||
        ms[0].atom.level != Level::Rho || *ms[0].atom.arg != alpha_term())
        throw OracleGap("interval span at xi = " + to_string(xi) +
                        " is not a finite kappa_alpha multiple");
    ctx.dom_max = alpha_term(ms[0].coeff);
    return ctx;
}

namespace detail {

// Split lambda = alpha*d + g with g < alpha; rejects anything off the grid.
inline void split_alpha(const Term& lambda, Term* alpha_part, Term* g) {
    *alpha_part = sigma_floor(alpha_term(), lambda);
    *g = rem_sigma(alpha_term(), lambda);
    for (const auto& m : alpha_part->monomials())
        if (m.atom.kind != AtomKind::Alpha)
            throw OutOfDomain("argument is not of the form alpha*d + g");
}

}  // namespace detail

inline bool in_dom(const CollapseContext& ctx, const Term& lambda) {
    return !ctx.dom_max || leq(lambda, *ctx.dom_max);
}

// iota_xi(alpha*d + g) = nu_xi + kappa_alpha*d + kappa_g.
inline Term iota(const CollapseContext& ctx, const Term& lambda) {
    if (!in_dom(ctx, lambda))
        throw OutOfDomain("iota: " + to_string(lambda) + " exceeds the domain maximum");
    Term ap, g;
    detail::split_alpha(lambda, &ap, &g);
    std::uint64_t d = ap.is_zero() ? 0 : ap.monomials()[0].coeff;
    Term out = add(ctx.nu_xi, mul_nat(kappa_alpha(), d));
    return add(out, kappa(Level::Rho, g));
}

// phi_xi(nu_xi + kappa_alpha*d + chi) = alpha*d + index(chi); extends the
// inverse of iota, weakly order preserving.
inline Term phi(const CollapseContext& ctx, const Term& beta) {
    if (lt(beta, ctx.nu_xi) || (ctx.dom_max && lt(ctx.nu_next, beta)))
        throw OutOfInterval("phi: argument outside the closed interval at xi = " +
                            to_string(ctx.xi));
    Term off = sub_left(beta, ctx.nu_xi);
    Term mu = sigma_floor(kappa_alpha(), off);
    Term chi = rem_sigma(kappa_alpha(), off);
    std::uint64_t d = mu.is_zero() ? 0 : mu.monomials()[0].coeff;
    return add(d ? alpha_term(d) : zero(), index_of(chi));
}

inline std::optional<Term> dom_max(const CollapseContext& ctx) { return ctx.dom_max; }

// The right-hand member of the successor-boundary equivalence: lambda+1 must
// lie in the domain, and then the question is the engine's verdict on the
// iota-images.  False short-circuits when lambda+1 leaves the domain.
inline Verdict successor_boundary(const CollapseContext& ctx, Engine& engine,
                                  const Term& lambda, const Term& lambda_prime) {
    if (lt(lambda, lambda_prime) || lt(lambda_prime, nat_term(1)) || !in_dom(ctx, lambda))
        throw OutOfDomain("successor_boundary requires 1 <= lambda' <= lambda in dom");
    Term succ = add(lambda, nat_term(1));
    if (!in_dom(ctx, succ)) {
        Verdict v;
        v.value = V3::False;
        v.trace.push_back("successor-outside-domain");
        return v;
    }
    return engine.leq_k(Level::Rho, 1, iota(ctx, lambda_prime), iota(ctx, succ));
}

namespace detail {

inline const Term& mapped(const CoveringMap& m, const Term& t, const char* who) {
    auto i = m.source.find(t);
    if (!i) throw PreconditionViolated(std::string(who) + ": map does not cover " + to_string(t));
    return m.target_universe.carrier[m.map[*i]];
}

inline CoveringMap assemble(Engine& engine, Level level, const FinitePattern& source,
                            const std::vector<Term>& images, const char* who) {
    std::vector<Term> universe = source.carrier;
    universe.insert(universe.end(), images.begin(), images.end());
    CoveringMap out;
    out.source = source;
    out.target_universe = pattern_from_engine(engine, level, std::move(universe));
    for (std::size_t i = 0; i < images.size(); ++i)
        out.map.push_back(*out.target_universe.find(images[i]));
    CoveringCertificate cert = verify_covering(out);
    if (!cert.ok)
        throw PreconditionViolated(std::string(who) + ": transported map fails verification: " +
                                   cert.violation);
    return out;
}

}  // namespace detail

// Level-rho lift of a level-alpha covering g:
//   g'(mu + chi) = (iota o g o phi)(mu) + chi.
inline CoveringMap lift_g_prime(Engine& engine, const CollapseContext& ctx,
                                const FinitePattern& Z, const CoveringMap& g) {
    if (!Z.find(ctx.nu_xi))
        throw PreconditionViolated("lift_g_prime: nu_xi missing from Z");
    if (!is_closed(Z.carrier, kappa_alpha()) || !is_closed(Z.carrier, rho_term()))
        throw PreconditionViolated("lift_g_prime: Z must be rho-closed and kappa_alpha-closed");
    if (detail::mapped(g, zero(), "lift_g_prime") != zero())
        throw PreconditionViolated("lift_g_prime: g(0) != 0");
    CoveringCertificate gc = verify_covering(g);
    if (!gc.ok) throw PreconditionViolated("lift_g_prime: g is not a covering: " + gc.violation);

    std::vector<Term> images;
    for (const auto& z : Z.carrier) {
        if (lt(z, ctx.nu_xi) || (ctx.dom_max && lt(ctx.nu_next, z)))
            throw PreconditionViolated("lift_g_prime: Z leaves the interval at xi");
        Term chi = rem_sigma(kappa_alpha(), z);
        Term mu = sigma_floor(kappa_alpha(), z);
        Term moved = iota(ctx, detail::mapped(g, phi(ctx, mu), "lift_g_prime"));
        images.push_back(add(moved, chi));
    }
    return detail::assemble(engine, Level::Rho, Z, images, "lift_g_prime");
}

// Level-alpha push-down of a level-rho covering h:
//   h'(sigma + gamma) = (phi o h o iota)(sigma) + gamma.
inline CoveringMap push_h_prime(Engine& engine, const CollapseContext& ctx,
                                const FinitePattern& Z, const FinitePattern& Zstar,
                                const CoveringMap& h,
                                const FinitePattern& sub_universe) {
    if (!is_closed(Z.carrier, alpha_term()))
        throw PreconditionViolated("push_h_prime: Z must be alpha-closed");
    if (!Zstar.find(ctx.nu_xi))
        throw PreconditionViolated("push_h_prime: nu_xi missing from Zstar");
    if (!is_locally_incompressible(Zstar.carrier, sub_universe))
        throw LocalIncompressibilityRequired("push_h_prime: Zstar is compressible");
    if (detail::mapped(h, ctx.nu_xi, "push_h_prime") != ctx.nu_xi)
        throw PreconditionViolated("push_h_prime: h(nu_xi) != nu_xi");
    CoveringCertificate hc = verify_covering(h);
    if (!hc.ok) throw PreconditionViolated("push_h_prime: h is not a covering: " + hc.violation);

    std::vector<Term> images;
    for (const auto& z : Z.carrier) {
        Term sigma, gamma;
        detail::split_alpha(z, &sigma, &gamma);
        Term iz = iota(ctx, z);
        if (!Zstar.find(iz))
            throw PreconditionViolated("push_h_prime: iota[Z] not contained in Zstar");
        Term base = detail::mapped(h, iota(ctx, sigma), "push_h_prime");
        if (!gamma.is_zero()) {
            // The index lower bound the construction leans on: moving the
            // grid point cannot fall below the moved block plus its kappa.
            Term need = add(base, kappa(Level::Rho, gamma));
            if (lt(detail::mapped(h, iz, "push_h_prime"), need))
                throw PreconditionViolated(
                    "push_h_prime: h drops below the index lower bound at " + to_string(z));
        }
        images.push_back(add(phi(ctx, base), gamma));
    }
    return detail::assemble(engine, Level::Alpha, Z, images, "push_h_prime");
}

}  // namespace ordpat
