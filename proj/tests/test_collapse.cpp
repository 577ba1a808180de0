#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ordpat/collapse.hpp>

using namespace ordpat;

namespace {
Engine& shared() {
    static Engine e{StructureParams{}};
    return e;
}
}  // namespace

TEST_CASE("collapse contexts") {
    CollapseContext c1 = make_collapse_context(shared(), nat_term(1));
    CHECK(c1.nu_xi == parse("k[a]*2"));
    CHECK(c1.nu_next == parse("k[a]*3"));
    CHECK(c1.dom_max == alpha_term());

    CollapseContext cw = make_collapse_context(shared(), parse("w^w^0"));
    CHECK(cw.nu_xi == parse("v[w^w^0]"));
    CHECK(cw.nu_next == parse("v[w^w^0]+k[a]*2"));
    CHECK(cw.dom_max == alpha_term(2));

    StructureParams last;
    last.alpha_succ_is_theta1 = true;
    last.theta2 = Theta2Mode::successor(parse("w^(w^0*9)"));
    Engine e_last{last};
    CollapseContext top = make_collapse_context(e_last, parse("w^(w^0*9)"));
    CHECK_FALSE(top.dom_max);  // unbounded final interval
    CHECK(in_dom(top, parse("a*30")));
}

TEST_CASE("iota and phi invert each other on the grid") {
    for (const char* xi_s : {"w^0", "w^0*2", "w^w^0", "w^(w^0*2)"}) {
        CollapseContext ctx = make_collapse_context(shared(), parse(xi_s));
        std::uint64_t L = ctx.dom_max->monomials()[0].coeff;
        for (std::uint64_t d = 0; d <= L; ++d)
            for (const char* g_s : {"0", "w^0", "w^0*2", "r"}) {
                Term lam = add(d ? alpha_term(d) : zero(), parse(g_s));
                if (!in_dom(ctx, lam)) continue;
                Term image = iota(ctx, lam);
                INFO(xi_s << " at " << to_string(lam));
                CHECK(phi(ctx, image) == lam);
                CHECK(leq(ctx.nu_xi, image));
                CHECK(leq(image, ctx.nu_next));
                // divisibility transports to the block grid
                CHECK(divides(alpha_term(), lam) ==
                      divides(kappa_alpha(), sub_left(image, ctx.nu_xi)));
            }
    }
}

TEST_CASE("frozen collapse values") {
    CollapseContext c1 = make_collapse_context(shared(), nat_term(1));
    CHECK(iota(c1, alpha_term()) == parse("k[a]*3"));
    CHECK(iota(c1, parse("w^0")) == parse("k[a]*2+k[w^0]"));
    CHECK(iota(c1, zero()) == parse("k[a]*2"));
    CHECK(phi(c1, parse("k[a]*2+k[w^0]+w^0")) == parse("w^0"));  // least preimage
    CHECK(iota(c1, phi(c1, parse("k[a]*2+k[w^0]+w^0"))) == parse("k[a]*2+k[w^0]"));
}

TEST_CASE("phi is weakly order preserving") {
    CollapseContext cw = make_collapse_context(shared(), parse("w^w^0"));
    std::vector<Term> sample;
    for (const char* s : {"v[w^w^0]", "v[w^w^0]+w^0", "v[w^w^0]+k[w^0]", "v[w^w^0]+k[w^0]+r",
                          "v[w^w^0]+k[w^0*2]", "v[w^w^0]+k[a]", "v[w^w^0]+k[a]+k[w^0]",
                          "v[w^w^0]+k[a]*2"})
        sample.push_back(parse(s));
    for (std::size_t i = 0; i < sample.size(); ++i)
        for (std::size_t j = i; j < sample.size(); ++j)
            CHECK(leq(phi(cw, sample[i]), phi(cw, sample[j])));
}

TEST_CASE("domain and interval errors") {
    CollapseContext c1 = make_collapse_context(shared(), nat_term(1));
    CHECK_THROWS_AS(iota(c1, alpha_term(2)), OutOfDomain);
    CHECK_THROWS_AS(iota(c1, parse("k[a]")), OutOfDomain);  // not alpha*d + g
    CHECK_THROWS_AS(phi(c1, parse("k[a]")), OutOfInterval);
    CHECK_THROWS_AS(phi(c1, parse("k[a]*3+w^0")), OutOfInterval);
}

TEST_CASE("successor boundary") {
    CollapseContext c1 = make_collapse_context(shared(), nat_term(1));
    // lambda + 1 leaves the domain: refuted without consulting the engine
    Verdict off = successor_boundary(c1, shared(), alpha_term(), nat_term(1));
    CHECK(off.value == V3::False);
    CHECK(off.trace.front() == "successor-outside-domain");
    // inside the domain the question is the engine's, and stays honest
    Verdict in = successor_boundary(c1, shared(), nat_term(1), nat_term(1));
    CHECK(in.value == V3::Unknown);
    CHECK_THROWS_AS(successor_boundary(c1, shared(), nat_term(1), zero()), OutOfDomain);
}

TEST_CASE("lift of a block covering") {
    Engine& e = shared();
    CollapseContext cw = make_collapse_context(e, parse("w^w^0"));
    FinitePattern Z = pattern_from_engine(
        e, Level::Rho, {cw.nu_xi, add(cw.nu_xi, kappa_alpha())});

    CoveringMap g;
    g.source = pattern_from_engine(e, Level::Alpha, {zero(), alpha_term()});
    g.target_universe =
        pattern_from_engine(e, Level::Alpha, {zero(), alpha_term(), alpha_term(2)});
    g.map = {0, 2};  // 0 -> 0, alpha -> alpha*2
    CoveringMap lifted = lift_g_prime(e, cw, Z, g);
    CHECK(lifted.image(0) == cw.nu_xi);
    CHECK(lifted.image(1) == add(cw.nu_xi, mul_nat(kappa_alpha(), 2)));
    CHECK(verify_covering(lifted).ok);

    CoveringMap bad = g;
    bad.map = {1, 2};  // moves 0
    CHECK_THROWS_AS(lift_g_prime(e, cw, Z, bad), PreconditionViolated);
}

TEST_CASE("push-down of an interval covering") {
    Engine& e = shared();
    FinitePattern sub = default_sub_universe();
    CollapseContext c1 = make_collapse_context(e, nat_term(1));
    FinitePattern Z = pattern_from_engine(e, Level::Alpha, {zero(), alpha_term()});
    FinitePattern Zstar =
        pattern_from_engine(e, Level::Rho, {c1.nu_xi, add(c1.nu_xi, kappa_alpha())});
    CoveringMap h;
    h.source = Zstar;
    h.target_universe = Zstar;
    h.map = {0, 1};
    CoveringMap down = push_h_prime(e, c1, Z, Zstar, h, sub);
    CHECK(down.image(0) == zero());
    CHECK(down.image(1) == alpha_term());

    FinitePattern gap = pattern_from_engine(
        e, Level::Rho, {c1.nu_xi, add(c1.nu_xi, parse("k[w^0*2]"))});
    FinitePattern Z2 = pattern_from_engine(e, Level::Alpha, {zero(), parse("w^0*2")});
    CoveringMap h2;
    h2.source = gap;
    h2.target_universe = gap;
    h2.map = {0, 1};
    CHECK_THROWS_AS(push_h_prime(e, c1, Z2, gap, h2, sub),
                    LocalIncompressibilityRequired);
}
