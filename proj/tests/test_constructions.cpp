#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ordpat/constructions.hpp>

#include "suites.hpp"

using namespace ordpat;

namespace {
Engine& shared() {
    static Engine e{StructureParams{}};
    return e;
}
FinitePattern sub_u() { return default_sub_universe(); }
}  // namespace

TEST_CASE("block-wise lift") {
    Engine& e = shared();
    FinitePattern X = pattern_from_engine(
        e, Level::Rho, {zero(), parse("k[w^0]"), parse("k[a]"), parse("k[a]+k[w^0]")});
    CoveringMap id = lift_covering_decomposition(e, X, {}, sub_u());
    for (std::size_t i = 0; i < X.size(); ++i) CHECK(id.image(i) == X.carrier[i]);

    // a compressible replacement image is refused
    CoveringMap repl;
    repl.source = reflexive_pattern({zero(), parse("k[w^0]")});
    repl.target_universe = sub_u();
    repl.map = {0, 2};  // image {0, k_2}
    CHECK_THROWS_AS(
        lift_covering_decomposition(e, X, {{parse("k[a]"), repl}}, sub_u()),
        PreconditionViolated);

    FinitePattern open_set = pattern_from_engine(
        e, Level::Rho, {parse("k[a]"), parse("k[a]+k[w^0]+w^0")});
    CHECK_THROWS_AS(lift_covering_decomposition(e, open_set, {}, sub_u()),
                    PreconditionViolated);  // not rho-closed
}

TEST_CASE("index lower bound certificate") {
    Engine& e = shared();
    FinitePattern X = pattern_from_engine(
        e, Level::Rho, {zero(), parse("k[w^0]"), parse("k[a]"), parse("k[a]+k[w^0]")});
    CoveringMap ok;
    ok.source = X;
    ok.target_universe = X;
    ok.map = {0, 1, 2, 3};
    CHECK(index_lower_bound_check(X, ok, sub_u()).ok);

    CoveringMap drop;
    drop.source = X;
    drop.target_universe = reflexive_pattern(
        {zero(), parse("k[w^0]"), parse("k[a]*2"), parse("k[a]*2+w^0")});
    drop.map = {0, 1, 2, 3};  // k[a]+k[w^0] lands below k[a]*2 + k_1
    CoveringCertificate c = index_lower_bound_check(X, drop, sub_u());
    CHECK_FALSE(c.ok);
    CHECK_FALSE(c.violation.empty());
}

TEST_CASE("cofinal family reduction") {
    Engine& e = shared();
    FinitePattern X = pattern_from_engine(e, Level::Rho, {zero(), parse("k[a]*2")});
    std::vector<FinitePattern> fam;
    for (const char* base : {"k[a]*3", "k[a]*4", "k[a]*5"})
        fam.push_back(pattern_from_engine(
            e, Level::Rho, {parse(base), add(parse(base), parse("k[w^0]"))}));
    FamilyReduction fr = family_reduce(e, X, fam, parse("k[a]*9"), sub_u());
    CHECK(fr.kept == std::vector<std::size_t>{0, 1, 2});
    CHECK(fr.R == std::vector<Term>{zero(), parse("k[w^0]")});
    REQUIRE(fr.lifts.size() == 3);
    for (const auto& l : fr.lifts) CHECK(verify_covering(l).ok);

    // no two members share an offset set: nothing to keep
    std::vector<FinitePattern> mixed;
    mixed.push_back(pattern_from_engine(e, Level::Rho, {parse("k[a]*3")}));
    mixed.push_back(pattern_from_engine(
        e, Level::Rho, {parse("k[a]*4"), parse("k[a]*4+k[w^0]")}));
    CHECK_THROWS_AS(family_reduce(e, X, mixed, parse("k[a]*9"), sub_u()), EmptyKept);
}

TEST_CASE("initial segment isomorphism") {
    Engine& e = shared();
    CoveringMap iso = initial_segment_iso(e, zero(), parse("w^0"));
    CHECK(iso.kind == MapKind::Isomorphism);
    CHECK(iso.source.carrier.front() == parse("k[a]*2"));
    CHECK(iso.target_universe.carrier.front() == parse("v[w^w^0]"));
    CHECK(verify_covering(iso).ok);

    CoveringMap wide = initial_segment_iso(e, zero(), nat_term(3));
    CHECK(wide.target_universe.carrier.front() == parse("v[w^(w^0*3)]"));
    CHECK(wide.source.size() == 3);  // shorter interval: nu, nu + k_1, nu + k_a

    CHECK_THROWS_AS(initial_segment_iso(e, nat_term(2), nat_term(2)), PreconditionViolated);
}

TEST_CASE("domain inclusion along eta") {
    Engine& e = shared();
    for (std::uint64_t lo = 0; lo <= 4; ++lo)
        for (std::uint64_t hi = lo; hi <= 4; ++hi)
            CHECK(dom_inclusion_check(e, nat_term(lo), nat_term(hi)));
    CHECK_THROWS_AS(dom_inclusion_check(e, nat_term(1), zero()), PreconditionViolated);
}

TEST_CASE("push-down covering") {
    Engine& e = shared();
    Term xi = parse("w^w^0");
    Term nu_xi = e.nu_of(xi);
    Term bound = e.nu_of(parse("w^w^0+w^0"));

    FinitePattern Y = pattern_from_engine(
        e, Level::Rho, {nu_xi, add(nu_xi, kappa_alpha())});
    PushDownResult pd = push_down_covering(e, xi, bound, Y);
    CHECK(pd.eta.is_zero());
    CHECK(pd.h.image(0) == parse("k[a]*2"));
    CHECK(pd.h.image(1) == parse("k[a]*3"));
    CHECK(verify_covering(pd.h).ok);

    // a two-block reach below omega has nowhere to land
    FinitePattern wide = pattern_from_engine(
        e, Level::Rho,
        {nu_xi, add(nu_xi, kappa_alpha()), add(nu_xi, parse("k[a]+k[w^0]"))});
    CHECK_THROWS_AS(push_down_covering(e, xi, bound, wide), CannotExtend);

    // above omega the nu_omega interval absorbs it, landing at eta = 1
    Term xi2 = parse("w^w^0*2");
    Term nu2 = e.nu_of(xi2);
    FinitePattern wide2 = pattern_from_engine(
        e, Level::Rho,
        {nu2, add(nu2, kappa_alpha()), add(nu2, parse("k[a]+k[w^0]"))});
    PushDownResult pd2 = push_down_covering(e, xi2, e.nu_of(parse("w^w^0*2+w^0")), wide2);
    CHECK(pd2.eta == nat_term(1));
    CHECK(pd2.h.image(0) == parse("v[w^w^0]"));

    CHECK_THROWS_AS(push_down_covering(e, nat_term(2), parse("k[a]*4"),
                                       pattern_from_engine(e, Level::Rho, {parse("k[a]*3")})),
                    PreconditionViolated);  // xi must be a limit
}

TEST_CASE("construction suite emits only verified maps") {
    suites::SuiteResult r = suites::construction_suite();
    INFO(r.note);
    CHECK(r.cases >= 500);
    CHECK(r.failures == 0);
}
