#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ordpat/pattern.hpp>

#include "suites.hpp"

using namespace ordpat;

TEST_CASE("interval decomposition") {
    std::vector<Term> X;
    for (const char* s : {"k[a]*2+k[w^0]", "0", "k[a]*2", "w^0", "k[a]*3+r"})
        X.push_back(parse(s));
    IntervalDecomposition d = interval_decomposition(X);
    REQUIRE(d.M.size() == 3);
    CHECK(d.M[0].is_zero());
    CHECK(d.M[1] == parse("k[a]*2"));
    CHECK(d.M[2] == parse("k[a]*3"));
    CHECK(d.R[0] == std::vector<Term>{zero(), parse("w^0")});
    CHECK(d.R[1] == std::vector<Term>{zero(), parse("k[w^0]")});
    CHECK(d.R[2] == std::vector<Term>{parse("r")});
    std::sort(X.begin(), X.end(), lt);
    CHECK(d.reassemble() == X);
}

TEST_CASE("floor closure") {
    CHECK(is_closed({zero()}, kappa_alpha()));
    CHECK(is_closed({parse("k[a]")}, kappa_alpha()));  // offset-free block
    CHECK_FALSE(is_closed({parse("k[w^0]")}, kappa_alpha()));  // 0 missing
    CHECK(is_closed({zero(), parse("k[w^0]")}, kappa_alpha()));
    CHECK_FALSE(is_closed({parse("k[a]"), parse("k[a]+k[w^0]+w^0")}, rho_term()));
    CHECK(is_closed({parse("k[a]"), parse("k[a]+w^0")}, rho_term()));
    CHECK(is_closed({parse("k[a]"), parse("k[a]+k[w^0]"), parse("k[a]+k[w^0]+w^0")},
                    rho_term()));
    CHECK_THROWS_AS(is_closed({zero()}, parse("k[a]*2")), NotIndecomposable);
}

TEST_CASE("pattern validation") {
    FinitePattern p = reflexive_pattern({zero(), parse("w^0"), parse("k[w^0]")});
    p.validate();
    CHECK(p.total());

    FinitePattern bad = p;
    bad.leq2[0][1] = Rel::Yes;  // leq2 outside leq1
    CHECK_THROWS_AS(bad.validate(), PreconditionViolated);
    bad = p;
    bad.leq1[1][0] = Rel::Yes;  // against the term order
    CHECK_THROWS_AS(bad.validate(), PreconditionViolated);
}

TEST_CASE("engine patterns close transitively and stay honest") {
    Engine engine{StructureParams{}};
    FinitePattern p = pattern_from_engine(
        engine, Level::Rho,
        {parse("k[a]"), parse("k[a]*2"), parse("k[a]*3"), parse("v[w^w^0]")});
    p.validate();
    CHECK(p.provenance == Provenance::ComputedByEngine);
    CHECK(p.rel(1, 0, 1) == Rel::Yes);
    CHECK(p.rel(1, 0, 2) == Rel::Yes);  // nu_0 <=1 nu_1 <=1 nu_2, closed
    CHECK(p.rel(2, 0, 2) == Rel::Yes);
    CHECK(p.rel(1, 0, 3) == Rel::Unknown);
    CHECK_FALSE(p.total());
}

TEST_CASE("covering verification") {
    Engine engine{StructureParams{}};
    FinitePattern U = pattern_from_engine(
        engine, Level::Rho,
        {parse("k[a]"), parse("k[a]+k[w^0]"), parse("k[a]*2"), parse("k[a]*2+k[w^0]"),
         parse("k[a]*3")});
    auto sub = [&](std::initializer_list<const char*> names) {
        std::vector<Term> c;
        for (const char* n : names) c.push_back(parse(n));
        return pattern_from_engine(engine, Level::Rho, c);
    };

    CoveringMap good;
    good.source = sub({"k[a]", "k[a]+k[w^0]"});
    good.target_universe = U;
    good.map = {2, 3};  // slide one block up
    CHECK(verify_covering(good).ok);

    CoveringMap broken = good;
    broken.map = {1, 2};  // k[a]+k[w^0] <=1 next block start fails in the target
    CoveringCertificate c = verify_covering(broken);
    CHECK_FALSE(c.ok);
    CHECK_FALSE(c.violation.empty());

    CoveringMap not_monotone = good;
    not_monotone.map = {3, 2};
    CHECK_FALSE(verify_covering(not_monotone).ok);

    // an isomorphism must reflect and be onto
    CoveringMap iso = good;
    iso.kind = MapKind::Isomorphism;
    CHECK_FALSE(verify_covering(iso).ok);

    // obligations into undecided territory are reported, not guessed
    CoveringMap blind;
    blind.source = sub({"k[a]", "k[a]*2"});
    FinitePattern tiny = reflexive_pattern({parse("k[a]"), parse("k[a]*2")});
    tiny.leq1[0][1] = tiny.leq2[0][1] = Rel::Unknown;
    blind.target_universe = tiny;
    blind.map = {0, 1};
    CHECK_THROWS_AS(verify_covering(blind), TargetRelationUnknown);
}

TEST_CASE("exhaustive decomposition and closure laws") {
    suites::SuiteResult r = suites::decomposition_suite();
    INFO(r.note);
    CHECK(r.cases >= 4 * 20000);
    CHECK(r.failures == 0);
}
