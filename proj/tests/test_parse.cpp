#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <ordpat/parse.hpp>

#include "gen.hpp"

using namespace ordpat;

TEST_CASE("grammar forms") {
    CHECK(parse("0").is_zero());
    CHECK(parse("r") == rho_term());
    CHECK(parse("a") == alpha_term());
    CHECK(parse("w^0*7") == nat_term(7));
    CHECK(parse("k[w^0*2]") == kappa(Level::Rho, nat_term(2)));
    CHECK(parse("k[r,w^0*2]") == parse("k[w^0*2]"));  // k[x] abbreviates k[r,x]
    CHECK(parse("k[a,w^0]") == kappa(Level::Alpha, nat_term(1)));
    CHECK(parse(" k[a] * 2 + w^0 ") == add(mul_nat(kappa_alpha(), 2), nat_term(1)));
    CHECK(parse("(k[a]+w^0)*2") == parse("k[a]*2+w^0"));  // repetition, not distribution
    CHECK(parse("w^(w^0+w^0)") == parse("w^(w^0*2)"));
    CHECK(parse("v[w^w^0]*1") == nu(parse("w^w^0")));
    CHECK(parse("k[a]*0+w^0") == nat_term(1));
}

TEST_CASE("parse errors carry positions") {
    auto pos = [](const char* s) {
        try {
            parse(s);
        } catch (const ParseError& e) {
            return e.position;
        }
        return std::size_t(-1);
    };
    CHECK(pos("k[w^0") == 5);
    CHECK(pos("k[b,w^0]") == 2);
    CHECK(pos("w^0 w^0") == 4);
    CHECK(pos("+w^0") == 0);
    CHECK(pos("k[a]*x") == 5);
    CHECK(pos("") == 0);
    CHECK_THROWS_AS(parse("k[q]"), ParseError);
}

TEST_CASE("printer emits canonical spellings") {
    CHECK(to_string(zero()) == "0");
    CHECK(to_string(nat_term(3)) == "w^0*3");
    CHECK(to_string(mul_nat(kappa_alpha(), 2)) == "k[a]*2");
    CHECK(to_string(nu(parse("w^w^0"))) == "v[w^w^0]");
    CHECK(to_string(kappa(Level::Alpha, nat_term(1))) == "k[a,w^0]");
    CHECK(to_string(parse("w^(r+w^0)")) == "w^(r+w^0)");
    CHECK(to_string(parse("w^w^w^0")) == "w^w^w^0");
}

TEST_CASE("print/parse round trip on generated terms") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 3000; ++i) {
        Term t = testgen::random_term(rng, 4, 3);
        CAPTURE(to_string(t));
        CHECK(parse(to_string(t)) == t);
    }
}
