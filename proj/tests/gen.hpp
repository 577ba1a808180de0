// Deterministic term generation over the comparable fragment of the
// notation (no omega-tower-vs-rho pairs, which the order refuses to decide).
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <ordpat/parse.hpp>

namespace ordpat::testgen {

inline const std::vector<Term>& pieces() {
    static const std::vector<Term> p = [] {
        std::vector<Term> v;
        v.push_back(nat_term(1));
        v.push_back(rho_term());
        v.push_back(alpha_term());
        for (std::uint64_t g = 1; g <= 4; ++g) v.push_back(kappa(Level::Rho, nat_term(g)));
        v.push_back(kappa(Level::Rho, rho_term()));
        v.push_back(kappa_alpha());
        v.push_back(nu(parse("w^w^0")));
        v.push_back(nu(parse("w^w^0*2")));
        return v;
    }();
    return p;
}

// Normal by construction: a sum of scaled indecomposable pieces.
inline Term random_term(std::mt19937_64& rng, int max_pieces = 3,
                        std::uint64_t max_coeff = 2) {
    std::uniform_int_distribution<std::size_t> pick(0, pieces().size() - 1);
    std::uniform_int_distribution<std::uint64_t> coeff(1, max_coeff);
    std::uniform_int_distribution<int> count(0, max_pieces);
    Term t = zero();
    const int n = count(rng);
    for (int i = 0; i < n; ++i) t = add(t, mul_nat(pieces()[pick(rng)], coeff(rng)));
    return t;
}

// The same monomials in a shuffled order; generally not in normal form.
inline Term shuffled_raw(std::mt19937_64& rng, const Term& t) {
    std::vector<Monomial> ms = t.monomials();
    std::shuffle(ms.begin(), ms.end(), rng);
    return Term{std::move(ms)};
}

}  // namespace ordpat::testgen
