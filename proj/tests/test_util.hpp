#ifndef PFCELL_TEST_UTIL_HPP
#define PFCELL_TEST_UTIL_HPP

#include <random>

#include "pfcell/poly.hpp"

namespace pfcell_test {

using pfcell::Mono;
using pfcell::Poly;
using pfcell::Rat;

// All test randomness flows through explicitly seeded engines; raw draws
// only, to keep runs reproducible across standard libraries.
inline std::uint32_t draw(std::mt19937& rng, std::uint32_t bound) {
    return (std::uint32_t)(rng() % bound);
}

inline Rat rand_rat(std::mt19937& rng, int num_bound = 20, int den_bound = 12) {
    long num = (long)draw(rng, 2 * num_bound + 1) - num_bound;
    long den = 1 + draw(rng, den_bound);
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Rational in the open unit interval with margin.
inline Rat rand_unit(std::mt19937& rng, int grid = 997) {
    return Rat(1 + (long)draw(rng, grid - 2), grid);
}

inline Poly rand_poly(std::mt19937& rng, std::size_t nvars, unsigned max_deg,
                      unsigned max_terms) {
    Poly p(nvars);
    unsigned terms = 1 + draw(rng, max_terms);
    for (unsigned t = 0; t < terms; ++t) {
        Mono m(nvars, 0);
        unsigned budget = draw(rng, max_deg + 1);
        for (unsigned d = 0; d < budget; ++d) m[draw(rng, (std::uint32_t)nvars)] += 1;
        Rat c = rand_rat(rng);
        if (c == 0) c = 1;
        p.add_term(m, c);
    }
    return p;
}

}  // namespace pfcell_test

#endif
