// Central invariants of the bihamiltonian structure: characteristic
// polynomial of the pencil, semisimplicity sampling, the vanishing-[1]
// hypothesis, and numeric evaluation of the c_i at exact rational samples.
#pragma once

#include <random>

#include "agd/bracket.hpp"

namespace agd {

// det(Omega2 - lambda * Omega1) as a polynomial in the chart variables and
// the formal lambda
DiffPoly char_poly(const Mat<DiffPoly>& Omega2, const Mat<DiffPoly>& Omega1);

// jet-free delta'' coefficients of both brackets must vanish
bool hypothesis_check(const BracketComponents& c2, const BracketComponents& c1);

struct CentralInvariantReport {
    std::map<Density, Rational> sample;
    std::vector<ComplexApprox> roots;   // a^1..a^r
    std::vector<ComplexApprox> values;  // c_1..c_r
    bool distinct = false;
};

// Evaluate the central invariants at one exact sample point; throws on a
// non-semisimple sample ("re-sample", roots closer than min_separation
// after scaling) or a degenerate Omega1.
CentralInvariantReport central_invariants(int r, const LocalBracket& B2t,
                                          const LocalBracket& B1t,
                                          const std::map<Density, Rational>& sample,
                                          RootChoice root, double min_separation = 1e-8);

// Rejection sampler: random small rationals until the roots separate. The
// separation demanded here is stricter than the bare semisimplicity cutoff
// so that the double-precision values stay accurate to ~1e-10.
CentralInvariantReport central_invariants_sampled(int r, const LocalBracket& B2t,
                                                  const LocalBracket& B1t, std::mt19937_64& rng,
                                                  RootChoice root, int max_tries = 50);

}  // namespace agd
