// Drinfeld-Sokolov gauge fixing on d_x + b + L2 and the reduced second
// bracket on the slice densities u^i, plus the Miura route that feeds
// Cartan-valued operators through the same gauge recursion.
#pragma once

#include <map>

#include "agd/bracket.hpp"
#include "agd/lie.hpp"

namespace agd {

struct GaugeSolution {
    int rank = 0;
    // w_I^i as differential polynomials in b, keyed by (i, I), I <= i - 2
    std::map<std::pair<int, int>, DiffPoly> w;
    // canonical densities u^i(b), keyed by i
    std::map<int, DiffPoly> u;
};

// Solve the gauge-fixing relation grade by grade from 0 down to -(r-1),
// splitting along gl_r^f + [n, L2]. Throws if any grade leaves a residual.
GaugeSolution gauge_fix(const LieData& g);

// Pushforward of the loop-algebra bracket along u(b), then restriction to
// the slice b_I^i -> delta_{I0} u^i. With `certify` set, every coefficient
// is checked to be gauge invariant by re-expanding the slice form through
// u(b) and comparing with the original differential polynomial.
LocalBracket reduced_bracket(const LieData& g, const GaugeSolution& gauge, bool certify);

struct WAlgebraReport {
    QuadScalar c;  // delta''' coefficient of {z2, z2}
};

// Shift z2 = u2 + (1/(2r)) (u1)^2 and verify the classical W-algebra
// identities; returns the central term.
WAlgebraReport w_algebra_check(const LieData& g, const LocalBracket& Bu);

// Expansion of the Cartan-valued operator in the b basis: rules sending each
// b_I^i to a linear combination of the p^k.
std::map<Density, DiffPoly> cartan_b_rules(const LieData& g);

// z^i(p): Miura densities. `z_of_u` is the trace chart forward map.
std::map<Density, DiffPoly> miura_densities(const LieData& g, const GaugeSolution& gauge,
                                            const std::map<Density, DiffPoly>& z_of_u);

}  // namespace agd
