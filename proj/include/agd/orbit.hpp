// Orbit-space shortcut: power-sum invariants of the standard S_r
// representation, the Gram matrix of their gradients rewritten as
// polynomials in the invariants, and Hessians of invariants.
#pragma once

#include "agd/charts.hpp"

namespace agd {

// zbar^i = (1/i) sum_k (p^k)^i, i = 1..r
std::vector<DiffPoly> power_sums(int r);

// Gram matrix sum_k d(zbar^i)/dp^k d(zbar^j)/dp^k, entries in p
Mat<DiffPoly> gram_metric_p(int r);

// the same matrix rewritten exactly in the invariants z^1..z^r
Mat<DiffPoly> gram_metric(int r);

// rewrite a symmetric quasihomogeneous polynomial in p as a polynomial in
// z^1..z^r by exact linear algebra over the weighted monomial basis
DiffPoly rewrite_symmetric(const DiffPoly& sym_p, int r);

Mat<DiffPoly> hessian_of_invariant(const DiffPoly& f, int r);

}  // namespace agd
