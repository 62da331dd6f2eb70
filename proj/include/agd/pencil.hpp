// Flat pencils of metrics and the logarithmic Dubrovin-Frobenius layer:
// potential reconstruction from the pencil in flat coordinates, WDVV and
// Euler verification, intersection-form recovery, the degeneracy of the
// first AGD direction, and B-type equivalence over a quadratic tower.
#pragma once

#include <array>

#include "agd/charts.hpp"
#include "agd/tower.hpp"

namespace agd {

using TowerPoly = DiffPolyT<TowerScalar>;

TowerPoly to_tower(const DiffPoly& p);

struct FlatPencil {
    int rank = 0;
    std::string chart;
    std::vector<Density> dens;
    Mat<DiffPoly> Omega2, Omega1;
    std::vector<Mat<DiffPoly>> Gamma2, Gamma1;
};

// Christoffel symbols of Omega2 + lambda*Omega1 with a formal lambda of
// weight r-1; by uniqueness they must come out as Gamma2 + lambda*Gamma1.
// Returns the curvature of the lambda-pencil, which must vanish identically.
struct PencilCheck {
    bool christoffels_linear = false;
    bool curvature_zero = false;
};
PencilCheck check_flat_pencil(const FlatPencil& p);

struct FrobeniusPotential {
    int rank = 0;
    DiffPoly poly;         // quasihomogeneous of degree 2r in the t chart
    QuadScalar logcoeff;   // coefficient of (t^r)^2 log t^r
};

// Solve for the potential of the pencil in flat coordinates: f^k from the
// Christoffel Hessians, F^k = (r-1)/(k-1) f^k, then a degree-2r ansatz for
// D^k F = F^k with the log coefficient pinned by Omega2^{11}.
FrobeniusPotential reconstruct_potential(const FlatPencil& pencil_t);

struct WdvvReport {
    bool ok = true;
    std::array<int, 4> counterexample{};  // (i, j, q, n) on failure, 1-based
};
WdvvReport wdvv_check(const FrobeniusPotential& F);

struct EulerReport {
    bool poly_quasihomogeneous = false;
    bool euler_residual_ok = false;  // Lie_E F - (2r/(r-1)) F = r/(2(r-1)^2) (t^r)^2
    bool unit_ok = false;            // C_{r-1}^{ij} = Omega1^{ij}
    bool c11_ok = false;             // C^{11}_k = (r-1)/t^r delta_k^r
};
EulerReport euler_and_unit_check(const FrobeniusPotential& F);

// Lie_E applied entrywise to Omega1^{ik} Omega1^{jm} d_m d_k F; the result
// must be the pencil's Omega2(t).
Mat<DiffPoly> intersection_recover(const FrobeniusPotential& F);

// WDVV restated: the multiplication matrices (C_k)^i_j pairwise commute.
bool multiplication_matrices_commute(const FrobeniusPotential& F);

struct DegeneracyReport {
    bool linear = false;          // bracket at most linear in the top density
    bool first_row_zero = false;  // d_{s^r} Omega2(s) has zero first row
    bool det_zero = false;        // hence zero determinant
};
DegeneracyReport first_agd_degeneracy(const LocalBracket& Bs, const GradingScheme& g,
                                      const Density& top_density);

struct PotentialData {
    int rank = 0;
    TowerPoly poly;
    TowerScalar logcoeff;
};
PotentialData to_tower(const FrobeniusPotential& F);

struct EquivalenceReport {
    bool metric_proportional = false;
    TowerScalar scale;
    bool algebra_isomorphic = false;
    bool ok() const { return metric_proportional && algebra_isomorphic; }
};

// Diagonal map t~^i = diag_i t^i between two potentials with unit index
// r-1: checks phi* Pi~ = c Pi and the structure-constant conjugation
// identity, exactly, over the tower.
EquivalenceReport equivalence_check(const PotentialData& ours, const PotentialData& theirs,
                                    const std::vector<TowerScalar>& diag);

// Literal B-type reference potentials (unit index r-1).
PotentialData btype_potential(int r);

}  // namespace agd
