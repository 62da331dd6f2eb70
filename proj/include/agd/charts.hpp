// The chart chain u -> z -> s -> t on the Slodowy slice: trace invariants,
// the alpha-twisted chart that linearizes the bracket in s^{r-1}, flat
// coordinates of the first metric, and transports of brackets and metrics.
#pragma once

#include <map>

#include "agd/bracket.hpp"
#include "agd/lie.hpp"

namespace agd {

struct Chart {
    std::string tag;                     // target chart name
    std::vector<Density> news, olds;
    std::map<Density, DiffPoly> forward; // new density -> polynomial in old
    std::map<Density, DiffPoly> inverse; // old density -> polynomial in new
};

// z^i = (1/i) Tr((L2 + sum u^i gamma_i)^i); verifies the normal form and
// builds the exact polynomial inverse.
Chart z_chart(const LieData& g);

// s^i = z^i for i < r, s^r = (r-1)/((r-1)+alpha r) (z^r + alpha z^1 z^{r-1}).
// For r = 2 this degenerates to the identity renaming (the pipeline's
// rank-2 bypass).
Chart s_chart(int r);

// Quasihomogeneous flat coordinates of Omega1: t^i = s^i + corrections of
// polynomial degree >= 2 solving the flat-coordinate equation, normalized so
// that Omega1(t) = (r-1) delta^{i+j, r+1}.
Chart flat_chart(int r, const Mat<DiffPoly>& Omega1, const std::vector<Mat<DiffPoly>>& Gamma1,
                 const std::vector<Density>& s_dens);

Chart compose(const Chart& first, const Chart& second);
Chart rename_chart(const std::vector<Density>& olds, const std::vector<Density>& news,
                   const std::string& tag);

LocalBracket transport_bracket(const LocalBracket& B, const Chart& chart);

// (2,0)-tensor transform of a jet-free matrix, re-expressed in the new chart.
Mat<DiffPoly> transport_metric(const Mat<DiffPoly>& Omega, const Chart& chart);

// Contravariant Christoffel symbols of a nondegenerate jet-free metric by a
// quasihomogeneous polynomial ansatz: Gamma[k](i,j) = Gamma^{ij}_k with
//   Gamma^{ij}_k + Gamma^{ji}_k = d_k Omega^{ij},
//   Omega^{is} Gamma^{jk}_s = Omega^{js} Gamma^{ik}_s.
// `coord_dens` are the chart coordinates (matrix indices and derivative
// directions); `mono_dens` span the ansatz monomials and may add a formal
// pencil parameter. `degree_shift` follows the metric's own shift (0 for
// Omega2, r-1 for Omega1).
std::vector<Mat<DiffPoly>> christoffels(const Mat<DiffPoly>& Omega,
                                        const std::vector<Density>& coord_dens,
                                        const std::vector<Density>& mono_dens,
                                        const GradingScheme& grading, int degree_shift);

std::vector<DiffPoly> weighted_monomials(const std::vector<Density>& dens,
                                         const GradingScheme& g, int degree,
                                         int min_poly_degree = 0);

// Riemann curvature R^{ijk}_l of a contravariant metric given with its
// Christoffel symbols; exact.
struct Curvature {
    int n = 0;
    std::vector<DiffPoly> R;  // flattened [i][j][k][l]
    DiffPoly& at(int i, int j, int k, int l) { return R[((i * n + j) * n + k) * n + l]; }
    const DiffPoly& at(int i, int j, int k, int l) const {
        return R[((i * n + j) * n + k) * n + l];
    }
    bool is_zero() const {
        for (auto& p : R)
            if (!p.is_zero()) return false;
        return true;
    }
};
Curvature curvature(const Mat<DiffPoly>& Omega, const std::vector<Mat<DiffPoly>>& Gamma,
                    const std::vector<Density>& dens);

struct LinearityReport {
    LocalBracket B1;          // Lie derivative along s^{r-1}
    bool lie_square_zero = false;
    bool nontrivial = false;
};

// Certifies that every entry of B (s-chart) is at most linear in s^{r-1},
// emits B1 and checks Lie^2 = 0 and B1 != 0.
LinearityReport linearity_certificate(const LocalBracket& Bs, const Density& lie_density);

}  // namespace agd
