// Local Poisson brackets between densities: each ordered pair (i <= j) holds
// a finite list of delta-derivative coefficients,
//     {d_i(x), d_j(y)} = sum_k T_k(x) delta^(k)(x - y),
// with delta^(k) = d^k/dx^k delta(x - y). The (j, i) entries are generated on
// demand by skew reflection.
#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "agd/diffpoly.hpp"
#include "agd/lie.hpp"

namespace agd {

using DeltaTerms = std::vector<DiffPoly>;  // index = delta-derivative order

// f(y) delta^(k)(x-y) = sum_j C(k,j) f^(j)(x) delta^(k-j)(x-y)
DeltaTerms delta_normalize(const DiffPoly& coeff_at_y, int k);
// inverse direction: f(x) delta^(k)(x-y) as y-based coefficients
DeltaTerms delta_to_y(const DiffPoly& coeff_at_x, int k);

// entry for (j,i) from the entry for (i,j)
DeltaTerms skew_reflect(const DeltaTerms& terms);

void trim_delta_terms(DeltaTerms& t);

class LocalBracket {
  public:
    LocalBracket() = default;
    LocalBracket(int rank, std::string chart, std::vector<Density> densities)
        : rank_(rank), chart_(std::move(chart)), dens_(std::move(densities)) {}

    int rank() const { return rank_; }
    const std::string& chart() const { return chart_; }
    const std::vector<Density>& densities() const { return dens_; }
    int density_pos(const Density& d) const;

    void set_entry(int i, int j, DeltaTerms terms);
    // entry for any index order; i > j goes through skew_reflect
    DeltaTerms entry(int i, int j) const;
    const std::map<std::pair<int, int>, DeltaTerms>& stored() const { return entries_; }

    bool is_zero() const { return entries_.empty(); }
    int max_delta_order() const;

    // diagonal entries must equal their own skew reflection; off-diagonal
    // storage is (i <= j) so nothing else can disagree
    bool skew_consistent() const;

    friend bool operator==(const LocalBracket& a, const LocalBracket& b) {
        return a.rank_ == b.rank_ && a.dens_ == b.dens_ && a.entries_ == b.entries_;
    }

  private:
    int rank_ = 0;
    std::string chart_;
    std::vector<Density> dens_;
    std::map<std::pair<int, int>, DeltaTerms> entries_;
};

// Pushforward along new densities given as differential polynomials in the
// old ones (the double Leibniz expansion with integration by parts). When
// `rewrite` is given, output coefficients are re-expressed through it;
// otherwise they stay in the old densities.
LocalBracket leibniz_pushforward(const LocalBracket& B, const std::vector<Density>& new_dens,
                                 const std::map<Density, DiffPoly>& forward,
                                 const std::map<Density, DiffPoly>* rewrite,
                                 const std::string& new_chart);

// Functional independence of the order-0 parts at random rational points
// (full rank of the Jacobian at any of `attempts` samples).
bool functionally_independent(const std::vector<DiffPoly>& exprs,
                              const std::vector<Density>& old_dens, std::mt19937_64& rng,
                              int attempts = 3);

struct BracketComponents {
    Mat<DiffPoly> F;                    // jet-free delta coefficient
    Mat<DiffPoly> Omega;                // jet-free delta' coefficient
    std::vector<Mat<DiffPoly>> Gamma;   // Gamma[k]: coefficient of (d_k)_x in the delta term
    std::map<int, Mat<DiffPoly>> S;     // S[k], k >= 1: jet-free delta^(k+1) coefficient
};

// Split a graded bracket into its dispersionless data. Verifies the degree
// law deg T_k = deg d_i + deg d_j - k - 1 - degree_shift, Omega symmetry and
// F skewness.
BracketComponents decompose(const LocalBracket& B, const GradingScheme& g, int degree_shift = 0);

// Differentiate every coefficient with respect to jet order 0 of `d`.
LocalBracket lie_derivative(const LocalBracket& B, const Density& d);

// Lie-Poisson bracket of the loop algebra restricted to b + the bilinear
// form term, in the (i, I) densities of the paper's b-expansion.
LocalBracket base_bracket_loop_gl(const LieData& g);
// Cartan restriction: {p^i, p^j} = delta^{ij} delta'
LocalBracket base_bracket_cartan(int r);

std::vector<Density> density_family(Fam fam, int r);
std::vector<Density> b_densities(int r);

}  // namespace agd
