// Finite-dimensional gl_r data attached to the regular nilpotent element:
// basis matrices, the sl2-triple {L2, h, f}, the L_i / K_i / gamma_i bases,
// the Dynkin grading, and the Theta / Delta structure-constant tables.
#pragma once

#include <vector>

#include "agd/linalg.hpp"
#include "agd/scalar.hpp"

namespace agd {

using QMat = Mat<QuadScalar>;

class LieData {
  public:
    explicit LieData(int rank);

    int rank() const { return r_; }

    const QMat& L2() const { return L2_; }
    const QMat& h() const { return h_; }
    const QMat& f() const { return f_; }
    const QMat& L(int i) const { return L_.at(i); }
    const QMat& K(int i) const { return K_.at(i); }
    const QMat& gamma(int i) const { return gamma_.at(i); }
    // Dynkin grade: L_i and gamma_i sit in gr_{i-1} and gr_{-(i-1)}.
    int grade_L(int i) const { return i - 1; }

    // (1/I!) ad_{L2}^I gamma_i, defined for 0 <= I <= 2(i-1); the b-expansion
    // uses I <= i-1.
    const QMat& b_basis(int i, int I) const { return b_basis_.at(i).at(I); }
    // ad_f^J L_j, 0 <= J <= 2(j-1); the positive-side basis uses J <= j-1.
    const QMat& f_basis(int j, int J) const { return f_basis_.at(j).at(J); }

    // Theta_I^i = <(1/I!) ad_{L2}^I gamma_i, ad_f^I L_i> = (-1)^I (2i-2)!/(2i-I-2)!
    Rational theta(int i, int I) const;

    // Delta_j^{Jt} from [gamma_{r-1}, ad_f^J L_j] = sum_t Delta (1/m!) ad_{L2}^m gamma_t,
    // m = t + j - J - r. Zero when no such basis element exists.
    Rational delta_const(int j, int J, int t) const { return delta_.at(j).at(J).at(t); }

    QuadScalar pair(const QMat& a, const QMat& b) const { return trace_form(a, b); }
    // Pairing table of the orthogonality lemma.
    QuadScalar orthogonality(int i, int I, int j, int J) const;

    // Component of ad_h eigenvalue k (the k-th matrix diagonal).
    QMat dynkin_project(const QMat& g, int k) const;

    // Coefficient of (1/I!) ad_{L2}^I gamma_i in an element of b (+ extended
    // basis): pair against ad_f^I L_i and divide by Theta.
    template <class T>
    T b_coefficient(const Mat<T>& x, int i, int I) const {
        T num = trace_form_mixed(x, f_basis(i, I));
        return num * (Rational(1) / theta(i, I));
    }

    QMat eps(int i, int j) const;  // epsilon_{i,j}, 1-based
    QMat zero() const { return QMat(r_, r_); }

    QuadScalar q(long num, long den = 1) const { return QuadScalar(rat(num, den)); }

    template <class T>
    static T trace_form_mixed(const Mat<T>& x, const QMat& y) {
        T t{};
        for (int i = 0; i < x.rows(); ++i)
            for (int k = 0; k < x.cols(); ++k) {
                if (y(k, i).is_zero()) continue;
                t += x(i, k) * y(k, i);
            }
        return t;
    }

  private:
    void build_triple();
    void build_slice_basis();
    void build_delta();

    int r_;
    QMat L2_, h_, f_;
    std::vector<QMat> L_, K_, gamma_;                  // 1-based
    std::vector<std::vector<QMat>> b_basis_, f_basis_; // [i][I]
    std::vector<std::vector<std::vector<Rational>>> delta_;
};

// Structural self-checks used by tests: sl2 identities, centralizer
// dimensions, transversality, grading consistency.
bool check_sl2_identities(const LieData& g);
int centralizer_dim(const LieData& g, const QMat& x);
bool check_transversality(const LieData& g);

}  // namespace agd
