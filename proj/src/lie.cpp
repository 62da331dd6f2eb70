#include "agd/lie.hpp"

#include <stdexcept>

namespace agd {

LieData::LieData(int rank) : r_(rank) {
    if (r_ < 2) throw std::domain_error("LieData: rank must be >= 2");
    build_triple();
    build_slice_basis();
    build_delta();
}

QMat LieData::eps(int i, int j) const {
    QMat m(r_, r_);
    m(i - 1, j - 1) = q(1);
    return m;
}

void LieData::build_triple() {
    L2_ = QMat(r_, r_);
    h_ = QMat(r_, r_);
    f_ = QMat(r_, r_);
    for (int i = 1; i <= r_ - 1; ++i) {
        L2_(i - 1, i) = q(1);
        f_(i, i - 1) = q(i * (r_ - i));
    }
    for (int i = 1; i <= r_; ++i) h_(i - 1, i - 1) = q(r_ - 2 * i + 1, 2);

    L_.assign(r_ + 1, zero());
    K_.assign(r_ + 1, zero());
    for (int i = 1; i <= r_; ++i) {
        QMat Li(r_, r_), Ki(r_, r_);
        for (int k = 1; k <= r_ - i + 1; ++k) Li(k - 1, i - 1 + k - 1) = q(1);
        for (int j = 1; j <= i - 1; ++j) Ki(r_ - i + j + 1 - 1, j - 1) = q(1);
        L_[i] = Li;
        K_[i] = Ki;
    }
}

void LieData::build_slice_basis() {
    const int n = r_ * r_;
    // ad_f as an n x n matrix acting on vectorized gl_r
    Mat<QuadScalar> adf(n, n);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j) {
            QMat e(r_, r_);
            e(i, j) = q(1);
            QMat c = commutator(f_, e);
            for (int a = 0; a < r_; ++a)
                for (int b = 0; b < r_; ++b) adf(a * r_ + b, i * r_ + j) = c(a, b);
        }
    auto kern = nullspace(adf);
    if (int(kern.size()) != r_)
        throw std::domain_error("slice basis: dim ker ad_f != r");

    // gamma_i = sum c_k N_k with <gamma_i, L_j> = delta_ij
    Mat<QuadScalar> pairings(r_, r_);
    std::vector<QMat> nmats;
    for (int k = 0; k < r_; ++k) {
        QMat nk(r_, r_);
        for (int a = 0; a < r_; ++a)
            for (int b = 0; b < r_; ++b) nk(a, b) = kern[k][a * r_ + b];
        nmats.push_back(nk);
    }
    gamma_.assign(r_ + 1, zero());
    for (int j = 1; j <= r_; ++j)
        for (int k = 0; k < r_; ++k) pairings(j - 1, k) = pair(nmats[k], L_[j]);
    for (int i = 1; i <= r_; ++i) {
        std::vector<QuadScalar> rhs(r_, q(0));
        rhs[i - 1] = q(1);
        std::vector<QuadScalar> coef;
        try {
            coef = solve_linear<QuadScalar, QuadScalar>(pairings, rhs);
        } catch (const std::domain_error&) {
            throw std::domain_error("slice basis: singular dual system");
        }
        QMat g(r_, r_);
        for (int k = 0; k < r_; ++k) g = g + nmats[k].scaled(coef[k]);
        gamma_[i] = g;
        // gamma_i must be an ad_h eigenvector of eigenvalue -(i-1)
        QMat resid = commutator(h_, g) + g.scaled(q(i - 1));
        if (!resid.is_zero())
            throw std::domain_error("slice basis: gamma grading violated");
    }

    // basis caches
    b_basis_.assign(r_ + 1, {});
    f_basis_.assign(r_ + 1, {});
    for (int i = 1; i <= r_; ++i) {
        std::vector<QMat> bb{gamma_[i]};
        std::vector<QMat> fb{L_[i]};
        for (int I = 1; I <= 2 * (i - 1); ++I) {
            bb.push_back(commutator(L2_, bb.back()).scaled(q(1, I)));
            fb.push_back(commutator(f_, fb.back()));
        }
        b_basis_[i] = std::move(bb);
        f_basis_[i] = std::move(fb);
    }
}

Rational LieData::theta(int i, int I) const {
    if (I < 0 || I > 2 * (i - 1)) return Rational(0);
    Rational v = factorial(2 * i - 2) / factorial(2 * i - I - 2);
    return (I % 2 == 0) ? v : -v;
}

QuadScalar LieData::orthogonality(int i, int I, int j, int J) const {
    return pair(b_basis(i, I), f_basis(j, J));
}

void LieData::build_delta() {
    delta_.assign(r_ + 1, {});
    for (int j = 1; j <= r_; ++j) {
        delta_[j].assign(j, {});
        for (int J = 0; J <= j - 1; ++J) {
            delta_[j][J].assign(r_ + 1, Rational(0));
            QMat lhs = commutator(gamma_[r_ - 1], f_basis(j, J));
            QMat recon(r_, r_);
            for (int t = 1; t <= r_; ++t) {
                int m = t + j - J - r_;
                if (m < 0 || m > 2 * (t - 1)) continue;
                QuadScalar c = b_coefficient(lhs, t, m);
                if (!c.is_rational())
                    throw std::domain_error("delta table: non-rational coefficient");
                delta_[j][J][t] = c.a();
                recon = recon + b_basis(t, m).scaled(c);
            }
            if (!(recon == lhs))
                throw std::domain_error("delta table: expansion residual nonzero");
        }
    }
}

QMat LieData::dynkin_project(const QMat& g, int k) const {
    QMat out(r_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < r_; ++j)
            if (j - i == k) out(i, j) = g(i, j);
    return out;
}

bool check_sl2_identities(const LieData& g) {
    QMat c1 = commutator(g.L2(), g.f()) - g.h().scaled(g.q(2));
    QMat c2 = commutator(g.h(), g.L2()) - g.L2();
    QMat c3 = commutator(g.h(), g.f()) + g.f();
    return c1.is_zero() && c2.is_zero() && c3.is_zero();
}

int centralizer_dim(const LieData& g, const QMat& x) {
    int r = g.rank(), n = r * r;
    Mat<QuadScalar> ad(n, n);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            QMat e(r, r);
            e(i, j) = g.q(1);
            QMat c = commutator(x, e);
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) ad(a * r + b, i * r + j) = c(a, b);
        }
    return n - rank_of(ad);
}

bool check_transversality(const LieData& g) {
    // gl_r^f + ad_{L2}(gl_r) spans gl_r: stack kernel basis of ad_f with the
    // image basis of ad_{L2} and check full rank.
    int r = g.rank(), n = r * r;
    std::vector<std::vector<QuadScalar>> cols;
    for (int i = 1; i <= r; ++i) {
        std::vector<QuadScalar> v(n);
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) v[a * r + b] = g.gamma(i)(a, b);
        cols.push_back(v);
    }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            QMat e(r, r);
            e(i, j) = g.q(1);
            QMat c = commutator(g.L2(), e);
            std::vector<QuadScalar> v(n);
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) v[a * r + b] = c(a, b);
            cols.push_back(v);
        }
    Mat<QuadScalar> m(n, int(cols.size()));
    for (int j = 0; j < int(cols.size()); ++j)
        for (int i = 0; i < n; ++i) m(i, j) = cols[j][i];
    return rank_of(m) == n;
}

}  // namespace agd
