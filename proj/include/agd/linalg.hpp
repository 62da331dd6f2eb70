// Small dense matrices over exact coefficient types, plus the handful of
// exact linear-algebra routines the pipeline needs: Gaussian elimination
// with field pivots, nullspaces, ranks, and permutation-expansion
// determinants for polynomial entries.
#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace agd {

template <class T>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols, T fill = T())
        : rows_(rows), cols_(cols), a_(size_t(rows) * cols, fill) {}

    static Mat identity(int n, T one) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    friend Mat operator+(const Mat& x, const Mat& y) {
        Mat r(x.rows_, x.cols_);
        for (size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = x.a_[k] + y.a_[k];
        return r;
    }
    friend Mat operator-(const Mat& x, const Mat& y) {
        Mat r(x.rows_, x.cols_);
        for (size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = x.a_[k] - y.a_[k];
        return r;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        if (x.cols_ != y.rows_) throw std::domain_error("Mat: shape mismatch");
        Mat r(x.rows_, y.cols_);
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const T& xik = x(i, k);
                if (xik.is_zero()) continue;
                for (int j = 0; j < y.cols_; ++j) {
                    if (y(k, j).is_zero()) continue;
                    r(i, j) += xik * y(k, j);
                }
            }
        return r;
    }
    template <class C>
    Mat scaled(const C& c) const {
        Mat r(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * c;
        return r;
    }
    Mat operator-() const {
        Mat r(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = -a_[k];
        return r;
    }
    Mat transpose() const {
        Mat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    friend bool operator==(const Mat& x, const Mat& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
        for (size_t k = 0; k < x.a_.size(); ++k)
            if (!(x.a_[k] == y.a_[k])) return false;
        return true;
    }
    bool is_zero() const {
        for (auto& v : a_)
            if (!v.is_zero()) return false;
        return true;
    }

    T trace() const {
        T t{};
        for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

  private:
    int rows_, cols_;
    std::vector<T> a_;
};

template <class T>
Mat<T> commutator(const Mat<T>& x, const Mat<T>& y) {
    return x * y - y * x;
}

// <A, B> = Tr(A B); on basis matrices this is the paper's bilinear form.
template <class T>
T trace_form(const Mat<T>& x, const Mat<T>& y) {
    T t{};
    for (int i = 0; i < x.rows(); ++i)
        for (int k = 0; k < x.cols(); ++k) {
            if (x(i, k).is_zero() || y(k, i).is_zero()) continue;
            t += x(i, k) * y(k, i);
        }
    return t;
}

// Gaussian elimination over a field F with module-valued right-hand sides
// (V = F, or V = a polynomial type scaled by F). Throws if the system is
// singular or inconsistent; `underdetermined` reports free columns.
template <class F, class V>
std::vector<V> solve_linear(Mat<F> A, std::vector<V> rhs, bool* underdetermined = nullptr) {
    const int n = A.rows(), m = A.cols();
    if (int(rhs.size()) != n) throw std::domain_error("solve_linear: rhs size");
    std::vector<int> pivot_col_of_row;
    std::vector<bool> col_used(m, false);
    int row = 0;
    for (int col = 0; col < m && row < n; ++col) {
        int piv = -1;
        for (int i = row; i < n; ++i)
            if (!A(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row) {
            for (int j = 0; j < m; ++j) std::swap(A(row, j), A(piv, j));
            std::swap(rhs[row], rhs[piv]);
        }
        F inv = A(row, col).inverse();
        for (int j = 0; j < m; ++j) A(row, j) = A(row, j) * inv;
        rhs[row] = rhs[row] * inv;
        for (int i = 0; i < n; ++i) {
            if (i == row || A(i, col).is_zero()) continue;
            F factor = A(i, col);
            for (int j = 0; j < m; ++j) A(i, j) = A(i, j) - factor * A(row, j);
            rhs[i] = rhs[i] - factor * rhs[row];
        }
        col_used[col] = true;
        pivot_col_of_row.push_back(col);
        ++row;
    }
    for (int i = row; i < n; ++i)
        if (!rhs[i].is_zero()) throw std::domain_error("solve_linear: inconsistent system");
    bool under = false;
    for (int j = 0; j < m; ++j)
        if (!col_used[j]) under = true;
    if (underdetermined)
        *underdetermined = under;
    else if (under)
        throw std::domain_error("solve_linear: underdetermined system");
    std::vector<V> x(m, V{});
    for (int i = 0; i < row; ++i) x[pivot_col_of_row[i]] = rhs[i];
    return x;
}

template <class F>
int rank_of(Mat<F> A) {
    const int n = A.rows(), m = A.cols();
    int row = 0;
    for (int col = 0; col < m && row < n; ++col) {
        int piv = -1;
        for (int i = row; i < n; ++i)
            if (!A(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < m; ++j) std::swap(A(row, j), A(piv, j));
        F inv = A(row, col).inverse();
        for (int j = 0; j < m; ++j) A(row, j) = A(row, j) * inv;
        for (int i = 0; i < n; ++i) {
            if (i == row || A(i, col).is_zero()) continue;
            F factor = A(i, col);
            for (int j = 0; j < m; ++j) A(i, j) = A(i, j) - factor * A(row, j);
        }
        ++row;
    }
    return row;
}

// Basis of the right nullspace, one column per free variable, deterministic.
template <class F>
std::vector<std::vector<F>> nullspace(Mat<F> A) {
    const int n = A.rows(), m = A.cols();
    std::vector<int> pivot_of_col(m, -1);
    int row = 0;
    for (int col = 0; col < m && row < n; ++col) {
        int piv = -1;
        for (int i = row; i < n; ++i)
            if (!A(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < m; ++j) std::swap(A(row, j), A(piv, j));
        F inv = A(row, col).inverse();
        for (int j = 0; j < m; ++j) A(row, j) = A(row, j) * inv;
        for (int i = 0; i < n; ++i) {
            if (i == row || A(i, col).is_zero()) continue;
            F factor = A(i, col);
            for (int j = 0; j < m; ++j) A(i, j) = A(i, j) - factor * A(row, j);
        }
        pivot_of_col[col] = row;
        ++row;
    }
    std::vector<std::vector<F>> basis;
    for (int col = 0; col < m; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        std::vector<F> v(m, F{});
        v[col] = F(1);
        for (int c = 0; c < m; ++c)
            if (pivot_of_col[c] >= 0) v[c] = -A(pivot_of_col[c], col);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Field inverse of a square matrix.
template <class F>
Mat<F> inverse(const Mat<F>& A) {
    const int n = A.rows();
    Mat<F> aug = A;
    Mat<F> inv = Mat<F>::identity(n, F(1));
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!aug(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) throw std::domain_error("inverse: singular matrix");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(aug(col, j), aug(piv, j));
                std::swap(inv(col, j), inv(piv, j));
            }
        F s = aug(col, col).inverse();
        for (int j = 0; j < n; ++j) {
            aug(col, j) = aug(col, j) * s;
            inv(col, j) = inv(col, j) * s;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || aug(i, col).is_zero()) continue;
            F factor = aug(i, col);
            for (int j = 0; j < n; ++j) {
                aug(i, j) = aug(i, j) - factor * aug(col, j);
                inv(i, j) = inv(i, j) - factor * inv(col, j);
            }
        }
    }
    return inv;
}

// Determinant via permutation expansion; fine for ring-valued entries at the
// desk-scale sizes used here (r <= 6).
template <class T>
T det_expand(const Mat<T>& A) {
    const int n = A.rows();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    T result{};
    int sign = 1;
    // Heap's algorithm-free approach: iterate permutations in lexicographic
    // order and track parity by counting inversions.
    std::function<int(const std::vector<int>&)> parity = [](const std::vector<int>& p) {
        int inv = 0;
        for (size_t i = 0; i < p.size(); ++i)
            for (size_t j = i + 1; j < p.size(); ++j)
                if (p[i] > p[j]) ++inv;
        return (inv % 2 == 0) ? 1 : -1;
    };
    do {
        T prod = A(0, perm[0]);
        bool zero = prod.is_zero();
        for (int i = 1; i < n && !zero; ++i) {
            if (A(i, perm[i]).is_zero()) {
                zero = true;
                break;
            }
            prod = prod * A(i, perm[i]);
        }
        if (!zero) {
            sign = parity(perm);
            if (sign > 0)
                result += prod;
            else
                result -= prod;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return result;
}

}  // namespace agd
