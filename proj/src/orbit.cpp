#include "agd/orbit.hpp"

#include <stdexcept>

namespace agd {

std::vector<DiffPoly> power_sums(int r) {
    std::vector<DiffPoly> out;
    for (int i = 1; i <= r; ++i) {
        DiffPoly s;
        for (int k = 1; k <= r; ++k) s += DiffPoly::var(Density{Fam::p, k, 0}).pow(i);
        out.push_back(s * rat(1, i));
    }
    return out;
}

Mat<DiffPoly> gram_metric_p(int r) {
    auto zb = power_sums(r);
    Mat<DiffPoly> G(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) {
            DiffPoly acc;
            for (int k = 1; k <= r; ++k) {
                JetVar pk(Fam::p, k, 0, 0);
                acc += zb[size_t(i)].jet_partial(pk) * zb[size_t(j)].jet_partial(pk);
            }
            G(i, j) = acc;
            G(j, i) = acc;
        }
    return G;
}

DiffPoly rewrite_symmetric(const DiffPoly& sym_p, int r) {
    if (sym_p.is_zero()) return DiffPoly();
    GradingScheme g;
    int degree = sym_p.quasi_degree(g);  // deg p^k = 1
    auto zdens = density_family(Fam::z, r);
    auto zb = power_sums(r);
    std::map<Density, DiffPoly> expand;
    for (int i = 1; i <= r; ++i) expand[zdens[size_t(i - 1)]] = zb[size_t(i - 1)];

    std::vector<DiffPoly> basis = weighted_monomials(zdens, g, degree, 0);
    const int ncoef = int(basis.size());
    std::map<Monomial, std::vector<QuadScalar>> rows;
    std::map<Monomial, QuadScalar> rhs;
    for (int c = 0; c < ncoef; ++c) {
        DiffPoly e = basis[size_t(c)].substitute(expand);
        for (auto& [mono, v] : e.terms()) {
            auto& row = rows[mono];
            if (row.empty()) row.assign(ncoef, QuadScalar(rat(0)));
            row[size_t(c)] += v;
        }
    }
    for (auto& [mono, v] : sym_p.terms()) rhs[mono] += v;
    std::vector<Monomial> keys;
    for (auto& [m, row] : rows) keys.push_back(m);
    for (auto& [m, v] : rhs)
        if (!rows.count(m)) keys.push_back(m);
    std::sort(keys.begin(), keys.end(), MonoCmp{});
    Mat<QuadScalar> A(int(keys.size()), ncoef);
    std::vector<QuadScalar> b(keys.size(), QuadScalar(rat(0)));
    for (int i = 0; i < int(keys.size()); ++i) {
        auto it = rows.find(keys[size_t(i)]);
        if (it != rows.end())
            for (int c = 0; c < ncoef; ++c) A(i, c) = it->second[size_t(c)];
        auto jt = rhs.find(keys[size_t(i)]);
        if (jt != rhs.end()) b[size_t(i)] = jt->second;
    }
    bool under = false;
    std::vector<QuadScalar> coef;
    try {
        coef = solve_linear<QuadScalar, QuadScalar>(A, b, &under);
    } catch (const std::domain_error&) {
        throw std::domain_error("rewrite_symmetric: polynomial is not symmetric");
    }
    DiffPoly out;
    for (int c = 0; c < ncoef; ++c) out += basis[size_t(c)] * coef[size_t(c)];
    // exactness: re-expansion must reproduce the input identically
    if (!(out.substitute(expand) == sym_p))
        throw std::domain_error("rewrite_symmetric: residual after rewriting");
    return out;
}

Mat<DiffPoly> gram_metric(int r) {
    Mat<DiffPoly> G = gram_metric_p(r);
    Mat<DiffPoly> Z(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) {
            Z(i, j) = rewrite_symmetric(G(i, j), r);
            Z(j, i) = Z(i, j);
        }
    return Z;
}

Mat<DiffPoly> hessian_of_invariant(const DiffPoly& f, int r) {
    Mat<DiffPoly> H(r, r);
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j)
            H(i - 1, j - 1) = f.jet_partial(JetVar(Fam::p, i, 0, 0)).jet_partial(JetVar(Fam::p, j, 0, 0));
    return H;
}

}  // namespace agd
