#include "agd/central.hpp"

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace agd {

namespace {

Density lambda_dens() { return Density{Fam::lambda, 0, 0}; }

using Cplx = std::complex<double>;

// coefficients of a lambda-only polynomial after the chart variables have
// been substituted away
std::vector<QuadScalar> lambda_coeffs(const DiffPoly& p, int deg) {
    std::vector<QuadScalar> out(size_t(deg) + 1, QuadScalar(rat(0)));
    JetVar lam(lambda_dens(), 0);
    for (auto& [mono, c] : p.terms()) {
        int k = 0;
        for (auto& [v, e] : mono) {
            if (v == lam)
                k = e;
            else
                throw std::domain_error("lambda_coeffs: non-lambda variable survived");
        }
        if (k > deg) throw std::domain_error("lambda_coeffs: degree overflow");
        out[size_t(k)] += c;
    }
    return out;
}

std::vector<Cplx> embed_coeffs(const std::vector<QuadScalar>& cs, RootChoice root) {
    std::vector<Cplx> out;
    for (auto& c : cs) out.push_back(c.embed(root).c());
    return out;
}

Cplx eval_poly(const std::vector<Cplx>& cs, Cplx x) {
    Cplx acc = 0.0;
    for (size_t i = cs.size(); i-- > 0;) acc = acc * x + cs[i];
    return acc;
}

std::vector<Cplx> companion_roots(const std::vector<Cplx>& cs) {
    int n = int(cs.size()) - 1;
    while (n > 0 && std::abs(cs[size_t(n)]) == 0.0) --n;
    if (n < 1) throw std::domain_error("companion_roots: degenerate polynomial");
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -cs[size_t(i)] / cs[size_t(n)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Cplx> roots;
    for (int i = 0; i < n; ++i) roots.push_back(es.eigenvalues()(i));
    return roots;
}

}  // namespace

DiffPoly char_poly(const Mat<DiffPoly>& Omega2, const Mat<DiffPoly>& Omega1) {
    const int n = Omega2.rows();
    DiffPoly lam = DiffPoly::var(lambda_dens());
    Mat<DiffPoly> M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = Omega2(i, j) - lam * Omega1(i, j);
    return det_expand(M);
}

bool hypothesis_check(const BracketComponents& c2, const BracketComponents& c1) {
    auto ok = [](const BracketComponents& c) {
        auto it = c.S.find(1);
        return it == c.S.end() || it->second.is_zero();
    };
    return ok(c2) && ok(c1);
}

CentralInvariantReport central_invariants(int r, const LocalBracket& B2t,
                                          const LocalBracket& B1t,
                                          const std::map<Density, Rational>& sample,
                                          RootChoice root, double min_separation) {
    GradingScheme g;
    BracketComponents c2 = decompose(B2t, g, 0);
    BracketComponents c1 = decompose(B1t, g, r - 1);
    if (!hypothesis_check(c2, c1))
        throw std::domain_error("central_invariants: [1]-level hypothesis fails");
    if (det_expand(c1.Omega).is_zero())
        throw std::domain_error("central_invariants: Omega1 degenerate");

    const auto& dens = B2t.densities();
    const int n = int(dens.size());
    auto S_of = [&](const BracketComponents& c) {
        auto it = c.S.find(2);
        return it == c.S.end() ? Mat<DiffPoly>(n, n) : it->second;
    };
    Mat<DiffPoly> S2 = S_of(c2), S1 = S_of(c1);

    DiffPoly Psi = char_poly(c2.Omega, c1.Omega);
    std::map<Density, DiffPoly> at_sample;
    for (auto& [d, v] : sample) at_sample[d] = DiffPoly::constant(QuadScalar(v));

    auto eval_num = [&](const DiffPoly& p) {
        return lambda_coeffs(p.substitute(at_sample), r);
    };

    CentralInvariantReport rep;
    rep.sample = sample;
    std::vector<Cplx> psi = embed_coeffs(eval_num(Psi), root);
    std::vector<std::vector<Cplx>> psi_k;
    for (int k = 0; k < n; ++k)
        psi_k.push_back(embed_coeffs(eval_num(Psi.jet_partial(JetVar(dens[size_t(k)], 0))), root));
    std::vector<Cplx> psi_lam =
        embed_coeffs(eval_num(Psi.jet_partial(JetVar(lambda_dens(), 0))), root);

    std::vector<Cplx> roots = companion_roots(psi);
    if (int(roots.size()) != r)
        throw std::domain_error("central_invariants: characteristic polynomial degenerated");
    double scale = 1.0;
    for (auto& a : roots) scale = std::max(scale, std::abs(a));
    rep.distinct = true;
    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j)
            if (std::abs(roots[i] - roots[j]) <= min_separation * scale) rep.distinct = false;
    if (!rep.distinct)
        throw std::domain_error("central_invariants: non-semisimple sample, re-sample");

    // numeric matrices at the sample
    auto eval_mat = [&](const Mat<DiffPoly>& M) {
        std::vector<std::vector<Cplx>> out(static_cast<size_t>(n),
                                           std::vector<Cplx>(static_cast<size_t>(n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                DiffPoly v = M(i, j).substitute(at_sample);
                if (!v.is_constant())
                    throw std::domain_error("central_invariants: unexpanded entry");
                out[size_t(i)][size_t(j)] = v.constant_term().embed(root).c();
            }
        return out;
    };
    auto S2n = eval_mat(S2), S1n = eval_mat(S1), O1n = eval_mat(c1.Omega);

    for (auto& a : roots) {
        std::vector<Cplx> gradPsi(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) gradPsi[size_t(k)] = eval_poly(psi_k[size_t(k)], a);
        Cplx dPsi = eval_poly(psi_lam, a);
        Cplx num = 0.0, den = 0.0;
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                num += gradPsi[size_t(k)] * gradPsi[size_t(l)] *
                       (S2n[size_t(k)][size_t(l)] - a * S1n[size_t(k)][size_t(l)]);
                den += gradPsi[size_t(k)] * gradPsi[size_t(l)] * O1n[size_t(k)][size_t(l)];
            }
        Cplx ci = (dPsi * dPsi) * num / (3.0 * den * den);
        rep.roots.push_back({a.real(), a.imag()});
        rep.values.push_back({ci.real(), ci.imag()});
    }
    return rep;
}

CentralInvariantReport central_invariants_sampled(int r, const LocalBracket& B2t,
                                                  const LocalBracket& B1t, std::mt19937_64& rng,
                                                  RootChoice root, int max_tries) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    for (int t = 0; t < max_tries; ++t) {
        std::map<Density, Rational> sample;
        for (auto& d : B2t.densities()) sample[d] = rat(num(rng), den(rng));
        try {
            return central_invariants(r, B2t, B1t, sample, root, 1e-3);
        } catch (const std::domain_error& e) {
            if (std::string(e.what()).find("re-sample") == std::string::npos) throw;
        }
    }
    throw std::domain_error("central_invariants_sampled: no semisimple sample found");
}

}  // namespace agd
