#include "agd/pencil.hpp"

#include <stdexcept>

namespace agd {

namespace {

Density t_dens(int i) { return Density{Fam::t, i, 0}; }
Density lambda_dens() { return Density{Fam::lambda, 0, 0}; }

// Euler operator with weights w_i = i on t^i (integer-scaled variant used
// for quasihomogeneous integration)
DiffPoly euler_weighted(const DiffPoly& p, int r) {
    DiffPoly acc;
    for (int i = 1; i <= r; ++i)
        acc += DiffPoly::var(t_dens(i)) * p.jet_partial(JetVar(t_dens(i), 0)) * rat(i);
    return acc;
}

DiffPoly d_t(const DiffPoly& p, int i) { return p.jet_partial(JetVar(t_dens(i), 0)); }

}  // namespace

TowerPoly to_tower(const DiffPoly& p) {
    TowerPoly out;
    for (auto& [m, c] : p.terms()) out.add_term(m, TowerScalar(c));
    return out;
}

PotentialData to_tower(const FrobeniusPotential& F) {
    return PotentialData{F.rank, to_tower(F.poly), TowerScalar(F.logcoeff)};
}

PencilCheck check_flat_pencil(const FlatPencil& p) {
    const int r = p.rank;
    GradingScheme g{.lambda_degree = r - 1};
    std::vector<Density> mono_dens = p.dens;
    mono_dens.push_back(lambda_dens());

    DiffPoly lam = DiffPoly::var(lambda_dens());
    Mat<DiffPoly> Olam(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) Olam(i, j) = p.Omega2(i, j) + lam * p.Omega1(i, j);

    auto Gamma_lam = christoffels(Olam, p.dens, mono_dens, g, 0);

    PencilCheck out;
    out.christoffels_linear = true;
    for (int k = 0; k < r && out.christoffels_linear; ++k)
        for (int i = 0; i < r && out.christoffels_linear; ++i)
            for (int j = 0; j < r; ++j) {
                DiffPoly expect = p.Gamma2[k](i, j) + lam * p.Gamma1[k](i, j);
                if (!(Gamma_lam[k](i, j) == expect)) {
                    out.christoffels_linear = false;
                    break;
                }
            }
    out.curvature_zero = curvature(Olam, Gamma_lam, p.dens).is_zero();
    return out;
}

FrobeniusPotential reconstruct_potential(const FlatPencil& pencil_t) {
    const int r = pencil_t.rank;
    GradingScheme g;

    // flat coordinates are normalized: Omega1(t) = (r-1) antidiagonal
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            DiffPoly want;
            if (i + j == r - 1) want = DiffPoly::constant(QuadScalar(rat(r - 1)));
            if (!(pencil_t.Omega1(i, j) == want))
                throw std::domain_error("reconstruct_potential: pencil is not in flat-normalized coordinates");
        }

    // f^k from the Hessians Pi_{mi} Gamma^{ik}_s, k = 2..r
    std::vector<DiffPoly> Fk(r + 1);  // index k
    for (int k = 2; k <= r; ++k) {
        Mat<DiffPoly> H(r, r);
        for (int m = 1; m <= r; ++m)
            for (int s = 1; s <= r; ++s)
                H(m - 1, s - 1) = pencil_t.Gamma2[s - 1](r + 1 - m - 1, k - 1) * rat(1, r - 1);
        if (!(H == H.transpose()))
            throw std::domain_error("reconstruct_potential: Hessian of f^" + std::to_string(k) +
                                    " is not symmetric (integrability failure)");
        const int d = k + r - 1;
        // gradient by quasihomogeneous integration, then the function itself
        std::vector<DiffPoly> grad(r + 1);
        for (int s = 1; s <= r; ++s) {
            if (d == s) throw std::domain_error("reconstruct_potential: degenerate Euler weight");
            DiffPoly acc;
            for (int m = 1; m <= r; ++m) acc += DiffPoly::var(t_dens(m)) * H(m - 1, s - 1) * rat(m);
            grad[s] = acc * rat(1, d - s);
        }
        DiffPoly f;
        for (int s = 1; s <= r; ++s) f += DiffPoly::var(t_dens(s)) * grad[s] * rat(s, d);
        for (int m = 1; m <= r; ++m)
            for (int s = 1; s <= r; ++s)
                if (!(d_t(d_t(f, m), s) == H(m - 1, s - 1)))
                    throw std::domain_error(
                        "reconstruct_potential: Hessian integration failed for f^" +
                        std::to_string(k));
        Fk[k] = f * rat(r - 1, k - 1);
    }

    // D^i F^j = D^j F^i with D^i = (r-1) d_{r+1-i}
    for (int i = 2; i <= r; ++i)
        for (int j = i + 1; j <= r; ++j)
            if (!(d_t(Fk[j], r + 1 - i) == d_t(Fk[i], r + 1 - j)))
                throw std::domain_error("reconstruct_potential: D^i F^j != D^j F^i");

    // degree-2r ansatz; (t^r)^2 is excluded (normalized to zero), the log
    // term never enters D^k for k != 1
    std::vector<Density> tlist = density_family(Fam::t, r);
    DiffPoly trsq = DiffPoly::var(t_dens(r)) * DiffPoly::var(t_dens(r));
    std::vector<DiffPoly> basis;
    for (auto& m : weighted_monomials(tlist, g, 2 * r, 0))
        if (!(m == trsq)) basis.push_back(m);
    const int ncoef = int(basis.size());

    // one block of equations per k: (r-1) d_{r+1-k} (ansatz) = F^k
    std::vector<Mat<QuadScalar>> blocksA;
    std::vector<std::vector<QuadScalar>> blocksB;
    int total_rows = 0;
    for (int k = 2; k <= r; ++k) {
        std::map<Monomial, std::vector<QuadScalar>> rws;
        std::map<Monomial, QuadScalar> rh;
        for (int col = 0; col < ncoef; ++col) {
            DiffPoly e = d_t(basis[size_t(col)], r + 1 - k) * rat(r - 1);
            for (auto& [mono, c] : e.terms()) {
                auto& row = rws[mono];
                if (row.empty()) row.assign(ncoef, QuadScalar(rat(0)));
                row[size_t(col)] += c;
            }
        }
        for (auto& [mono, c] : Fk[k].terms()) rh[mono] += c;
        std::vector<Monomial> keys;
        for (auto& [m, row] : rws) keys.push_back(m);
        for (auto& [m, v] : rh)
            if (!rws.count(m)) keys.push_back(m);
        std::sort(keys.begin(), keys.end(), MonoCmp{});
        Mat<QuadScalar> A(int(keys.size()), ncoef);
        std::vector<QuadScalar> b(keys.size(), QuadScalar(rat(0)));
        for (int i = 0; i < int(keys.size()); ++i) {
            auto it = rws.find(keys[size_t(i)]);
            if (it != rws.end())
                for (int c = 0; c < ncoef; ++c) A(i, c) = it->second[size_t(c)];
            auto jt = rh.find(keys[size_t(i)]);
            if (jt != rh.end()) b[size_t(i)] = jt->second;
        }
        blocksA.push_back(A);
        blocksB.push_back(b);
        total_rows += A.rows();
    }
    Mat<QuadScalar> A(total_rows, ncoef);
    std::vector<QuadScalar> b(size_t(total_rows), QuadScalar(rat(0)));
    int at = 0;
    for (size_t blk = 0; blk < blocksA.size(); ++blk) {
        for (int i = 0; i < blocksA[blk].rows(); ++i, ++at) {
            for (int c = 0; c < ncoef; ++c) A(at, c) = blocksA[blk](i, c);
            b[size_t(at)] = blocksB[blk][size_t(i)];
        }
    }
    std::vector<QuadScalar> coef;
    try {
        coef = solve_linear<QuadScalar, QuadScalar>(A, b);
    } catch (const std::domain_error& e) {
        throw std::domain_error(std::string("reconstruct_potential: ansatz failed: ") + e.what());
    }
    FrobeniusPotential F;
    F.rank = r;
    for (int c = 0; c < ncoef; ++c) F.poly += basis[size_t(c)] * coef[size_t(c)];

    // log coefficient from Omega2^{11} = Lie_E((r-1)^2 d_r d_r F)
    const DiffPoly& o11 = pencil_t.Omega2(0, 0);
    if (!o11.is_constant())
        throw std::domain_error("reconstruct_potential: Omega2^{11} is not constant");
    F.logcoeff = o11.constant_term() * rat(1, 2 * r * (r - 1));

    // normalization invariant: d_{t^{r-1}} F = (1/2) Pi_{ij} t^i t^j
    DiffPoly want;
    for (int i = 1; i <= r; ++i)
        want += DiffPoly::var(t_dens(i)) * DiffPoly::var(t_dens(r + 1 - i)) * rat(1, 2 * (r - 1));
    if (!(d_t(F.poly, r - 1) == want))
        throw std::domain_error("reconstruct_potential: unit normalization failed");
    return F;
}

namespace {

// t^r * third derivative of the full potential (log term included)
DiffPoly cleared_third(const FrobeniusPotential& F, int i, int j, int k) {
    DiffPoly v = d_t(d_t(d_t(F.poly, i), j), k) * DiffPoly::var(t_dens(F.rank));
    if (i == F.rank && j == F.rank && k == F.rank)
        v += DiffPoly::constant(F.logcoeff * rat(2));
    return v;
}

}  // namespace

WdvvReport wdvv_check(const FrobeniusPotential& F) {
    const int r = F.rank;
    // A_ijk = t^r d_i d_j d_k F (cleared); contraction with Omega1 = (r-1) antidiag
    std::vector<DiffPoly> A(size_t(r + 1) * (r + 1) * (r + 1));
    auto at = [&](int i, int j, int k) -> DiffPoly& {
        return A[size_t((i * (r + 1) + j) * (r + 1) + k)];
    };
    for (int i = 1; i <= r; ++i)
        for (int j = i; j <= r; ++j)
            for (int k = j; k <= r; ++k) {
                DiffPoly v = cleared_third(F, i, j, k);
                at(i, j, k) = v;
                at(i, k, j) = v;
                at(j, i, k) = v;
                at(j, k, i) = v;
                at(k, i, j) = v;
                at(k, j, i) = v;
            }
    WdvvReport rep;
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j)
            for (int q = 1; q <= r; ++q)
                for (int n = i + 1; n <= r; ++n) {
                    DiffPoly lhs, rhs;
                    for (int k = 1; k <= r; ++k) {
                        lhs += at(i, j, k) * at(r + 1 - k, q, n) * rat(r - 1);
                        rhs += at(n, j, k) * at(r + 1 - k, q, i) * rat(r - 1);
                    }
                    if (!(lhs == rhs)) {
                        rep.ok = false;
                        rep.counterexample = {i, j, q, n};
                        return rep;
                    }
                }
    return rep;
}

EulerReport euler_and_unit_check(const FrobeniusPotential& F) {
    const int r = F.rank;
    EulerReport rep;
    // E(poly) = (2r/(r-1)) poly, i.e. weighted degree 2r throughout
    rep.poly_quasihomogeneous = (euler_weighted(F.poly, r) * rat(1, r - 1) ==
                                 F.poly * rat(2 * r, r - 1));
    rep.euler_residual_ok = (F.logcoeff * rat(r, r - 1) == QuadScalar(rat(r, 2 * (r - 1) * (r - 1))));
    rep.unit_ok = true;
    for (int m = 1; m <= r && rep.unit_ok; ++m)
        for (int n = 1; n <= r; ++n) {
            DiffPoly want;
            if (m + n == r + 1) want = DiffPoly::constant(QuadScalar(rat(1, r - 1)));
            if (!(d_t(d_t(d_t(F.poly, r - 1), m), n) == want)) {
                rep.unit_ok = false;
                break;
            }
        }
    rep.c11_ok = (F.logcoeff * rat(2 * (r - 1) * (r - 1)) == QuadScalar(rat(r - 1)));
    for (int k = 1; k <= r && rep.c11_ok; ++k)
        if (!d_t(d_t(d_t(F.poly, r), r), k).is_zero()) rep.c11_ok = false;
    return rep;
}

Mat<DiffPoly> intersection_recover(const FrobeniusPotential& F) {
    const int r = F.rank;
    Mat<DiffPoly> out(r, r);
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= r; ++j) {
            DiffPoly T = d_t(d_t(F.poly, r + 1 - i), r + 1 - j) * rat((r - 1) * (r - 1));
            // E acts on each entry as a derivation with weights m/(r-1)
            out(i - 1, j - 1) = euler_weighted(T, r) * rat(1, r - 1);
        }
    // the log block contributes a constant to the (1,1) entry
    out(0, 0) += DiffPoly::constant(F.logcoeff * rat(2 * r * (r - 1)));
    return out;
}

bool multiplication_matrices_commute(const FrobeniusPotential& F) {
    const int r = F.rank;
    // M_k(i,j) = t^r (C_k)^i_j = (r-1) A_{k, r+1-i, j}
    std::vector<Mat<DiffPoly>> M(size_t(r + 1), Mat<DiffPoly>(r, r));
    for (int k = 1; k <= r; ++k)
        for (int i = 1; i <= r; ++i)
            for (int j = 1; j <= r; ++j)
                M[size_t(k)](i - 1, j - 1) = cleared_third(F, k, r + 1 - i, j) * rat(r - 1);
    for (int a = 1; a <= r; ++a)
        for (int b = a + 1; b <= r; ++b)
            if (!(M[size_t(a)] * M[size_t(b)] == M[size_t(b)] * M[size_t(a)])) return false;
    return true;
}

DegeneracyReport first_agd_degeneracy(const LocalBracket& Bs, const GradingScheme& g,
                                      const Density& top_density) {
    DegeneracyReport rep;
    JetVar v(top_density, 0);
    rep.linear = true;
    for (auto& [ij, terms] : Bs.stored())
        for (auto& t : terms)
            if (!t.jet_partial(v).jet_partial(v).is_zero()) rep.linear = false;
    BracketComponents comp = decompose(Bs, g);
    const int n = int(Bs.densities().size());
    Mat<DiffPoly> D(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) D(i, j) = comp.Omega(i, j).jet_partial(v);
    rep.first_row_zero = true;
    for (int j = 0; j < n; ++j)
        if (!D(0, j).is_zero()) rep.first_row_zero = false;
    rep.det_zero = det_expand(D).is_zero();
    return rep;
}

EquivalenceReport equivalence_check(const PotentialData& ours, const PotentialData& theirs,
                                    const std::vector<TowerScalar>& diag) {
    const int r = ours.rank;
    if (theirs.rank != r || int(diag.size()) != r)
        throw std::domain_error("equivalence_check: rank mismatch");
    auto dpt = [&](const TowerPoly& p, int i) {
        return p.jet_partial(JetVar(t_dens(i), 0));
    };

    // flat metrics from the unit direction
    auto metric_of = [&](const TowerPoly& poly) {
        Mat<TowerScalar> Pi(r, r);
        for (int m = 1; m <= r; ++m)
            for (int n = 1; n <= r; ++n) {
                TowerPoly e = dpt(dpt(dpt(poly, r - 1), m), n);
                if (!e.is_constant())
                    throw std::domain_error("equivalence_check: flat metric is not constant");
                Pi(m - 1, n - 1) = e.constant_term();
            }
        return Pi;
    };
    Mat<TowerScalar> Pi = metric_of(ours.poly);
    Mat<TowerScalar> Pit = metric_of(theirs.poly);

    EquivalenceReport rep;
    // phi^* Pi~ = c Pi with phi diagonal
    bool found = false;
    TowerScalar c;
    rep.metric_proportional = true;
    for (int i = 0; i < r && rep.metric_proportional; ++i)
        for (int j = 0; j < r; ++j) {
            TowerScalar lhs = diag[size_t(i)] * diag[size_t(j)] * Pit(i, j);
            if (!found && !Pi(i, j).is_zero()) {
                c = lhs * Pi(i, j).inverse();
                found = true;
            }
            if (!(lhs == c * Pi(i, j))) {
                rep.metric_proportional = false;
                break;
            }
        }
    if (found) rep.scale = c;
    if (c.is_zero()) rep.metric_proportional = false;

    // structure constants, cleared by t^r (and t~^r = d_r t^r)
    Mat<TowerScalar> Om = inverse(Pi);
    Mat<TowerScalar> Omt = inverse(Pit);
    auto cleared = [&](const PotentialData& P, int i, int j, int k) {
        TowerPoly v = dpt(dpt(dpt(P.poly, i), j), k) * TowerPoly::var(t_dens(P.rank));
        if (i == r && j == r && k == r) v += TowerPoly::constant(P.logcoeff * rat(2));
        return v;
    };
    std::map<Density, TowerPoly> scale_rules;
    for (int i = 1; i <= r; ++i)
        scale_rules[t_dens(i)] = TowerPoly::var(t_dens(i)) * diag[size_t(i - 1)];

    rep.algebra_isomorphic = true;
    for (int i = 1; i <= r && rep.algebra_isomorphic; ++i)
        for (int j = i; j <= r && rep.algebra_isomorphic; ++j)
            for (int m = 1; m <= r; ++m) {
                TowerPoly lhs, rhs_cleared;
                for (int p = 1; p <= r; ++p) {
                    if (!Om(m - 1, p - 1).is_zero()) lhs += cleared(ours, i, j, p) * Om(m - 1, p - 1);
                    if (!Omt(m - 1, p - 1).is_zero())
                        rhs_cleared += cleared(theirs, i, j, p) * Omt(m - 1, p - 1);
                }
                TowerPoly rhs = rhs_cleared.substitute(scale_rules) *
                                (diag[size_t(i - 1)] * diag[size_t(j - 1)] *
                                 (diag[size_t(m - 1)] * diag[size_t(r - 1)]).inverse());
                if (!(lhs == rhs)) {
                    rep.algebra_isomorphic = false;
                    break;
                }
            }
    return rep;
}

PotentialData btype_potential(int r) {
    auto T = [&](int i) { return TowerPoly::var(t_dens(i)); };
    PotentialData P;
    P.rank = r;
    if (r == 3) {
        P.poly = T(3) * T(1).pow(3) * rat(1, 12) + T(2) * T(3) * T(1) + T(2).pow(3) * rat(1, 6);
        P.logcoeff = TowerScalar(QuadScalar(rat(1)));
    } else if (r == 4) {
        P.poly = T(4) * T(1).pow(4) * rat(1, 108) + T(2) * T(4) * T(1).pow(2) * rat(1, 6) +
                 T(3) * T(4) * T(1) - T(2).pow(4) * rat(1, 72) + T(2) * T(3).pow(2) * rat(1, 2) +
                 T(2).pow(2) * T(4) * rat(1, 2);
        P.logcoeff = TowerScalar(QuadScalar(rat(3, 2)));
    } else {
        throw std::domain_error("btype_potential: only ranks 3 and 4 are tabulated");
    }
    return P;
}

}  // namespace agd
