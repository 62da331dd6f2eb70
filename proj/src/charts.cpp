#include "agd/charts.hpp"

#include <functional>
#include <stdexcept>

namespace agd {

namespace {

using DMat = Mat<DiffPoly>;

DMat to_diff(const QMat& m) {
    DMat out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) out(i, j) = DiffPoly::constant(m(i, j));
    return out;
}

// Rows of an exact linear system collected from polynomial identities; rows
// of distinct equations are never merged, only monomial coefficients within
// one equation.
class LinearRows {
  public:
    explicit LinearRows(int ncoef) : ncoef_(ncoef) {}

    void begin_equation() { eqs_.emplace_back(); }

    // col >= 0: unknown column; col < 0: right-hand side
    void add(const DiffPoly& p, int col, const Rational& sign) {
        auto& rows = eqs_.back();
        for (auto& [mono, c] : p.terms()) {
            auto it = rows.find(mono);
            if (it == rows.end())
                it = rows.emplace(mono, Row{std::vector<QuadScalar>(size_t(ncoef_),
                                                                    QuadScalar(rat(0))),
                                            QuadScalar(rat(0))})
                         .first;
            if (col < 0)
                it->second.rhs += c * sign;
            else
                it->second.coef[size_t(col)] += c * sign;
        }
    }

    std::pair<Mat<QuadScalar>, std::vector<QuadScalar>> assemble() const {
        int total = 0;
        for (auto& e : eqs_) total += int(e.size());
        Mat<QuadScalar> A(total, ncoef_);
        std::vector<QuadScalar> b(size_t(total), QuadScalar(rat(0)));
        int at = 0;
        for (auto& e : eqs_)
            for (auto& [m, row] : e) {
                for (int c = 0; c < ncoef_; ++c) A(at, c) = row.coef[size_t(c)];
                b[size_t(at)] = row.rhs;
                ++at;
            }
        return {A, b};
    }

  private:
    struct Row {
        std::vector<QuadScalar> coef;
        QuadScalar rhs;
    };
    int ncoef_;
    std::vector<std::map<Monomial, Row, MonoCmp>> eqs_;
};

}  // namespace

// All monomials in the given densities (jet order 0) of exact weighted
// degree `degree`, with at least `min_poly_degree` factors. Deterministic
// enumeration order.
std::vector<DiffPoly> weighted_monomials(const std::vector<Density>& dens,
                                         const GradingScheme& g, int degree,
                                         int min_poly_degree) {
    std::vector<DiffPoly> out;
    std::vector<std::pair<Density, int>> stack;
    std::function<void(int, int, int)> rec = [&](int pos, int remaining, int nfactors) {
        if (remaining == 0) {
            if (nfactors >= min_poly_degree) {
                DiffPoly m = DiffPoly::constant(QuadScalar(rat(1)));
                for (auto& [d, e] : stack) m = m * DiffPoly::var(d).pow(e);
                out.push_back(m);
            }
            return;
        }
        if (pos >= int(dens.size())) return;
        int w = g.base_degree(dens[pos]);
        if (w <= 0) throw std::domain_error("weighted_monomials: nonpositive weight");
        int max_e = remaining / w;
        for (int e = max_e; e >= 0; --e) {
            if (e > 0) stack.emplace_back(dens[pos], e);
            rec(pos + 1, remaining - e * w, nfactors + e);
            if (e > 0) stack.pop_back();
        }
    };
    rec(0, degree, 0);
    return out;
}

Chart z_chart(const LieData& g) {
    const int r = g.rank();
    auto u_dens = density_family(Fam::u, r);
    auto z_dens = density_family(Fam::z, r);

    DMat Q = to_diff(g.L2());
    for (int i = 1; i <= r; ++i) {
        DiffPoly ui = DiffPoly::var(u_dens[i - 1]);
        const QMat& gi = g.gamma(i);
        for (int a = 0; a < r; ++a)
            for (int c = 0; c < r; ++c)
                if (!gi(a, c).is_zero()) Q(a, c) += ui * gi(a, c);
    }

    Chart chart;
    chart.tag = "z";
    chart.news = z_dens;
    chart.olds = u_dens;
    DMat P = Q;
    for (int i = 1; i <= r; ++i) {
        if (i > 1) P = P * Q;
        chart.forward[z_dens[i - 1]] = P.trace() * rat(1, i);
    }

    // normal form checks (z1, z2, the u^1 u^{r-1} coefficient of z^r, and
    // the vanishing constraints on the tails)
    DiffPoly u1 = DiffPoly::var(u_dens[0]);
    if (!(chart.forward[z_dens[0]] == u1))
        throw std::domain_error("z_chart: z1 != u1");
    if (!(chart.forward[z_dens[1]] ==
          DiffPoly::var(u_dens[1]) + u1 * u1 * rat(1, 2 * r)))
        throw std::domain_error("z_chart: z2 normal form violated");
    {
        JetVar v1(u_dens[0], 0), vr1(u_dens[r - 2], 0);
        DiffPoly mixed = chart.forward[z_dens[r - 1]].jet_partial(v1).jet_partial(vr1);
        if (r == 2) {
            // z^r = z^2 and the mixed partial degenerates to d^2/du1^2
        } else if (!(mixed == DiffPoly::constant(QuadScalar(rat(r - 1, r)))))
            throw std::domain_error("z_chart: u1*u^{r-1} coefficient of z^r violated");
    }
    for (int i = 3; i <= r; ++i) {
        DiffPoly tail = chart.forward[z_dens[i - 1]] - DiffPoly::var(u_dens[i - 1]);
        if (i == r)
            tail -= DiffPoly::var(u_dens[0]) * DiffPoly::var(u_dens[r - 2]) * rat(r - 1, r);
        if (!tail.jet_partial(JetVar(u_dens[r - 2], 0)).is_zero())
            throw std::domain_error("z_chart: tail of z^" + std::to_string(i) +
                                    " depends on u^{r-1}");
        if (!tail.jet_partial(JetVar(u_dens[i - 1], 0)).is_zero())
            throw std::domain_error("z_chart: tail of z^" + std::to_string(i) +
                                    " depends on u^" + std::to_string(i));
    }

    // triangular inversion
    for (int i = 1; i <= r; ++i) {
        DiffPoly corr = chart.forward[z_dens[i - 1]] - DiffPoly::var(u_dens[i - 1]);
        chart.inverse[u_dens[i - 1]] = DiffPoly::var(z_dens[i - 1]) - corr.substitute(chart.inverse);
    }
    for (int i = 1; i <= r; ++i)
        if (!(chart.forward[z_dens[i - 1]].substitute(chart.inverse) ==
              DiffPoly::var(z_dens[i - 1])))
            throw std::domain_error("z_chart: inversion failed");
    return chart;
}

Chart s_chart(int r) {
    auto z_dens = density_family(Fam::z, r);
    auto s_dens = density_family(Fam::s, r);
    if (r == 2) return rename_chart(z_dens, s_dens, "s");

    QuadScalar alpha = QuadScalar::alpha(r);
    QuadScalar kappa =
        QuadScalar(rat(r - 1)) / (QuadScalar(rat(r - 1)) + QuadScalar(rat(r)) * alpha);

    Chart chart;
    chart.tag = "s";
    chart.news = s_dens;
    chart.olds = z_dens;
    for (int i = 1; i <= r - 1; ++i) {
        chart.forward[s_dens[i - 1]] = DiffPoly::var(z_dens[i - 1]);
        chart.inverse[z_dens[i - 1]] = DiffPoly::var(s_dens[i - 1]);
    }
    DiffPoly z1 = DiffPoly::var(z_dens[0]), zr1 = DiffPoly::var(z_dens[r - 2]);
    chart.forward[s_dens[r - 1]] =
        (DiffPoly::var(z_dens[r - 1]) + z1 * zr1 * alpha) * kappa;
    DiffPoly s1 = DiffPoly::var(s_dens[0]), sr1 = DiffPoly::var(s_dens[r - 2]);
    chart.inverse[z_dens[r - 1]] =
        DiffPoly::var(s_dens[r - 1]) * kappa.inverse() - s1 * sr1 * alpha;
    return chart;
}

Chart rename_chart(const std::vector<Density>& olds, const std::vector<Density>& news,
                   const std::string& tag) {
    Chart chart;
    chart.tag = tag;
    chart.news = news;
    chart.olds = olds;
    for (size_t i = 0; i < olds.size(); ++i) {
        chart.forward[news[i]] = DiffPoly::var(olds[i]);
        chart.inverse[olds[i]] = DiffPoly::var(news[i]);
    }
    return chart;
}

Chart compose(const Chart& first, const Chart& second) {
    Chart chart;
    chart.tag = second.tag;
    chart.news = second.news;
    chart.olds = first.olds;
    for (auto& d : second.news)
        chart.forward[d] = second.forward.at(d).substitute(first.forward);
    for (auto& d : first.olds)
        chart.inverse[d] = first.inverse.at(d).substitute(second.inverse);
    return chart;
}

LocalBracket transport_bracket(const LocalBracket& B, const Chart& chart) {
    return leibniz_pushforward(B, chart.news, chart.forward, &chart.inverse, chart.tag);
}

Mat<DiffPoly> transport_metric(const Mat<DiffPoly>& Omega, const Chart& chart) {
    const int n = Omega.rows();
    std::vector<std::vector<DiffPoly>> jac(n, std::vector<DiffPoly>(n));
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k)
            jac[m][k] = chart.forward.at(chart.news[m]).jet_partial(JetVar(chart.olds[k], 0));
    Mat<DiffPoly> out(n, n);
    for (int m = 0; m < n; ++m)
        for (int nu = 0; nu < n; ++nu) {
            DiffPoly acc;
            for (int k = 0; k < n; ++k) {
                if (jac[m][k].is_zero()) continue;
                for (int l = 0; l < n; ++l) {
                    if (jac[nu][l].is_zero() || Omega(k, l).is_zero()) continue;
                    acc += jac[m][k] * jac[nu][l] * Omega(k, l);
                }
            }
            out(m, nu) = acc.substitute(chart.inverse);
        }
    return out;
}

Chart flat_chart(int r, const Mat<DiffPoly>& Omega1, const std::vector<Mat<DiffPoly>>& Gamma1,
                 const std::vector<Density>& s_dens) {
    GradingScheme g;
    if (det_expand(Omega1).is_zero())
        throw std::domain_error("flat_chart: Omega1 is degenerate");

    auto t_dens = density_family(Fam::t, r);
    Chart chart;
    chart.tag = "t";
    chart.news = t_dens;
    chart.olds = s_dens;

    DiffPoly excluded;  // s^1 s^{r-1}, kept out of the t^r ansatz
    excluded = DiffPoly::var(s_dens[0]) * DiffPoly::var(s_dens[r - 2]);

    for (int j = 1; j <= r; ++j) {
        std::vector<DiffPoly> basis;
        for (auto& m : weighted_monomials(s_dens, g, j, 2)) {
            if (j == r && m == excluded) continue;
            basis.push_back(m);
        }
        DiffPoly leading = DiffPoly::var(s_dens[j - 1]);
        const int ncoef = int(basis.size());

        // xi_k = d t^j / d s^k = d(leading)/d s^k + sum_m c_m d(mon_m)/d s^k.
        // Flat-coordinate system: Omega^{is} d_s xi_k + Gamma^{is}_k xi_s = 0,
        // one polynomial equation per (i, k), expanded over monomials. Rows
        // from distinct equations are kept separate.
        LinearRows rows(ncoef);
        for (int i = 0; i < r; ++i) {
            for (int k = 0; k < r; ++k) {
                rows.begin_equation();
                auto xi = [&](int s_idx, int var) -> DiffPoly {
                    const DiffPoly& base = var < 0 ? leading : basis[size_t(var)];
                    return base.jet_partial(JetVar(s_dens[s_idx], 0));
                };
                for (int s = 0; s < r; ++s) {
                    for (int var = -1; var < ncoef; ++var) {
                        DiffPoly dxk = xi(k, var).jet_partial(JetVar(s_dens[s], 0));
                        if (dxk.is_zero() || Omega1(i, s).is_zero()) continue;
                        rows.add(Omega1(i, s) * dxk, var,
                                 var < 0 ? Rational(-1) : Rational(1));
                    }
                    const DiffPoly& gam = Gamma1[k](i, s);
                    if (gam.is_zero()) continue;
                    for (int var = -1; var < ncoef; ++var) {
                        DiffPoly x = xi(s, var);
                        if (x.is_zero()) continue;
                        rows.add(gam * x, var, var < 0 ? Rational(-1) : Rational(1));
                    }
                }
            }
        }
        auto [A, b] = rows.assemble();
        std::vector<QuadScalar> coef;
        try {
            coef = solve_linear<QuadScalar, QuadScalar>(A, b);
        } catch (const std::domain_error& e) {
            throw std::domain_error(std::string("flat_chart: flatness system failed for t^") +
                                    std::to_string(j) + ": " + e.what());
        }
        DiffPoly tj = leading;
        for (int c = 0; c < ncoef; ++c) tj += basis[size_t(c)] * coef[size_t(c)];
        chart.forward[t_dens[j - 1]] = tj;
    }

    // triangular inversion and round-trip check
    for (int i = 1; i <= r; ++i) {
        DiffPoly corr = chart.forward[t_dens[i - 1]] - DiffPoly::var(s_dens[i - 1]);
        chart.inverse[s_dens[i - 1]] =
            DiffPoly::var(t_dens[i - 1]) - corr.substitute(chart.inverse);
    }
    for (int i = 1; i <= r; ++i)
        if (!(chart.forward[t_dens[i - 1]].substitute(chart.inverse) ==
              DiffPoly::var(t_dens[i - 1])))
            throw std::domain_error("flat_chart: inversion failed");

    // normalization: Omega1 in the new coordinates is (r-1) on the antidiagonal
    Mat<DiffPoly> check = transport_metric(Omega1, chart);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            DiffPoly want;
            if (i + j == r - 1) want = DiffPoly::constant(QuadScalar(rat(r - 1)));
            if (!(check(i, j) == want))
                throw std::domain_error("flat_chart: Omega1(t) normalization failed");
        }
    return chart;
}

std::vector<Mat<DiffPoly>> christoffels(const Mat<DiffPoly>& Omega,
                                        const std::vector<Density>& coord_dens,
                                        const std::vector<Density>& mono_dens,
                                        const GradingScheme& grading, int degree_shift) {
    const int n = Omega.rows();
    const std::vector<Density>& dens = coord_dens;
    if (det_expand(Omega).is_zero())
        throw std::domain_error("christoffels: metric is degenerate as a polynomial");

    // Gamma^{jk}_s = (1/2) d_s Omega^{jk} + A^{jk}_s, A antisymmetric in (j,k)
    std::vector<Mat<DiffPoly>> sym(n, Mat<DiffPoly>(n, n));  // sym[s](j,k)
    for (int s = 0; s < n; ++s)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                sym[s](j, k) = Omega(j, k).jet_partial(JetVar(dens[s], 0)) * rat(1, 2);

    // unknown blocks: (j < k, s) with a monomial basis of the right degree
    struct Block {
        int j, k, s;
        std::vector<DiffPoly> basis;
        int offset;
    };
    std::vector<Block> blocks;
    int total = 0;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
            for (int s = 0; s < n; ++s) {
                int d = grading.base_degree(dens[j]) + grading.base_degree(dens[k]) -
                        grading.base_degree(dens[s]) - 2 - degree_shift;
                if (d < 0) continue;
                Block blk{j, k, s, weighted_monomials(mono_dens, grading, d, 0), total};
                total += int(blk.basis.size());
                blocks.push_back(std::move(blk));
            }

    auto a_poly = [&](int j, int k, int s, const std::vector<QuadScalar>& c) -> DiffPoly {
        DiffPoly out;
        int sgn = 1, jj = j, kk = k;
        if (j == k) return out;
        if (j > k) {
            std::swap(jj, kk);
            sgn = -1;
        }
        for (auto& blk : blocks) {
            if (blk.j != jj || blk.k != kk || blk.s != s) continue;
            for (size_t m = 0; m < blk.basis.size(); ++m)
                out += blk.basis[m] * c[size_t(blk.offset) + m];
            break;
        }
        return sgn > 0 ? out : -out;
    };

    // equations: for i < j and all k, one polynomial identity each:
    //   sum_s [Omega^{is} Gamma^{jk}_s - Omega^{js} Gamma^{ik}_s] = 0,
    // with the known symmetric parts moved to the right-hand side
    LinearRows rows(total);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                rows.begin_equation();
                for (int s = 0; s < n; ++s) {
                    if (!Omega(i, s).is_zero() && !sym[s](j, k).is_zero())
                        rows.add(Omega(i, s) * sym[s](j, k), -1, Rational(-1));
                    if (!Omega(j, s).is_zero() && !sym[s](i, k).is_zero())
                        rows.add(Omega(j, s) * sym[s](i, k), -1, Rational(1));
                    for (auto& blk : blocks) {
                        if (blk.s != s) continue;
                        int sign_jk = (blk.j == j && blk.k == k)   ? +1
                                      : (blk.j == k && blk.k == j) ? -1
                                                                   : 0;
                        int sign_ik = (blk.j == i && blk.k == k)   ? +1
                                      : (blk.j == k && blk.k == i) ? -1
                                                                   : 0;
                        if (sign_jk != 0 && !Omega(i, s).is_zero())
                            for (size_t m = 0; m < blk.basis.size(); ++m)
                                rows.add(Omega(i, s) * blk.basis[m], blk.offset + int(m),
                                         Rational(sign_jk));
                        if (sign_ik != 0 && !Omega(j, s).is_zero())
                            for (size_t m = 0; m < blk.basis.size(); ++m)
                                rows.add(Omega(j, s) * blk.basis[m], blk.offset + int(m),
                                         Rational(-sign_ik));
                    }
                }
            }
        }
    }
    auto [A, b] = rows.assemble();
    std::vector<QuadScalar> coef;
    try {
        coef = solve_linear<QuadScalar, QuadScalar>(A, b);
    } catch (const std::domain_error& e) {
        throw std::domain_error(std::string("christoffels: ") + e.what());
    }

    std::vector<Mat<DiffPoly>> Gamma(n, Mat<DiffPoly>(n, n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) Gamma[k](i, j) = sym[k](i, j) + a_poly(i, j, k, coef);
    return Gamma;
}

Curvature curvature(const Mat<DiffPoly>& Omega, const std::vector<Mat<DiffPoly>>& Gamma,
                    const std::vector<Density>& dens) {
    const int n = Omega.rows();
    Curvature R;
    R.n = n;
    R.R.assign(size_t(n) * n * n * n, DiffPoly());
    auto d = [&](const DiffPoly& p, int s) { return p.jet_partial(JetVar(dens[s], 0)); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    DiffPoly acc;
                    for (int s = 0; s < n; ++s) {
                        if (!Omega(i, s).is_zero())
                            acc += Omega(i, s) * (d(Gamma[l](j, k), s) - d(Gamma[s](j, k), l));
                        acc += Gamma[s](i, j) * Gamma[l](s, k) - Gamma[s](i, k) * Gamma[l](s, j);
                    }
                    R.at(i, j, k, l) = acc;
                }
    return R;
}

LinearityReport linearity_certificate(const LocalBracket& Bs, const Density& lie_density) {
    JetVar v(lie_density, 0);
    for (auto& [ij, terms] : Bs.stored()) {
        for (int k = 0; k < int(terms.size()); ++k) {
            if (!terms[k].jet_partial(v).jet_partial(v).is_zero())
                throw std::domain_error("linearity_certificate: entry {" +
                                        Bs.densities()[ij.first].name() + "," +
                                        Bs.densities()[ij.second].name() +
                                        "} is nonlinear in " + lie_density.name());
        }
    }
    LinearityReport rep;
    rep.B1 = lie_derivative(Bs, lie_density);
    rep.lie_square_zero = lie_derivative(rep.B1, lie_density).is_zero();
    rep.nontrivial = !rep.B1.is_zero();
    return rep;
}

}  // namespace agd
