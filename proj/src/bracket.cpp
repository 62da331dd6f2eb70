#include "agd/bracket.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

namespace agd {

DeltaTerms delta_normalize(const DiffPoly& coeff_at_y, int k) {
    DeltaTerms out(size_t(k) + 1);
    DiffPoly deriv = coeff_at_y;
    for (int j = 0; j <= k; ++j) {
        out[size_t(k - j)] = deriv * binom(k, j);
        if (j < k) deriv = deriv.total_x_derivative();
    }
    trim_delta_terms(out);
    return out;
}

DeltaTerms delta_to_y(const DiffPoly& coeff_at_x, int k) {
    DeltaTerms out(size_t(k) + 1);
    DiffPoly deriv = coeff_at_x;
    for (int j = 0; j <= k; ++j) {
        Rational c = binom(k, j);
        out[size_t(k - j)] = deriv * ((j % 2 == 0) ? c : -c);
        if (j < k) deriv = deriv.total_x_derivative();
    }
    trim_delta_terms(out);
    return out;
}

void trim_delta_terms(DeltaTerms& t) {
    while (!t.empty() && t.back().is_zero()) t.pop_back();
}

DeltaTerms skew_reflect(const DeltaTerms& terms) {
    // {d_j(x), d_i(y)} = -{d_i(y), d_j(x)}: swap arguments (delta parity) and
    // move coefficients back to x, then negate.
    DeltaTerms out;
    for (int k = 0; k < int(terms.size()); ++k) {
        if (terms[k].is_zero()) continue;
        DeltaTerms moved = delta_normalize(terms[k], k);
        if (int(moved.size()) > int(out.size())) out.resize(moved.size());
        for (int m = 0; m < int(moved.size()); ++m) {
            if (moved[m].is_zero()) continue;
            out[m] += moved[m] * rat((k % 2 == 0) ? -1 : 1);
        }
    }
    trim_delta_terms(out);
    return out;
}

int LocalBracket::density_pos(const Density& d) const {
    for (int i = 0; i < int(dens_.size()); ++i)
        if (dens_[i] == d) return i;
    throw std::domain_error("LocalBracket: unknown density " + d.name());
}

void LocalBracket::set_entry(int i, int j, DeltaTerms terms) {
    if (i > j) throw std::domain_error("LocalBracket: set_entry requires i <= j");
    trim_delta_terms(terms);
    if (terms.empty())
        entries_.erase({i, j});
    else
        entries_[{i, j}] = std::move(terms);
}

DeltaTerms LocalBracket::entry(int i, int j) const {
    if (i <= j) {
        auto it = entries_.find({i, j});
        return it == entries_.end() ? DeltaTerms{} : it->second;
    }
    auto it = entries_.find({j, i});
    return it == entries_.end() ? DeltaTerms{} : skew_reflect(it->second);
}

int LocalBracket::max_delta_order() const {
    int m = -1;
    for (auto& [ij, t] : entries_) m = std::max(m, int(t.size()) - 1);
    return m;
}

bool LocalBracket::skew_consistent() const {
    for (auto& [ij, t] : entries_) {
        if (ij.first != ij.second) continue;
        if (!(skew_reflect(t) == t)) return false;
    }
    return true;
}

bool functionally_independent(const std::vector<DiffPoly>& exprs,
                              const std::vector<Density>& old_dens, std::mt19937_64& rng,
                              int attempts) {
    // collect every jet variable appearing anywhere
    std::vector<JetVar> vars;
    for (auto& e : exprs)
        for (auto& v : e.variables())
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    for (int t = 0; t < attempts; ++t) {
        std::map<JetVar, QuadScalar> point;
        for (auto& v : vars) point[v] = QuadScalar(rat(num(rng), den(rng)));
        Mat<QuadScalar> jac(int(exprs.size()), int(old_dens.size()));
        for (int i = 0; i < int(exprs.size()); ++i)
            for (int j = 0; j < int(old_dens.size()); ++j)
                jac(i, j) = exprs[i].jet_partial(JetVar(old_dens[j], 0)).evaluate(point);
        if (rank_of(jac) == int(exprs.size())) return true;
    }
    return false;
}

LocalBracket leibniz_pushforward(const LocalBracket& B, const std::vector<Density>& new_dens,
                                 const std::map<Density, DiffPoly>& forward,
                                 const std::map<Density, DiffPoly>* rewrite,
                                 const std::string& new_chart) {
    const auto& olds = B.densities();
    const int n_new = int(new_dens.size());
    const int n_old = int(olds.size());

    std::vector<DiffPoly> exprs;
    for (auto& d : new_dens) exprs.push_back(forward.at(d));
    {
        std::mt19937_64 rng(0x5eed5eedULL);
        if (!functionally_independent(exprs, olds, rng))
            throw std::domain_error("leibniz_pushforward: new densities are dependent");
    }

    // partials[mu][p][l] = d expr_mu / d (old_p)^{(l)}
    std::vector<std::vector<std::vector<DiffPoly>>> partials(n_new);
    for (int mu = 0; mu < n_new; ++mu) {
        partials[mu].resize(n_old);
        int max_ord = exprs[mu].max_jet_order();
        for (int p = 0; p < n_old; ++p)
            for (int l = 0; l <= max_ord; ++l)
                partials[mu][p].push_back(exprs[mu].jet_partial(JetVar(olds[p], l)));
    }

    // entries are independent; compute them concurrently and place the
    // results by index so the output does not depend on scheduling
    auto compute_entry = [&](int mu, int nu) {
        std::map<int, DiffPoly> acc;
        for (int p = 0; p < n_old; ++p) {
            for (int q = 0; q < n_old; ++q) {
                DeltaTerms terms = B.entry(p, q);
                if (terms.empty()) continue;
                for (int l = 0; l < int(partials[mu][p].size()); ++l) {
                    const DiffPoly& X = partials[mu][p][l];
                    if (X.is_zero()) continue;
                    for (int h = 0; h < int(partials[nu][q].size()); ++h) {
                        const DiffPoly& Y = partials[nu][q][h];
                        if (Y.is_zero()) continue;
                        for (int k = 0; k < int(terms.size()); ++k) {
                            if (terms[k].is_zero()) continue;
                            // Y(y) d_y^h [T_k(x) delta^(k)]
                            //  = (-1)^h sum_a C(k+h,a) Y^(a)(x) T_k(x) delta^(k+h-a),
                            // then apply d_x^l and multiply by X(x).
                            DiffPoly Yd = Y;
                            for (int a = 0; a <= k + h; ++a) {
                                if (!Yd.is_zero()) {
                                    DiffPoly G = terms[k] * Yd *
                                                 (binom(k + h, a) * rat(h % 2 == 0 ? 1 : -1));
                                    int m = k + h - a;
                                    DiffPoly Gd = G;
                                    for (int s = 0; s <= l; ++s) {
                                        acc[m + l - s] += X * Gd * binom(l, s);
                                        if (s < l) Gd = Gd.total_x_derivative();
                                    }
                                }
                                if (a < k + h) Yd = Yd.total_x_derivative();
                            }
                        }
                    }
                }
            }
        }
        int top = acc.empty() ? -1 : acc.rbegin()->first;
        DeltaTerms list(size_t(top + 1));
        for (auto& [k, poly] : acc) list[size_t(k)] = std::move(poly);
        if (rewrite)
            for (auto& poly : list) poly = poly.substitute(*rewrite);
        return list;
    };

    std::vector<std::pair<int, int>> pairs;
    for (int mu = 0; mu < n_new; ++mu)
        for (int nu = mu; nu < n_new; ++nu) pairs.emplace_back(mu, nu);
    std::vector<DeltaTerms> results(pairs.size());
    unsigned workers = std::min<unsigned>(std::thread::hardware_concurrency(),
                                          unsigned(pairs.size()));
    if (workers > 1) {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < pairs.size(); i = next.fetch_add(1))
                    results[i] = compute_entry(pairs[i].first, pairs[i].second);
            });
        for (auto& th : pool) th.join();
    } else {
        for (size_t i = 0; i < pairs.size(); ++i)
            results[i] = compute_entry(pairs[i].first, pairs[i].second);
    }

    LocalBracket out(B.rank(), new_chart, new_dens);
    for (size_t i = 0; i < pairs.size(); ++i)
        out.set_entry(pairs[i].first, pairs[i].second, std::move(results[i]));
    if (!out.skew_consistent())
        throw std::domain_error("leibniz_pushforward: skew consistency lost (bug)");
    return out;
}

BracketComponents decompose(const LocalBracket& B, const GradingScheme& g, int degree_shift) {
    const int n = int(B.densities().size());
    BracketComponents out;
    out.F = Mat<DiffPoly>(n, n);
    out.Omega = Mat<DiffPoly>(n, n);
    out.Gamma.assign(n, Mat<DiffPoly>(n, n));

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            DeltaTerms terms = B.entry(i, j);
            int di = g.base_degree(B.densities()[i]);
            int dj = g.base_degree(B.densities()[j]);
            for (int k = 0; k < int(terms.size()); ++k) {
                if (terms[k].is_zero()) continue;
                int expected = di + dj - k - 1 - degree_shift;
                if (!terms[k].is_quasihomogeneous(g, expected))
                    throw std::domain_error("decompose: grading violated in entry {" +
                                            B.densities()[i].name() + "," +
                                            B.densities()[j].name() + "} at delta order " +
                                            std::to_string(k));
            }
            if (!terms.empty()) out.F(i, j) = terms[0].jet_free_part();
            if (terms.size() > 1) out.Omega(i, j) = terms[1].jet_free_part();
            if (!terms.empty()) {
                for (int k = 0; k < n; ++k) {
                    JetVar vx(B.densities()[k], 1);
                    out.Gamma[k](i, j) = terms[0].jet_partial(vx).jet_free_part();
                }
            }
            for (int k = 2; k < int(terms.size()); ++k) {
                DiffPoly s = terms[k].jet_free_part();
                if (s.is_zero()) continue;
                auto it = out.S.find(k - 1);
                if (it == out.S.end()) it = out.S.emplace(k - 1, Mat<DiffPoly>(n, n)).first;
                it->second(i, j) = s;
            }
        }
    }
    if (!(out.Omega == out.Omega.transpose()))
        throw std::domain_error("decompose: Omega is not symmetric");
    if (!(out.F == -out.F.transpose()))
        throw std::domain_error("decompose: F is not skew");
    return out;
}

LocalBracket lie_derivative(const LocalBracket& B, const Density& d) {
    LocalBracket out(B.rank(), B.chart(), B.densities());
    JetVar v(d, 0);
    for (auto& [ij, terms] : B.stored()) {
        DeltaTerms dt;
        dt.reserve(terms.size());
        for (auto& t : terms) dt.push_back(t.jet_partial(v));
        out.set_entry(ij.first, ij.second, std::move(dt));
    }
    return out;
}

std::vector<Density> density_family(Fam fam, int r) {
    std::vector<Density> d;
    for (int i = 1; i <= r; ++i) d.push_back({fam, i, 0});
    return d;
}

std::vector<Density> b_densities(int r) {
    std::vector<Density> d;
    for (int i = 1; i <= r; ++i)
        for (int I = 0; I <= i - 1; ++I) d.push_back({Fam::b, i, I});
    return d;
}

LocalBracket base_bracket_loop_gl(const LieData& g) {
    const int r = g.rank();
    auto dens = b_densities(r);
    LocalBracket B(r, "b", dens);

    // generic element of b as a matrix of order-0 jet variables
    Mat<DiffPoly> bmat(r, r);
    for (auto& d : dens) {
        DiffPoly v = DiffPoly::var(d);
        const QMat& basis = g.b_basis(d.index, d.sub);
        for (int a = 0; a < r; ++a)
            for (int c = 0; c < r; ++c)
                if (!basis(a, c).is_zero()) bmat(a, c) += v * basis(a, c);
    }

    for (int pi = 0; pi < int(dens.size()); ++pi) {
        for (int qi = pi; qi < int(dens.size()); ++qi) {
            const Density& di = dens[pi];
            const Density& dj = dens[qi];
            int i = di.index, I = di.sub, j = dj.index, J = dj.sub;
            QuadScalar c1 = g.pair(g.f_basis(j, J), g.f_basis(i, I));
            QMat comm = commutator(g.f_basis(j, J), g.f_basis(i, I));
            DiffPoly c0 = LieData::trace_form_mixed(bmat, comm);
            Rational scale = Rational(1) / (g.theta(i, I) * g.theta(j, J));
            DeltaTerms terms(2);
            terms[0] = c0 * scale;
            terms[1] = DiffPoly::constant(c1) * scale;
            B.set_entry(pi, qi, std::move(terms));
        }
    }
    if (!B.skew_consistent())
        throw std::domain_error("base_bracket_loop_gl: diagonal skew consistency failed");
    return B;
}

LocalBracket base_bracket_cartan(int r) {
    auto dens = density_family(Fam::p, r);
    LocalBracket B(r, "p", dens);
    for (int i = 0; i < r; ++i) {
        DeltaTerms terms(2);
        terms[1] = DiffPoly::constant(QuadScalar(rat(1)));
        B.set_entry(i, i, std::move(terms));
    }
    return B;
}

}  // namespace agd
