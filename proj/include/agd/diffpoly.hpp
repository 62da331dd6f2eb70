// Exact differential polynomials: finitely many jet variables, coefficients
// in an exact field S (Q(alpha) in the pipeline, a quadratic tower in the
// equivalence checks). Monomials are kept in a canonical graded-lex order so
// equality and serialization are deterministic.
#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "agd/jet.hpp"
#include "agd/scalar.hpp"

namespace agd {

// Quasihomogeneous degrees: deg d_x^k u^i = i + k, deg d_x^k b^i_I = k + i - I,
// deg p^i = 1, deg z/s/t^i = i. The lambda weight is configurable because the
// formal pencil parameter carries weight r - 1.
struct GradingScheme {
    int lambda_degree = 0;

    int base_degree(const Density& d) const {
        switch (d.fam) {
            case Fam::u:
            case Fam::z:
            case Fam::s:
            case Fam::t: return d.index;
            case Fam::b: return d.index - d.sub;
            case Fam::p: return 1;
            case Fam::lambda: return lambda_degree;
        }
        throw std::logic_error("unknown family");
    }
    int degree(const JetVar& v) const { return base_degree(v.density()) + v.order(); }
};

using Monomial = std::vector<std::pair<JetVar, int>>;  // sorted by var, exp > 0

inline int mono_total_degree(const Monomial& m) {
    int d = 0;
    for (auto& [v, e] : m) d += e;
    return d;
}

struct MonoCmp {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = mono_total_degree(a), db = mono_total_degree(b);
        if (da != db) return da < db;
        size_t n = std::min(a.size(), b.size());
        for (size_t i = 0; i < n; ++i) {
            if (a[i].first != b[i].first) return a[i].first < b[i].first;
            if (a[i].second != b[i].second) return a[i].second < b[i].second;
        }
        return a.size() < b.size();
    }
};

template <class S>
class DiffPolyT {
  public:
    using TermMap = std::map<Monomial, S, MonoCmp>;

    DiffPolyT() = default;
    explicit DiffPolyT(S c) {
        if (!c.is_zero()) terms_[Monomial{}] = std::move(c);
    }
    static DiffPolyT zero() { return DiffPolyT(); }
    static DiffPolyT constant(S c) { return DiffPolyT(std::move(c)); }
    static DiffPolyT var(JetVar v, S c = S(1)) {
        DiffPolyT p;
        if (!c.is_zero()) p.terms_[Monomial{{v, 1}}] = std::move(c);
        return p;
    }
    static DiffPolyT var(const Density& d, S c = S(1)) { return var(JetVar(d, 0), std::move(c)); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    S constant_term() const {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? S(0) : it->second;
    }
    size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, S c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend DiffPolyT operator+(const DiffPolyT& p, const DiffPolyT& q) {
        DiffPolyT r = p;
        for (auto& [m, c] : q.terms_) r.add_term(m, c);
        return r;
    }
    friend DiffPolyT operator-(const DiffPolyT& p, const DiffPolyT& q) {
        DiffPolyT r = p;
        for (auto& [m, c] : q.terms_) r.add_term(m, -c);
        return r;
    }
    DiffPolyT operator-() const {
        DiffPolyT r;
        for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend DiffPolyT operator*(const DiffPolyT& p, const DiffPolyT& q) {
        DiffPolyT r;
        for (auto& [ma, ca] : p.terms_)
            for (auto& [mb, cb] : q.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
        return r;
    }
    friend DiffPolyT operator*(const DiffPolyT& p, const S& c) {
        DiffPolyT r;
        if (c.is_zero()) return r;
        for (auto& [m, k] : p.terms_) {
            S v = k * c;
            if (!v.is_zero()) r.terms_.emplace(m, std::move(v));
        }
        return r;
    }
    friend DiffPolyT operator*(const S& c, const DiffPolyT& p) { return p * c; }
    friend DiffPolyT operator*(const DiffPolyT& p, const Rational& c) {
        DiffPolyT r;
        if (c == 0) return r;
        for (auto& [m, k] : p.terms_) r.terms_.emplace(m, k * c);
        return r;
    }
    friend DiffPolyT operator*(const Rational& c, const DiffPolyT& p) { return p * c; }

    DiffPolyT& operator+=(const DiffPolyT& q) {
        for (auto& [m, c] : q.terms_) add_term(m, c);
        return *this;
    }
    DiffPolyT& operator-=(const DiffPolyT& q) {
        for (auto& [m, c] : q.terms_) add_term(m, -c);
        return *this;
    }
    DiffPolyT& operator*=(const DiffPolyT& q) { return *this = *this * q; }

    friend bool operator==(const DiffPolyT& p, const DiffPolyT& q) {
        if (p.terms_.size() != q.terms_.size()) return false;
        auto it = p.terms_.begin();
        auto jt = q.terms_.begin();
        for (; it != p.terms_.end(); ++it, ++jt) {
            if (it->first != jt->first || !(it->second == jt->second)) return false;
        }
        return true;
    }
    friend bool operator!=(const DiffPolyT& p, const DiffPolyT& q) { return !(p == q); }

    DiffPolyT pow(int n) const {
        if (n < 0) throw std::domain_error("DiffPoly::pow: negative exponent");
        DiffPolyT r = constant(S(1));
        DiffPolyT base = *this;
        while (n > 0) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    // Total x-derivative: Leibniz rule, each jet order bumped by one.
    DiffPolyT total_x_derivative() const {
        DiffPolyT r;
        for (auto& [m, c] : terms_) {
            for (size_t i = 0; i < m.size(); ++i) {
                Monomial nm = m;
                auto [v, e] = nm[i];
                if (e == 1)
                    nm.erase(nm.begin() + i);
                else
                    nm[i].second = e - 1;
                Monomial bumped = mono_mul(nm, Monomial{{v.with_order(v.order() + 1), 1}});
                r.add_term(bumped, c * rat(e));
            }
        }
        return r;
    }
    DiffPolyT dx(int k = 1) const {
        DiffPolyT r = *this;
        for (int i = 0; i < k; ++i) r = r.total_x_derivative();
        return r;
    }

    // Formal partial derivative with respect to a single jet variable.
    DiffPolyT jet_partial(const JetVar& v) const {
        DiffPolyT r;
        for (auto& [m, c] : terms_) {
            for (size_t i = 0; i < m.size(); ++i) {
                if (m[i].first != v) continue;
                Monomial nm = m;
                int e = nm[i].second;
                if (e == 1)
                    nm.erase(nm.begin() + i);
                else
                    nm[i].second = e - 1;
                r.add_term(nm, c * rat(e));
                break;
            }
        }
        return r;
    }

    // Replace every jet of a density appearing in `rules` by the matching
    // total derivative of its rule; densities not mentioned stay untouched.
    DiffPolyT substitute(const std::map<Density, DiffPolyT>& rules) const {
        std::map<Density, std::vector<DiffPolyT>> towers;
        auto rule_at = [&](const Density& d, int order) -> const DiffPolyT& {
            auto& tower = towers[d];
            if (tower.empty()) tower.push_back(rules.at(d));
            while (int(tower.size()) <= order) tower.push_back(tower.back().total_x_derivative());
            return tower[order];
        };
        DiffPolyT result;
        for (auto& [m, c] : terms_) {
            DiffPolyT term = constant(c);
            for (auto& [v, e] : m) {
                if (rules.count(v.density())) {
                    term = term * rule_at(v.density(), v.order()).pow(e);
                } else {
                    term = term * var(v).pow(e);
                }
            }
            result += term;
        }
        return result;
    }

    S evaluate(const std::map<JetVar, S>& point) const {
        S acc(0);
        for (auto& [m, c] : terms_) {
            S t = c;
            for (auto& [v, e] : m) {
                auto it = point.find(v);
                if (it == point.end())
                    throw std::domain_error("evaluate: unassigned jet variable " + v.name());
                S p(1);
                for (int i = 0; i < e; ++i) p *= it->second;
                t *= p;
            }
            acc += t;
        }
        return acc;
    }

    int weighted_degree(const GradingScheme& g, const Monomial& m) const {
        int d = 0;
        for (auto& [v, e] : m) d += g.degree(v) * e;
        return d;
    }
    bool is_quasihomogeneous(const GradingScheme& g, int expected) const {
        for (auto& [m, c] : terms_)
            if (weighted_degree(g, m) != expected) return false;
        return true;
    }
    // Degree of a quasihomogeneous polynomial (throws on mixed degrees);
    // -1 for the zero polynomial.
    int quasi_degree(const GradingScheme& g) const {
        if (terms_.empty()) return -1;
        int d = weighted_degree(g, terms_.begin()->first);
        if (!is_quasihomogeneous(g, d)) throw std::domain_error("polynomial is not quasihomogeneous");
        return d;
    }

    int max_jet_order() const {
        int k = 0;
        for (auto& [m, c] : terms_)
            for (auto& [v, e] : m) k = std::max(k, v.order());
        return k;
    }
    bool depends_on(const Density& d) const {
        for (auto& [m, c] : terms_)
            for (auto& [v, e] : m)
                if (v.density() == d) return true;
        return false;
    }
    bool depends_on(const JetVar& x) const {
        for (auto& [m, c] : terms_)
            for (auto& [v, e] : m)
                if (v == x) return true;
        return false;
    }
    int max_exponent_of(const JetVar& x) const {
        int k = 0;
        for (auto& [m, c] : terms_)
            for (auto& [v, e] : m)
                if (v == x) k = std::max(k, e);
        return k;
    }

    // Terms free of any derivative (all orders zero).
    DiffPolyT jet_free_part() const {
        DiffPolyT r;
        for (auto& [m, c] : terms_) {
            bool free = true;
            for (auto& [v, e] : m)
                if (v.order() != 0) {
                    free = false;
                    break;
                }
            if (free) r.terms_.emplace(m, c);
        }
        return r;
    }

    std::vector<JetVar> variables() const {
        std::vector<JetVar> vs;
        for (auto& [m, c] : terms_)
            for (auto& [v, e] : m)
                if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
        std::sort(vs.begin(), vs.end());
        return vs;
    }

    static Monomial mono_mul(const Monomial& a, const Monomial& b) {
        Monomial r;
        r.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].first < b[j].first)
                r.push_back(a[i++]);
            else if (b[j].first < a[i].first)
                r.push_back(b[j++]);
            else {
                r.emplace_back(a[i].first, a[i].second + b[j].second);
                ++i;
                ++j;
            }
        }
        while (i < a.size()) r.push_back(a[i++]);
        while (j < b.size()) r.push_back(b[j++]);
        return r;
    }

  private:
    TermMap terms_;
};

using DiffPoly = DiffPolyT<QuadScalar>;

std::string to_string(const DiffPoly& p);
DiffPoly parse_diffpoly(const std::string& text, int rank);

}  // namespace agd
