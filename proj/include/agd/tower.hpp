// One more quadratic step on top of Q(alpha): elements x + y*sqrt(d) with
// x, y in Q(alpha) and a fixed rational d. Only needed when a check involves
// a radical outside Q(alpha), e.g. sqrt(2) in the B_3 equivalence map.
#pragma once

#include <stdexcept>

#include "agd/scalar.hpp"

namespace agd {

class TowerScalar {
  public:
    TowerScalar() : d_(0) {}
    TowerScalar(QuadScalar x) : x_(std::move(x)), d_(0) {}
    TowerScalar(long n) : x_(n), d_(0) {}
    TowerScalar(QuadScalar x, QuadScalar y, Rational d)
        : x_(std::move(x)), y_(std::move(y)), d_(std::move(d)) {
        if (d_ == 0 && !y_.is_zero())
            throw std::domain_error("TowerScalar: radical part without a radicand");
    }

    static TowerScalar sqrt_of(Rational d, int rank) {
        return TowerScalar(QuadScalar(rat(0), rat(0), rank), QuadScalar(rat(1), rat(0), rank),
                           std::move(d));
    }

    const QuadScalar& x() const { return x_; }
    const QuadScalar& y() const { return y_; }
    const Rational& radicand() const { return d_; }

    bool is_zero() const { return x_.is_zero() && y_.is_zero(); }
    bool is_one() const { return x_.is_one() && y_.is_zero(); }

    TowerScalar operator-() const { return TowerScalar(-x_, -y_, d_); }

    friend TowerScalar operator+(const TowerScalar& u, const TowerScalar& v) {
        Rational d = join(u, v);
        return TowerScalar(u.x_ + v.x_, u.y_ + v.y_, d);
    }
    friend TowerScalar operator-(const TowerScalar& u, const TowerScalar& v) {
        Rational d = join(u, v);
        return TowerScalar(u.x_ - v.x_, u.y_ - v.y_, d);
    }
    friend TowerScalar operator*(const TowerScalar& u, const TowerScalar& v) {
        Rational d = join(u, v);
        QuadScalar dd = QuadScalar(d);
        return TowerScalar(u.x_ * v.x_ + dd * (u.y_ * v.y_), u.x_ * v.y_ + u.y_ * v.x_, d);
    }
    TowerScalar inverse() const {
        if (is_zero()) throw std::domain_error("TowerScalar: division by zero");
        // (x + y s)^-1 = (x - y s) / (x^2 - d y^2); the denominator cannot
        // vanish for nonzero elements since sqrt(d) is not in Q(alpha) when
        // this type is actually used with y != 0.
        QuadScalar den = x_ * x_ - QuadScalar(d_) * (y_ * y_);
        if (den.is_zero()) throw std::domain_error("TowerScalar: degenerate tower element");
        QuadScalar inv = den.inverse();
        return TowerScalar(x_ * inv, -(y_ * inv), d_);
    }
    friend TowerScalar operator/(const TowerScalar& u, const TowerScalar& v) {
        return u * v.inverse();
    }
    friend TowerScalar operator*(const TowerScalar& u, const Rational& c) {
        return TowerScalar(u.x_ * c, u.y_ * c, u.d_);
    }
    friend TowerScalar operator*(const Rational& c, const TowerScalar& u) { return u * c; }

    TowerScalar& operator+=(const TowerScalar& v) { return *this = *this + v; }
    TowerScalar& operator-=(const TowerScalar& v) { return *this = *this - v; }
    TowerScalar& operator*=(const TowerScalar& v) { return *this = *this * v; }

    friend bool operator==(const TowerScalar& u, const TowerScalar& v) {
        if (!(u.x_ == v.x_) || !(u.y_ == v.y_)) return false;
        if (!u.y_.is_zero() && u.d_ != v.d_) return false;
        return true;
    }
    friend bool operator!=(const TowerScalar& u, const TowerScalar& v) { return !(u == v); }

    ComplexApprox embed(RootChoice root = RootChoice::plus) const {
        ComplexApprox cx = x_.embed(root), cy = y_.embed(root);
        double s = std::sqrt(to_double(d_));  // radicands used are positive
        return {cx.re + s * cy.re, cx.im + s * cy.im};
    }

  private:
    static Rational join(const TowerScalar& u, const TowerScalar& v) {
        if (u.y_.is_zero() && u.d_ == 0) return v.d_;
        if (v.y_.is_zero() && v.d_ == 0) return u.d_;
        if (u.d_ != v.d_) throw std::domain_error("TowerScalar: radicand mismatch");
        return u.d_;
    }

    QuadScalar x_, y_;
    Rational d_;
};

}  // namespace agd
