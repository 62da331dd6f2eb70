// Exact scalar arithmetic: arbitrary-precision rationals and the quadratic
// field Q(alpha) attached to a rank r, where alpha satisfies
//     r*alpha^2 + 2(r-1)*alpha + (r-1) = 0.
// The discriminant is negative for r >= 2, so the field embeds into C with
// two conjugate choices for the imaginary part.
#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace agd {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string rational_str(const Rational& q);
Rational parse_rational(const std::string& s);
Rational binom(int n, int k);
Rational factorial(int n);

inline double to_double(const Rational& q) { return q.get_d(); }

struct ComplexApprox {
    double re = 0.0;
    double im = 0.0;
    std::complex<double> c() const { return {re, im}; }
};

enum class RootChoice { plus, minus };

// a + b*alpha at a fixed rank. Rank 0 marks a plain rational (b must vanish);
// it mixes freely with any rank, while two scalars with distinct positive
// ranks never interoperate.
class QuadScalar {
  public:
    QuadScalar() : rank_(0) {}
    QuadScalar(Rational a) : a_(std::move(a)), rank_(0) {}
    QuadScalar(long n) : a_(rat(n)), rank_(0) {}
    QuadScalar(Rational a, Rational b, int rank)
        : a_(std::move(a)), b_(std::move(b)), rank_(rank) {
        if (rank_ < 0) throw std::domain_error("QuadScalar: negative rank");
        if (rank_ == 0 && b_ != 0)
            throw std::domain_error("QuadScalar: alpha part requires a positive rank");
    }

    static QuadScalar alpha(int rank) {
        if (rank < 2) throw std::domain_error("QuadScalar::alpha: rank must be >= 2");
        return QuadScalar(rat(0), rat(1), rank);
    }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    int rank() const { return rank_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }
    bool is_one() const { return b_ == 0 && a_ == 1; }

    QuadScalar operator-() const { return QuadScalar(-a_, -b_, rank_, nocheck{}); }

    friend QuadScalar operator+(const QuadScalar& x, const QuadScalar& y) {
        int r = join_rank(x, y);
        return QuadScalar(x.a_ + y.a_, x.b_ + y.b_, r, nocheck{});
    }
    friend QuadScalar operator-(const QuadScalar& x, const QuadScalar& y) {
        int r = join_rank(x, y);
        return QuadScalar(x.a_ - y.a_, x.b_ - y.b_, r, nocheck{});
    }
    friend QuadScalar operator*(const QuadScalar& x, const QuadScalar& y) {
        int r = join_rank(x, y);
        if (x.b_ == 0 && y.b_ == 0)
            return QuadScalar(x.a_ * y.a_, Rational(0), r, nocheck{});
        // alpha^2 = e0 + e1*alpha with e0 = -(r-1)/r, e1 = -2(r-1)/r
        Rational e0 = rat(-(r - 1), r), e1 = rat(-2 * (r - 1), r);
        Rational bb = x.b_ * y.b_;
        return QuadScalar(x.a_ * y.a_ + bb * e0,
                          x.a_ * y.b_ + x.b_ * y.a_ + bb * e1, r, nocheck{});
    }
    QuadScalar inverse() const {
        if (is_zero()) throw std::domain_error("QuadScalar: division by zero");
        if (b_ == 0) return QuadScalar(1 / a_, Rational(0), rank_, nocheck{});
        // Solve (a + b*alpha)(c + d*alpha) = 1 via the 2x2 system; the norm
        // form is positive definite (imaginary quadratic field), so it only
        // vanishes at zero.
        Rational e0 = rat(-(rank_ - 1), rank_), e1 = rat(-2 * (rank_ - 1), rank_);
        Rational det = a_ * a_ + a_ * b_ * e1 - b_ * b_ * e0;
        return QuadScalar((a_ + b_ * e1) / det, -b_ / det, rank_, nocheck{});
    }
    friend QuadScalar operator/(const QuadScalar& x, const QuadScalar& y) {
        return x * y.inverse();
    }

    QuadScalar& operator+=(const QuadScalar& y) { return *this = *this + y; }
    QuadScalar& operator-=(const QuadScalar& y) { return *this = *this - y; }
    QuadScalar& operator*=(const QuadScalar& y) { return *this = *this * y; }
    QuadScalar& operator/=(const QuadScalar& y) { return *this = *this / y; }

    friend QuadScalar operator*(const QuadScalar& x, const Rational& c) {
        return QuadScalar(x.a_ * c, x.b_ * c, x.rank_, nocheck{});
    }
    friend QuadScalar operator*(const Rational& c, const QuadScalar& x) { return x * c; }

    friend bool operator==(const QuadScalar& x, const QuadScalar& y) {
        if (x.a_ != y.a_ || x.b_ != y.b_) return false;
        if (x.b_ != 0 && x.rank_ != y.rank_) return false;
        return true;
    }
    friend bool operator!=(const QuadScalar& x, const QuadScalar& y) { return !(x == y); }

    // alpha -> (-(r-1) +- i*sqrt(r-1)) / r
    ComplexApprox embed(RootChoice root = RootChoice::plus) const {
        double av = to_double(a_), bv = to_double(b_);
        if (b_ == 0) return {av, 0.0};
        double s = std::sqrt(double(rank_ - 1));
        double re_alpha = -double(rank_ - 1) / rank_;
        double im_alpha = (root == RootChoice::plus ? s : -s) / rank_;
        return {av + bv * re_alpha, bv * im_alpha};
    }

    std::string str() const;  // canonical "a + b*alpha" (or bare rational)

  private:
    struct nocheck {};
    QuadScalar(Rational a, Rational b, int rank, nocheck)
        : a_(std::move(a)), b_(std::move(b)), rank_(rank) {}
    static int join_rank(const QuadScalar& x, const QuadScalar& y) {
        if (x.rank_ == 0) return y.rank_;
        if (y.rank_ == 0 || y.rank_ == x.rank_) return x.rank_;
        if (x.b_ == 0 && y.b_ == 0) return x.rank_;
        throw std::domain_error("QuadScalar: rank mismatch (" +
                                std::to_string(x.rank_) + " vs " +
                                std::to_string(y.rank_) + ")");
    }

    Rational a_, b_;
    int rank_;
};

QuadScalar parse_quad(const std::string& s, int rank_hint = 0);

}  // namespace agd
