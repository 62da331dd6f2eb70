#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "agd/scalar.hpp"
#include "agd/tower.hpp"
#include "test_util.hpp"

using namespace agd;
using testutil::random_quad;


TEST_CASE("alpha reduction at rank 3") {
    QuadScalar a = QuadScalar::alpha(3);
    QuadScalar sq = a * a;
    CHECK(sq.a() == rat(-2, 3));
    CHECK(sq.b() == rat(-4, 3));
}

TEST_CASE("minimal polynomial annihilates alpha") {
    for (int r = 2; r <= 6; ++r) {
        QuadScalar a = QuadScalar::alpha(r);
        QuadScalar val = QuadScalar(rat(r)) * a * a + QuadScalar(rat(2 * (r - 1))) * a +
                         QuadScalar(rat(r - 1));
        CHECK(val.is_zero());
    }
}

TEST_CASE("gl3 prefactor: 2/(2+3*alpha) embeds to -i*sqrt(2)") {
    QuadScalar a = QuadScalar::alpha(3);
    QuadScalar v = QuadScalar(rat(2)) / (QuadScalar(rat(2)) + QuadScalar(rat(3)) * a);
    ComplexApprox z = v.embed(RootChoice::plus);
    CHECK(std::abs(z.re) < 1e-12);
    CHECK(std::abs(z.im + std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("gl4 prefactor: 3/(3+4*alpha) embeds to -i*sqrt(3)") {
    QuadScalar a = QuadScalar::alpha(4);
    QuadScalar v = QuadScalar(rat(3)) / (QuadScalar(rat(3)) + QuadScalar(rat(4)) * a);
    ComplexApprox z = v.embed(RootChoice::plus);
    CHECK(std::abs(z.re) < 1e-12);
    CHECK(std::abs(z.im + std::sqrt(3.0)) < 1e-12);
}

TEST_CASE("embed of alpha itself") {
    ComplexApprox a3 = QuadScalar::alpha(3).embed(RootChoice::plus);
    CHECK(std::abs(a3.re + 2.0 / 3.0) < 1e-14);
    CHECK(std::abs(a3.im - std::sqrt(2.0) / 3.0) < 1e-14);
    ComplexApprox a4 = QuadScalar::alpha(4).embed(RootChoice::plus);
    CHECK(std::abs(a4.re + 0.75) < 1e-14);
    CHECK(std::abs(a4.im - std::sqrt(3.0) / 4.0) < 1e-14);
    ComplexApprox one = QuadScalar(rat(1)).embed();
    CHECK(one.re == 1.0);
    CHECK(one.im == 0.0);
}

TEST_CASE("field axioms on random samples") {
    std::mt19937_64 rng(12345);
    for (int r : {2, 3, 4, 5}) {
        for (int n = 0; n < 1000; ++n) {
            QuadScalar x = random_quad(rng, r), y = random_quad(rng, r), z = random_quad(rng, r);
            CHECK((x + y) + z == x + (y + z));
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            if (!x.is_zero()) CHECK(x * x.inverse() == QuadScalar(rat(1)));
        }
    }
}

TEST_CASE("embed is a ring homomorphism") {
    std::mt19937_64 rng(777);
    for (int r : {2, 3, 4, 5}) {
        for (int n = 0; n < 200; ++n) {
            QuadScalar x = random_quad(rng, r), y = random_quad(rng, r);
            auto ze = (x * y).embed().c();
            auto zp = x.embed().c() * y.embed().c();
            double scale = std::max(1.0, std::abs(zp));
            CHECK(std::abs(ze - zp) / scale < 1e-12);
            auto se = (x + y).embed().c();
            auto sp = x.embed().c() + y.embed().c();
            CHECK(std::abs(se - sp) / std::max(1.0, std::abs(sp)) < 1e-12);
        }
    }
}

TEST_CASE("minus root is the complex conjugate") {
    std::mt19937_64 rng(99);
    for (int n = 0; n < 100; ++n) {
        QuadScalar x = random_quad(rng, 3);
        ComplexApprox zp = x.embed(RootChoice::plus), zm = x.embed(RootChoice::minus);
        CHECK(zp.re == zm.re);
        CHECK(zp.im == -zm.im);
    }
}

TEST_CASE("rank mismatch and zero division raise") {
    QuadScalar a3 = QuadScalar::alpha(3), a4 = QuadScalar::alpha(4);
    CHECK_THROWS_AS(a3 + a4, std::domain_error);
    CHECK_THROWS_AS(a3 * a4, std::domain_error);
    CHECK_THROWS_AS(a3 / QuadScalar(rat(0)), std::domain_error);
    // rationals mix with any rank
    CHECK((QuadScalar(rat(2)) + a3) == QuadScalar(rat(2), rat(1), 3));
}

TEST_CASE("string round-trip") {
    QuadScalar v(rat(-1, 2), rat(4, 3), 3);
    CHECK(v.str() == "-1/2 + 4/3*alpha");
    CHECK(parse_quad(v.str(), 3) == v);
    QuadScalar w(rat(5, 7));
    CHECK(w.str() == "5/7");
    CHECK(parse_quad(w.str(), 0) == w);
    QuadScalar neg(rat(1), rat(-2, 5), 4);
    CHECK(parse_quad(neg.str(), 4) == neg);
}

TEST_CASE("quadratic tower over Q(alpha)") {
    int r = 3;
    TowerScalar s2 = TowerScalar::sqrt_of(rat(2), r);
    CHECK(s2 * s2 == TowerScalar(QuadScalar(rat(2))));
    TowerScalar x(QuadScalar(rat(1), rat(2), r), QuadScalar(rat(-1, 3), rat(0), r), rat(2));
    TowerScalar inv = x.inverse();
    CHECK(x * inv == TowerScalar(QuadScalar(rat(1))));
    // i = (1 + (3/2) alpha) * sqrt(2) squares to -1 in the tower (rank 3)
    TowerScalar i_elt(QuadScalar(rat(0)), QuadScalar(rat(1), rat(3, 2), r), rat(2));
    CHECK(i_elt * i_elt == TowerScalar(QuadScalar(rat(-1))));
}
