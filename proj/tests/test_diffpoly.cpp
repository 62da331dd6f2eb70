#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "agd/diffpoly.hpp"
#include "test_util.hpp"

using namespace agd;
using testutil::random_rational;

namespace {

JetVar u(int i, int k = 0) { return JetVar(Fam::u, i, 0, k); }

DiffPoly random_poly(std::mt19937_64& rng, int nvars = 3, int max_terms = 5, int max_jet = 2) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> idx(1, nvars);
    std::uniform_int_distribution<int> ord(0, max_jet);
    std::uniform_int_distribution<int> nfac(0, 3);
    DiffPoly p;
    int terms = nterms(rng);
    for (int t = 0; t < terms; ++t) {
        DiffPoly mono = DiffPoly::constant(QuadScalar(random_rational(rng)));
        int facs = nfac(rng);
        for (int f = 0; f < facs; ++f) mono = mono * DiffPoly::var(u(idx(rng), ord(rng)));
        p += mono;
    }
    return p;
}

}  // namespace

TEST_CASE("total derivative basics") {
    DiffPoly p = DiffPoly::var(u(1));
    CHECK(p.total_x_derivative() == DiffPoly::var(u(1, 1)));

    DiffPoly prod = DiffPoly::var(u(1)) * DiffPoly::var(u(2));
    DiffPoly expect =
        DiffPoly::var(u(1, 1)) * DiffPoly::var(u(2)) + DiffPoly::var(u(1)) * DiffPoly::var(u(2, 1));
    CHECK(prod.total_x_derivative() == expect);
}

TEST_CASE("total derivative raises quasihomogeneous degree by one") {
    std::mt19937_64 rng(42);
    GradingScheme g;
    for (int n = 0; n < 50; ++n) {
        // build a random monomial, measure, differentiate, re-measure
        DiffPoly mono = DiffPoly::constant(QuadScalar(rat(1)));
        std::uniform_int_distribution<int> idx(1, 3), ord(0, 2);
        for (int f = 0; f < 3; ++f) mono = mono * DiffPoly::var(u(idx(rng), ord(rng)));
        int d = mono.quasi_degree(g);
        DiffPoly dm = mono.total_x_derivative();
        if (!dm.is_zero()) CHECK(dm.is_quasihomogeneous(g, d + 1));
    }
}

TEST_CASE("jet partial examples") {
    DiffPoly p = DiffPoly::var(u(1)) * DiffPoly::var(u(1, 1));
    CHECK(p.jet_partial(u(1)) == DiffPoly::var(u(1, 1)));
    CHECK(p.jet_partial(u(1, 1)) == DiffPoly::var(u(1)));
}

TEST_CASE("jet partial / total derivative commutation identity") {
    // [d/du^(k), D_x] = d/du^(k-1) as operators (zero for k = 0)
    std::mt19937_64 rng(4242);
    for (int n = 0; n < 60; ++n) {
        DiffPoly p = random_poly(rng);
        for (int k = 0; k <= 2; ++k) {
            DiffPoly lhs = p.total_x_derivative().jet_partial(u(1, k)) -
                           p.jet_partial(u(1, k)).total_x_derivative();
            DiffPoly rhs = k == 0 ? DiffPoly() : p.jet_partial(u(1, k - 1));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("substitution: identity rules") {
    std::mt19937_64 rng(7);
    std::map<Density, DiffPoly> id_rules;
    for (int i = 1; i <= 3; ++i)
        id_rules[Density{Fam::u, i, 0}] = DiffPoly::var(u(i));
    for (int n = 0; n < 20; ++n) {
        DiffPoly p = random_poly(rng);
        CHECK(p.substitute(id_rules) == p);
    }
}

TEST_CASE("substitution is a ring homomorphism commuting with d/dx") {
    std::mt19937_64 rng(99);
    std::map<Density, DiffPoly> rules;
    rules[Density{Fam::u, 1, 0}] = random_poly(rng, 2, 3, 0);
    rules[Density{Fam::u, 2, 0}] = random_poly(rng, 2, 3, 0);
    rules[Density{Fam::u, 3, 0}] = random_poly(rng, 2, 2, 0);
    for (int n = 0; n < 20; ++n) {
        DiffPoly p = random_poly(rng), q = random_poly(rng);
        CHECK((p * q).substitute(rules) == p.substitute(rules) * q.substitute(rules));
        CHECK((p + q).substitute(rules) == p.substitute(rules) + q.substitute(rules));
        CHECK(p.total_x_derivative().substitute(rules) ==
              p.substitute(rules).total_x_derivative());
    }
}

TEST_CASE("substitution vs numeric composition at random points") {
    std::mt19937_64 rng(2024);
    std::map<Density, DiffPoly> rules;
    rules[Density{Fam::u, 1, 0}] = random_poly(rng, 3, 3, 0);
    rules[Density{Fam::u, 2, 0}] = random_poly(rng, 3, 3, 0);
    rules[Density{Fam::u, 3, 0}] = random_poly(rng, 3, 2, 0);
    DiffPoly p = random_poly(rng, 3, 6, 2);
    DiffPoly sub = p.substitute(rules);
    const int max_order = 8;
    for (int trial = 0; trial < 100; ++trial) {
        // assign random values to all base jets, then induce values of the
        // substituted densities by evaluating derivative towers
        std::map<JetVar, QuadScalar> base;
        for (int i = 1; i <= 3; ++i)
            for (int k = 0; k <= max_order; ++k)
                base[u(i, k)] = QuadScalar(random_rational(rng, 4, 4));
        std::map<JetVar, QuadScalar> induced = base;
        for (int i = 1; i <= 3; ++i) {
            DiffPoly tower = rules[Density{Fam::u, i, 0}];
            for (int k = 0; k <= 4; ++k) {
                induced[u(i, k)] = tower.evaluate(base);
                tower = tower.total_x_derivative();
            }
        }
        CHECK(sub.evaluate(base) == p.evaluate(induced));
    }
}

TEST_CASE("evaluate basics") {
    DiffPoly c = DiffPoly::constant(QuadScalar(rat(7, 3)));
    CHECK(c.evaluate({}) == QuadScalar(rat(7, 3)));
    DiffPoly p = DiffPoly::var(u(1));
    CHECK(p.evaluate({{u(1), QuadScalar(rat(5))}}) == QuadScalar(rat(5)));
    CHECK_THROWS_AS(p.evaluate({}), std::domain_error);
    // graded monomial at the all-ones point gives its coefficient
    DiffPoly m = DiffPoly::var(u(2)) * DiffPoly::var(u(1, 1)) * QuadScalar(rat(-3, 4));
    std::map<JetVar, QuadScalar> ones{{u(2), QuadScalar(rat(1))}, {u(1, 1), QuadScalar(rat(1))}};
    CHECK(m.evaluate(ones) == QuadScalar(rat(-3, 4)));
}

TEST_CASE("string round-trips") {
    std::mt19937_64 rng(31415);
    for (int n = 0; n < 40; ++n) {
        DiffPoly p = random_poly(rng);
        CHECK(parse_diffpoly(to_string(p), 0) == p);
    }
    // alpha-bearing coefficients
    DiffPoly q = DiffPoly::var(u(3)) * QuadScalar(rat(1, 2), rat(1), 3) +
                 DiffPoly::var(u(1, 1)) * DiffPoly::var(u(2)) * QuadScalar(rat(3));
    CHECK(to_string(q) == "3*u1_x*u2 + (1/2 + 1*alpha)*u3");
    CHECK(parse_diffpoly(to_string(q), 3) == q);
    CHECK(parse_diffpoly("0", 0).is_zero());
    CHECK(to_string(DiffPoly()) == "0");
}

TEST_CASE("grading scheme degrees") {
    GradingScheme g;
    CHECK(g.degree(JetVar(Fam::u, 3, 0, 2)) == 5);
    CHECK(g.degree(JetVar(Fam::b, 3, 1, 2)) == 4);  // k + i - I
    CHECK(g.degree(JetVar(Fam::p, 2, 0, 0)) == 1);
    CHECK(g.degree(JetVar(Fam::t, 4, 0, 0)) == 4);
    GradingScheme gl{.lambda_degree = 3};
    CHECK(gl.degree(JetVar(Fam::lambda, 0, 0, 0)) == 3);
}
