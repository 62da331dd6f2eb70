#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "agd/central.hpp"
#include "agd/engine.hpp"

using namespace agd;

namespace {
DiffPoly pq(const std::string& s, int r) { return parse_diffpoly(s, r); }
}

TEST_CASE("characteristic polynomial shape") {
    DsRoute route = run_ds_route(2, false);
    GradingScheme g;
    BracketComponents c2 = decompose(route.Bt, g, 0);
    BracketComponents c1 = decompose(route.B1t, g, 1);
    DiffPoly psi = char_poly(c2.Omega, c1.Omega);
    // det(Omega2 - lambda Omega1) for gl2: 4 t2 - (t1 - lambda)^2
    CHECK(psi == pq("4*t2 - t1^2 + 2*t1*lambda - lambda^2", 2));
}

TEST_CASE("hypothesis check accepts the pipeline brackets and rejects a fake") {
    DsRoute route = run_ds_route(3, false);
    GradingScheme g;
    BracketComponents c2 = decompose(route.Bt, g, 0);
    BracketComponents c1 = decompose(route.B1t, g, 2);
    CHECK(hypothesis_check(c2, c1));
    // the delta''' matrices assembled through the skew reflection are
    // well-defined, i.e. symmetric
    if (c2.S.count(2)) CHECK(c2.S.at(2) == c2.S.at(2).transpose());
    if (c1.S.count(2)) CHECK(c1.S.at(2) == c1.S.at(2).transpose());

    // synthetic graded bracket with a jet-free delta'' term
    LocalBracket bad(2, "t", density_family(Fam::t, 2));
    DeltaTerms t(3);
    t[2] = pq("1", 2);  // degree 1 + 2 - 2 - 1 = 0 entry, so a constant is graded
    bad.set_entry(0, 1, t);
    BracketComponents cbad = decompose(bad, g, 0);
    CHECK(!hypothesis_check(cbad, cbad));
}

TEST_CASE("central invariants: -1/24 for gl2") {
    DsRoute route = run_ds_route(2, false);
    std::mt19937_64 rng(7);
    for (int s = 0; s < 10; ++s) {
        auto rep = central_invariants_sampled(2, route.Bt, route.B1t, rng, RootChoice::plus);
        REQUIRE(rep.values.size() == 2);
        for (auto& v : rep.values) {
            CHECK(std::abs(v.re + 1.0 / 24) < 1e-9);
            CHECK(std::abs(v.im) < 1e-9);
        }
    }
}

TEST_CASE("central invariants for gl3 are constant, for both roots of alpha") {
    // the formula evaluates to -1/24 at every semisimple sample,
    // cross-checked by an independent symbolic computation in the s chart
    DsRoute route = run_ds_route(3, false);
    std::mt19937_64 rng(11);
    for (RootChoice root : {RootChoice::plus, RootChoice::minus}) {
        auto rep = central_invariants_sampled(3, route.Bt, route.B1t, rng, root);
        REQUIRE(rep.values.size() == 3);
        for (auto& v : rep.values) {
            CHECK(std::abs(v.re + 1.0 / 24) < 1e-9);
            CHECK(std::abs(v.im) < 1e-9);
        }
    }
}

TEST_CASE("values are stable across resamples") {
    DsRoute route = run_ds_route(2, false);
    std::mt19937_64 rng(23);
    double first = 0;
    for (int s = 0; s < 10; ++s) {
        auto rep = central_invariants_sampled(2, route.Bt, route.B1t, rng, RootChoice::plus);
        double mean = 0;
        for (auto& v : rep.values) mean += v.re / double(rep.values.size());
        if (s == 0)
            first = mean;
        else
            CHECK(std::abs(mean - first) < 1e-7);
    }
}

TEST_CASE("roots satisfy the characteristic polynomial") {
    DsRoute route = run_ds_route(2, false);
    GradingScheme g;
    BracketComponents c2 = decompose(route.Bt, g, 0);
    BracketComponents c1 = decompose(route.B1t, g, 1);
    std::mt19937_64 rng(5);
    auto rep = central_invariants_sampled(2, route.Bt, route.B1t, rng, RootChoice::plus);
    // check |Psi(a_i)| < 1e-10 after normalization
    DiffPoly psi = char_poly(c2.Omega, c1.Omega);
    std::map<Density, DiffPoly> at;
    for (auto& [d, v] : rep.sample) at[d] = DiffPoly::constant(QuadScalar(v));
    DiffPoly plam = psi.substitute(at);
    for (auto& a : rep.roots) {
        std::complex<double> x = a.c(), acc = 0.0;
        // evaluate the lambda polynomial at the root
        for (auto& [mono, c] : plam.terms()) {
            std::complex<double> term = c.embed().c();
            for (auto& [v, e] : mono)
                for (int k = 0; k < e; ++k) term *= x;
            acc += term;
        }
        CHECK(std::abs(acc) < 1e-10 * std::max(1.0, std::abs(x)));
    }
}

TEST_CASE("non-semisimple sample raises") {
    DsRoute route = run_ds_route(2, false);
    // at t1 = anything, t2 = 0 the roots coincide
    std::map<Density, Rational> sample{{Density{Fam::t, 1, 0}, rat(1)},
                                       {Density{Fam::t, 2, 0}, rat(0)}};
    CHECK_THROWS_WITH_AS(
        central_invariants(2, route.Bt, route.B1t, sample, RootChoice::plus),
        doctest::Contains("re-sample"), std::domain_error);
}
