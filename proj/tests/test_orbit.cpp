#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "agd/engine.hpp"
#include "agd/orbit.hpp"

using namespace agd;

namespace {
DiffPoly pq(const std::string& s, int r) { return parse_diffpoly(s, r); }
}

TEST_CASE("gram matrix: Omega^{11} = r") {
    for (int r : {2, 3, 4, 5}) {
        Mat<DiffPoly> G = gram_metric(r);
        CHECK(G(0, 0) == DiffPoly::constant(QuadScalar(rat(r))));
    }
}

TEST_CASE("gl4 gram matrix matches the displayed example") {
    CHECK(gram_metric(4) == golden_gram_gl4());
}

TEST_CASE("symmetric rewriting is exact") {
    // re-expanding the z-polynomials in p must reproduce the Gram matrix
    for (int r : {2, 3, 4}) {
        Mat<DiffPoly> Gp = gram_metric_p(r);
        Mat<DiffPoly> Gz = gram_metric(r);
        auto zb = power_sums(r);
        std::map<Density, DiffPoly> expand;
        for (int i = 1; i <= r; ++i) expand[Density{Fam::z, i, 0}] = zb[size_t(i - 1)];
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) CHECK(Gz(i, j).substitute(expand) == Gp(i, j));
    }
}

TEST_CASE("rewrite rejects a non-symmetric polynomial") {
    DiffPoly bad = DiffPoly::var(Density{Fam::p, 1, 0});  // p1 alone is not symmetric
    CHECK_THROWS_AS(rewrite_symmetric(bad, 3), std::domain_error);
}

TEST_CASE("hessians of invariants") {
    const int r = 3;
    auto zb = power_sums(r);
    Mat<DiffPoly> H2 = hessian_of_invariant(zb[1], r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            CHECK(H2(i, j) == (i == j ? pq("1", r) : DiffPoly()));
    Mat<DiffPoly> H1 = hessian_of_invariant(zb[0], r);
    CHECK(H1.is_zero());
    Mat<DiffPoly> H3 = hessian_of_invariant(zb[2], r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            DiffPoly want;
            if (i == j) want = DiffPoly::var(Density{Fam::p, i + 1, 0}) * rat(2);
            CHECK(H3(i, j) == want);
        }
}

TEST_CASE("route agreement on Omega2(z) for r = 2, 3") {
    GradingScheme g;
    for (int r : {2, 3}) {
        DsRoute route = run_ds_route(r, false);
        BracketComponents cz = decompose(route.Bz, g);
        CHECK(cz.Omega == gram_metric(r));
    }
}

TEST_CASE("orbit pipeline reproduces the potentials") {
    for (int r : {2, 3}) {
        OrbitRoute orbit = run_orbit_route(r);
        FrobeniusPotential want = golden_potential(r);
        CHECK(orbit.potential.poly == want.poly);
        CHECK(orbit.potential.logcoeff == want.logcoeff);
    }
}

TEST_CASE("orbit-route Omega2(s) is linear in s^{r-1}") {
    for (int r : {3, 4}) {
        Mat<DiffPoly> Gz = gram_metric(r);
        Chart sc = s_chart(r);
        Mat<DiffPoly> O2s = transport_metric(Gz, sc);
        JetVar sr1(Fam::s, r - 1, 0, 0);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                CHECK(O2s(i, j).jet_partial(sr1).jet_partial(sr1).is_zero());
    }
}

TEST_CASE("cartan bracket pushed along z(p): leading term is the Gram matrix") {
    const int r = 3;
    LieData g(r);
    GaugeSolution sol = gauge_fix(g);
    auto z_of_p = miura_densities(g, sol, z_chart(g).forward);
    LocalBracket Bp = base_bracket_cartan(r);
    auto z_dens = density_family(Fam::z, r);
    LocalBracket raw = leibniz_pushforward(Bp, z_dens, z_of_p, nullptr, "z");
    // jet-free delta' coefficients, still written in p, must equal the Gram
    // matrix expanded in p
    Mat<DiffPoly> Gp = gram_metric_p(r);
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) {
            DeltaTerms t = raw.entry(i, j);
            REQUIRE(t.size() >= 2);
            CHECK(t[1].jet_free_part() == Gp(i, j));
        }
}
