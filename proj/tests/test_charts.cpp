#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "agd/charts.hpp"
#include "agd/dsreduce.hpp"
#include "agd/engine.hpp"
#include "test_util.hpp"

using namespace agd;

namespace {

DiffPoly pq(const std::string& s, int r) { return parse_diffpoly(s, r); }
Density D(Fam f, int i) { return Density{f, i, 0}; }

}  // namespace

TEST_CASE("z chart normal forms at small rank") {
    LieData g2(2);
    Chart c2 = z_chart(g2);
    CHECK(c2.forward.at(D(Fam::z, 2)) == pq("u2 + 1/4*u1^2", 2));

    LieData g3(3);
    Chart c3 = z_chart(g3);
    CHECK(c3.forward.at(D(Fam::z, 2)) == pq("u2 + 1/6*u1^2", 3));

    LieData g4(4);
    Chart c4 = z_chart(g4);
    // coefficient of u1*u3 in z4 must be 3/4
    DiffPoly mixed = c4.forward.at(D(Fam::z, 4))
                         .jet_partial(JetVar(Fam::u, 1, 0, 0))
                         .jet_partial(JetVar(Fam::u, 3, 0, 0));
    CHECK(mixed == pq("3/4", 4));
}

TEST_CASE("chart round-trips: numeric spot checks") {
    std::mt19937_64 rng(55);
    for (int r : {2, 3, 4}) {
        LieData g(r);
        Chart zc = z_chart(g);
        Chart sc = s_chart(r);
        Chart us = compose(zc, sc);
        for (int trial = 0; trial < 50; ++trial) {
            std::map<JetVar, QuadScalar> pt;
            for (int i = 1; i <= r; ++i)
                pt[JetVar(Fam::u, i, 0, 0)] = QuadScalar(testutil::random_rational(rng, 5, 5));
            // u -> s -> u
            std::map<JetVar, QuadScalar> spt;
            for (int i = 1; i <= r; ++i)
                spt[JetVar(Fam::s, i, 0, 0)] = us.forward.at(D(Fam::s, i)).evaluate(pt);
            for (int i = 1; i <= r; ++i)
                CHECK(us.inverse.at(D(Fam::u, i)).evaluate(spt) == pt.at(JetVar(Fam::u, i, 0, 0)));
        }
    }
}

TEST_CASE("s chart matches the gl3 example") {
    LieData g(3);
    Chart us = compose(z_chart(g), s_chart(3));
    // s3 = -i sqrt2 u3 + (3 + 2 i sqrt2)/27 u1^3 + 2/3 u2 u1, i sqrt2 = 2 + 3 alpha
    DiffPoly expect = pq("(-2 - 3*alpha)*u3 + (7/27 + 2/9*alpha)*u1^3 + 2/3*u2*u1", 3);
    CHECK(us.forward.at(D(Fam::s, 3)) == expect);
    CHECK(us.forward.at(D(Fam::s, 1)) == pq("u1", 3));
    CHECK(us.forward.at(D(Fam::s, 2)) == pq("u2 + 1/6*u1^2", 3));
}

TEST_CASE("s chart matches the gl4 example prefactors") {
    Chart sc = s_chart(4);
    // s4 = -i sqrt3 z4 + (3 i sqrt3/4 + 3/4) z1 z3, i sqrt3 = 3 + 4 alpha
    DiffPoly expect = pq("(-3 - 4*alpha)*z4 + (3 + 3*alpha)*z1*z3", 4);
    CHECK(sc.forward.at(D(Fam::s, 4)) == expect);
}

TEST_CASE("transported gl3 bracket in the s chart equals Eq. Poiss gl3") {
    LieData g(3);
    LocalBracket Bu = reduced_bracket(g, gauge_fix(g), false);
    LocalBracket Bz = transport_bracket(Bu, z_chart(g));
    LocalBracket Bs = transport_bracket(Bz, s_chart(3));
    CHECK(Bs == golden_s_bracket_gl3());
}

TEST_CASE("gl2 z-chart transport matches Example DFgl2") {
    LieData g(2);
    LocalBracket Bu = reduced_bracket(g, gauge_fix(g), false);
    LocalBracket Bz = transport_bracket(Bu, z_chart(g));
    CHECK(Bz == golden_z_bracket_gl2());
}

TEST_CASE("linearity certificate on the golden gl3 s bracket") {
    LocalBracket Bs = golden_s_bracket_gl3();
    LinearityReport rep = linearity_certificate(Bs, D(Fam::s, 2));
    CHECK(rep.lie_square_zero);
    CHECK(rep.nontrivial);
    // Omega1(s) must be invertible as a polynomial matrix
    GradingScheme gs;
    BracketComponents c1 = decompose(rep.B1, gs, 2);
    CHECK(!det_expand(c1.Omega).is_zero());
}

TEST_CASE("linearity certificate rejects a quadratic entry") {
    LocalBracket B(2, "s", density_family(Fam::s, 2));
    DeltaTerms t(2);
    t[1] = pq("s1^2", 2);
    B.set_entry(1, 1, t);
    CHECK_THROWS_AS(linearity_certificate(B, D(Fam::s, 1)), std::domain_error);
}

TEST_CASE("flat chart for gl2 is the identity") {
    LieData g(2);
    LocalBracket Bu = reduced_bracket(g, gauge_fix(g), false);
    LocalBracket Bz = transport_bracket(Bu, z_chart(g));
    LocalBracket Bs = transport_bracket(Bz, s_chart(2));
    LinearityReport rep = linearity_certificate(Bs, D(Fam::s, 1));
    GradingScheme gs;
    BracketComponents c1 = decompose(rep.B1, gs, 1);
    Chart tc = flat_chart(2, c1.Omega, c1.Gamma, density_family(Fam::s, 2));
    CHECK(tc.forward.at(D(Fam::t, 1)) == pq("s1", 2));
    CHECK(tc.forward.at(D(Fam::t, 2)) == pq("s2", 2));
}

TEST_CASE("flat chart for gl3 matches Example DFgl3") {
    LieData g(3);
    LocalBracket Bs = golden_s_bracket_gl3();
    LinearityReport rep = linearity_certificate(Bs, D(Fam::s, 2));
    GradingScheme gs;
    BracketComponents c1 = decompose(rep.B1, gs, 2);
    Chart tc = flat_chart(3, c1.Omega, c1.Gamma, density_family(Fam::s, 3));
    CHECK(tc.forward.at(D(Fam::t, 1)) == pq("s1", 3));
    CHECK(tc.forward.at(D(Fam::t, 2)) == pq("s2", 3));
    // t3 = s3 + (1 - 2 i sqrt2)/27 s1^3 = s3 - (1/9 + 2/9 alpha) s1^3
    CHECK(tc.forward.at(D(Fam::t, 3)) == pq("s3 + (-1/9 - 2/9*alpha)*s1^3", 3));
}

TEST_CASE("christoffels ansatz agrees with the bracket decomposition") {
    for (int r : {2, 3}) {
        LieData g(r);
        LocalBracket Bu = reduced_bracket(g, gauge_fix(g), false);
        LocalBracket Bz = transport_bracket(Bu, z_chart(g));
        GradingScheme gs;
        BracketComponents comp = decompose(Bz, gs);
        auto z_dens = density_family(Fam::z, r);
        auto Gamma = christoffels(comp.Omega, z_dens, z_dens, gs, 0);
        for (int k = 0; k < r; ++k) CHECK(Gamma[k] == comp.Gamma[k]);
    }
}

TEST_CASE("W-identity Christoffel values in the z chart") {
    // Gamma^{2j}_k = (j-1) delta_k^j follows from the transported identities
    LieData g(3);
    LocalBracket Bz = transport_bracket(reduced_bracket(g, gauge_fix(g), false), z_chart(g));
    GradingScheme gs;
    BracketComponents comp = decompose(Bz, gs);
    for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k) {
            DiffPoly want;
            if (j == k && j > 1) want = DiffPoly::constant(QuadScalar(rat(j - 1)));
            CHECK(comp.Gamma[k - 1](1, j - 1) == want);
        }
}

TEST_CASE("christoffels of a constant metric vanish") {
    GradingScheme gs;
    auto t_dens = density_family(Fam::t, 3);
    Mat<DiffPoly> O(3, 3);
    for (int i = 0; i < 3; ++i)
        O(i, 2 - i) = DiffPoly::constant(QuadScalar(rat(2)));
    auto Gamma = christoffels(O, t_dens, t_dens, gs, 2);
    for (auto& m : Gamma) CHECK(m.is_zero());
}

TEST_CASE("theorem coordins identities in s and t charts for gl3") {
    const int r = 3;
    LieData g(r);
    LocalBracket Bs = golden_s_bracket_gl3();
    GradingScheme gs;
    BracketComponents cs = decompose(Bs, gs);
    // Omega^{11} = r, Omega^{2i} = i s^i, Gamma^{2i}_k = (i-1) delta,
    // d_{s^{r-1}} Omega^{i, r-i+1} = r-1
    CHECK(cs.Omega(0, 0) == pq("3", r));
    for (int i = 1; i <= r; ++i) {
        CHECK(cs.Omega(1, i - 1) == DiffPoly::var(D(Fam::s, i)) * rat(i));
        for (int k = 1; k <= r; ++k) {
            DiffPoly want;
            if (i == k && i > 1) want = DiffPoly::constant(QuadScalar(rat(i - 1)));
            CHECK(cs.Gamma[k - 1](1, i - 1) == want);
        }
        CHECK(cs.Omega(i - 1, r - i).jet_partial(JetVar(Fam::s, r - 1, 0, 0)) == pq("2", r));
    }
    LinearityReport rep = linearity_certificate(Bs, D(Fam::s, 2));
    BracketComponents c1 = decompose(rep.B1, gs, 2);
    Chart tc = flat_chart(r, c1.Omega, c1.Gamma, density_family(Fam::s, r));
    LocalBracket Bt = transport_bracket(Bs, tc);
    BracketComponents ct = decompose(Bt, gs);
    CHECK(ct.Omega(0, 0) == pq("3", r));
    for (int i = 1; i <= r; ++i) {
        CHECK(ct.Omega(1, i - 1) == DiffPoly::var(D(Fam::t, i)) * rat(i));
        for (int k = 1; k <= r; ++k) {
            DiffPoly want;
            if (i == k && i > 1) want = DiffPoly::constant(QuadScalar(rat(i - 1)));
            CHECK(ct.Gamma[k - 1](1, i - 1) == want);
        }
    }
}
