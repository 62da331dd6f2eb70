#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "agd/engine.hpp"
#include "agd/pencil.hpp"

using namespace agd;

namespace {

DiffPoly pq(const std::string& s, int r) { return parse_diffpoly(s, r); }

}  // namespace

TEST_CASE("curvature of a constant metric with zero Christoffels") {
    auto t_dens = density_family(Fam::t, 3);
    Mat<DiffPoly> O(3, 3);
    for (int i = 0; i < 3; ++i) O(i, 2 - i) = pq("2", 3);
    std::vector<Mat<DiffPoly>> Gamma(3, Mat<DiffPoly>(3, 3));
    CHECK(curvature(O, Gamma, t_dens).is_zero());
}

TEST_CASE("gl2 pencil: curvature of Omega2 + lambda Omega1 vanishes") {
    DsRoute route = run_ds_route(2, true);
    PencilCheck pc = check_flat_pencil(route.pencil);
    CHECK(pc.christoffels_linear);
    CHECK(pc.curvature_zero);
}

TEST_CASE("gl3 pencil: curvature and Christoffel linearity") {
    DsRoute route = run_ds_route(3, true);
    PencilCheck pc = check_flat_pencil(route.pencil);
    CHECK(pc.christoffels_linear);
    CHECK(pc.curvature_zero);
}

TEST_CASE("gl2 potential equals Eq. frob2") {
    DsRoute route = run_ds_route(2, true);
    FrobeniusPotential want = golden_potential(2);
    CHECK(route.potential.poly == want.poly);
    CHECK(route.potential.logcoeff == want.logcoeff);
}

TEST_CASE("gl3 potential equals Eq. frob3") {
    DsRoute route = run_ds_route(3, true);
    FrobeniusPotential want = golden_potential(3);
    CHECK(route.potential.poly == want.poly);
    CHECK(route.potential.logcoeff == want.logcoeff);
}

TEST_CASE("WDVV holds for the tabulated potentials") {
    for (int r : {2, 3, 4}) {
        CHECK(wdvv_check(golden_potential(r)).ok);
        CHECK(multiplication_matrices_commute(golden_potential(r)));
    }
}

TEST_CASE("WDVV detects a corrupted coefficient") {
    FrobeniusPotential bad = golden_potential(3);
    bad.poly = pq("1/12*t3*t1^3 + 1/2*t2*t3*t1 + 1/10*t2^3", 3);
    WdvvReport rep = wdvv_check(bad);
    CHECK(!rep.ok);
}

TEST_CASE("Euler and unit axioms for the tabulated potentials") {
    for (int r : {2, 3, 4}) {
        EulerReport rep = euler_and_unit_check(golden_potential(r));
        CHECK(rep.poly_quasihomogeneous);
        CHECK(rep.euler_residual_ok);
        CHECK(rep.unit_ok);
        CHECK(rep.c11_ok);
    }
}

TEST_CASE("intersection form recovers the displayed matrices") {
    for (int r : {2, 3, 4}) {
        Mat<DiffPoly> got = intersection_recover(golden_potential(r));
        CHECK(got == golden_omega2_t(r));
    }
}

TEST_CASE("ds-route intersection form equals the pencil metric") {
    for (int r : {2, 3}) {
        DsRoute route = run_ds_route(r, false);
        CHECK(intersection_recover(route.potential) == route.pencil.Omega2);
        CHECK(route.pencil.Omega2 == golden_omega2_t(r));
    }
}

TEST_CASE("first AGD direction degenerates (gl2 in z, gl3 in s)") {
    GradingScheme g;
    {
        DsRoute route = run_ds_route(2, false);
        DegeneracyReport rep = first_agd_degeneracy(route.Bz, g, Density{Fam::z, 2, 0});
        CHECK(rep.linear);
        CHECK(rep.first_row_zero);
        CHECK(rep.det_zero);
    }
    {
        LocalBracket Bs = golden_s_bracket_gl3();
        DegeneracyReport rep = first_agd_degeneracy(Bs, g, Density{Fam::s, 3, 0});
        CHECK(rep.linear);
        CHECK(rep.first_row_zero);
        CHECK(rep.det_zero);
    }
}

TEST_CASE("B-type equivalence for gl3") {
    auto rep = equivalence_check(to_tower(golden_potential(3)), btype_potential(3), btype_map(3));
    CHECK(rep.metric_proportional);
    CHECK(rep.algebra_isomorphic);
    // the metric scale is 2
    CHECK(rep.scale == TowerScalar(QuadScalar(rat(2))));
}

TEST_CASE("B-type equivalence for gl4") {
    auto rep = equivalence_check(to_tower(golden_potential(4)), btype_potential(4), btype_map(4));
    CHECK(rep.metric_proportional);
    CHECK(rep.algebra_isomorphic);
}

TEST_CASE("identity self-equivalence") {
    PotentialData ours = to_tower(golden_potential(3));
    std::vector<TowerScalar> id(3, TowerScalar(QuadScalar(rat(1))));
    auto rep = equivalence_check(ours, ours, id);
    CHECK(rep.ok());
    CHECK(rep.scale == TowerScalar(QuadScalar(rat(1))));
}

TEST_CASE("equivalence rejects a wrong map") {
    auto diag = btype_map(3);
    diag[0] = TowerScalar(QuadScalar(rat(3)));
    auto rep = equivalence_check(to_tower(golden_potential(3)), btype_potential(3), diag);
    CHECK(!rep.ok());
}
