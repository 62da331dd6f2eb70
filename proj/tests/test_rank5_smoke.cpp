#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "agd/engine.hpp"

using namespace agd;

// Rank 5 has no tabulated reference values; this exercises the whole
// pipeline once and checks the structural invariants only.
TEST_CASE("rank-5 pipeline smoke") {
    DsRoute route = run_ds_route(5, false);
    GradingScheme g;

    // linearity and the compatible bracket
    JetVar s4(Fam::s, 4, 0, 0);
    for (auto& [ij, terms] : route.Bs.stored())
        for (auto& t : terms) CHECK(t.jet_partial(s4).jet_partial(s4).is_zero());
    CHECK(lie_derivative(route.B1s, Density{Fam::s, 4, 0}).is_zero());

    // pencil normalization and potential structure
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            DiffPoly want;
            if (i + j == 4) want = DiffPoly::constant(QuadScalar(rat(4)));
            CHECK(route.pencil.Omega1(i, j) == want);
        }
    CHECK(route.potential.logcoeff == QuadScalar(rat(1, 8)));
    CHECK(wdvv_check(route.potential).ok);
    EulerReport er = euler_and_unit_check(route.potential);
    CHECK(er.poly_quasihomogeneous);
    CHECK(er.unit_ok);
    CHECK(intersection_recover(route.potential) == route.pencil.Omega2);

    // the two routes still agree
    OrbitRoute orbit = run_orbit_route(5);
    CHECK(orbit.potential.poly == route.potential.poly);
    CHECK(orbit.potential.logcoeff == route.potential.logcoeff);

    // central invariants are reported without a tabulated expectation;
    // they must at least be constant across samples
    std::mt19937_64 rng(5);
    auto rep1 = central_invariants_sampled(5, route.Bt, route.B1t, rng, RootChoice::plus);
    auto rep2 = central_invariants_sampled(5, route.Bt, route.B1t, rng, RootChoice::plus);
    for (auto& v : rep1.values)
        CHECK(std::abs(v.re - rep1.values[0].re) < 1e-7);
    CHECK(std::abs(rep1.values[0].re - rep2.values[0].re) < 1e-7);
}
