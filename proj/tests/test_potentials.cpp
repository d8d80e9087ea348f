#include <cmath>

#include "corpuscle/dynamics.hpp"
#include "corpuscle/potentials.hpp"
#include "corpuscle/rng.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace corpuscle;
using corpuscle::testing::cubic_p3;
using corpuscle::testing::monomial;
using corpuscle::testing::uniform_b_linear_e;

TEST_CASE("em fields of the symmetric gauge") {
    AnalyticPotentials pot = uniform_b_linear_e();
    const PhysicalConstants k{};
    EMFieldSample em = em_fields(pot, 0.7, Vec3{0.3, -0.8, 0.2}, k);
    CHECK(norm(em.E - Vec3{0.1, 0, 0}) < 1e-15);
    CHECK(norm(em.B - Vec3{0, 0, 1}) < 1e-15);
}

TEST_CASE("time-dependent vector potential contributes to E") {
    AnalyticPotentials pot;
    pot.A = PolyVectorField(Vec3{});
    pot.A[0] = monomial(Vec3{}, {0, 0, 0}, 0.0);
    pot.A[0].add_term({0, 0, 0}, TimePoly(std::vector<double>{0.0, 2.0}));  // A_x = 2t
    const PhysicalConstants k{};
    EMFieldSample em = em_fields(pot, 1.3, Vec3{}, k);
    CHECK(em.E.x == doctest::Approx(-2.0 / k.c));
    CHECK(norm(em.B) < 1e-15);
}

TEST_CASE("linearization about a center") {
    // phi = x^2 about center (1, 0, 0): 1 + 2 (x - 1) plus no higher terms
    AnalyticPotentials pot;
    pot.phi = monomial(Vec3{}, {2, 0, 0}, 1.0);
    AnalyticPotentials lin = linearize_potentials(pot, Vec3{1, 0, 0});
    CHECK(lin.phi.eval(0.0, Vec3{1, 0, 0}) == doctest::Approx(1.0));
    CHECK(lin.phi.eval(0.0, Vec3{1.5, 0, 0}) == doctest::Approx(2.0));  // 1 + 2 * 0.5
    CHECK(lin.phi.spatial_degree() <= 1);
}

TEST_CASE("auxiliary potentials balance the Lorentz force") {
    const PhysicalConstants k{1.3, -0.8, 0.9, 2.0};
    AnalyticPotentials pot = uniform_b_linear_e();
    // add gentle quadratic structure so M and g are nontrivial
    pot.phi = pot.phi + monomial(Vec3{}, {0, 2, 0}, 0.05);
    pot.A[2] = monomial(Vec3{}, {0, 1, 0}, 0.2);
    SeededRng rng(77);
    for (int trial = 0; trial < 5; ++trial) {
        const Vec3 r{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const Vec3 v{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const double t = rng.uniform(0, 1);
        AnalyticPotentials aux = build_auxiliary_potentials(pot, r, v, t, cubic_p3(), k);
        const Vec3 rddot = (1.0 / k.m) * lorentz_force(pot, t, r, v, k);
        for (int i = 0; i < 5; ++i) {
            const Vec3 y = rng.uniform(0.0, 0.5) * rng.unit_vector();
            BalanceResidual br = balance_residual(aux, t, r, v, rddot, y, k);
            CHECK(norm(br.force) <= 1e-12);
            CHECK(std::abs(br.div_tangent) <= 1e-12);
        }
    }
}

TEST_CASE("auxiliary potentials reproduce the true fields at the center") {
    const PhysicalConstants k{};
    AnalyticPotentials pot = uniform_b_linear_e();
    pot.phi = pot.phi + monomial(Vec3{}, {0, 2, 0}, 0.05);
    const Vec3 r{0.3, 0.1, -0.2}, v{0.4, 0, 0.1};
    const double t = 0.6;
    AnalyticPotentials aux = build_auxiliary_potentials(pot, r, v, t, PolyScalarField{}, k);
    EMFieldSample tru = em_fields(pot, t, r, k);
    EMFieldSample eff = em_fields(aux, t, r, k);
    CHECK(norm(tru.B - eff.B) < 1e-13);
    CHECK(norm(tru.E - eff.E) < 1e-13);
}

TEST_CASE("uncorrected quadratic potential fails the balance at first order") {
    const PhysicalConstants k{};
    AnalyticPotentials pot;
    pot.phi = monomial(Vec3{}, {2, 0, 0}, 0.3) + monomial(Vec3{}, {0, 1, 1}, -0.2);
    const Vec3 r{0.1, 0.2, 0.0}, v{0.5, 0, 0};
    const double t = 0.0;
    const Vec3 rddot = (1.0 / k.m) * lorentz_force(pot, t, r, v, k);
    const Vec3 dir = Vec3{1, 1, 1};
    std::vector<double> hs, res;
    for (double h : {0.1, 0.05, 0.025, 0.0125}) {
        BalanceResidual br = balance_residual(pot, t, r, v, rddot, h * dir, k);
        hs.push_back(h);
        res.push_back(norm(br.force));
        CHECK(norm(br.force) > 1e-6);
    }
    // halving |y| halves the defect
    CHECK(res[0] / res[1] == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("potential construction input validation") {
    const PhysicalConstants k{};
    AnalyticPotentials pot = uniform_b_linear_e();
    PolyScalarField deg4(Vec3{});
    deg4.add_term({4, 0, 0}, TimePoly(1.0));
    CHECK_THROWS_AS(
        (void)build_auxiliary_potentials(pot, Vec3{}, Vec3{}, 0.0, deg4, k),
        std::invalid_argument);
    PolyScalarField off_origin(Vec3{1, 0, 0});
    off_origin.add_term({3, 0, 0}, TimePoly(1.0));
    CHECK_THROWS_AS(
        (void)build_auxiliary_potentials(pot, Vec3{}, Vec3{}, 0.0, off_origin, k),
        std::invalid_argument);
    PhysicalConstants bad;
    bad.m = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("potentials JSON round trip") {
    AnalyticPotentials pot = uniform_b_linear_e();
    AnalyticPotentials back = AnalyticPotentials::from_json(pot.to_json());
    const Vec3 x{0.5, -0.4, 1.2};
    CHECK(back.phi.eval(0.3, x) == doctest::Approx(pot.phi.eval(0.3, x)));
    CHECK(norm(back.A.eval(0.3, x) - pot.A.eval(0.3, x)) < 1e-15);
}
