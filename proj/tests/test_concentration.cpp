#include <cmath>

#include "corpuscle/concentration.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace corpuscle;
using corpuscle::testing::uniform_b_linear_e;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("neighborhood quadrature sanity") {
    Neighborhood nb(0.4, 0.05);
    CHECK(nb.sphere.validate(8) < 1e-12);
    double vol = 0.0;
    for (double w : nb.radial.weights) vol += w;
    CHECK(4.0 * kPi * vol == doctest::Approx(4.0 / 3.0 * kPi * 0.4 * 0.4 * 0.4).epsilon(1e-12));
}

TEST_CASE("adjacent charge and center of a resting corpuscle") {
    PhysicalConstants k{};
    AnalyticPotentials none;
    Trajectory traj = integrate_newton(none, Vec3{0.2, -0.1, 0.3}, Vec3{}, 0.0, 0.1, 1e-3, k);
    const double a = 0.05;
    WaveCorpuscle wc({gaussian_profile(), a}, traj, none, PolyScalarField{}, k);

    SUBCASE("theta = R/a = 1 reproduces the closed-form ball fraction") {
        Neighborhood nb(a, a);
        AdjacentCharge ac = adjacent_charge_and_center(wc, k, 0.05, traj.r(0.05), nb);
        const double oracle = std::erf(1.0) - 2.0 * std::exp(-1.0) / std::sqrt(kPi);
        CHECK(ac.rho_bar == doctest::Approx(k.q * oracle).epsilon(1e-9));
        CHECK(norm(ac.center - traj.r(0.05)) <= 1e-10);
    }
    SUBCASE("theta = 5 captures all but a tail below 1e-9") {
        Neighborhood nb(5.0 * a, a);
        AdjacentCharge ac = adjacent_charge_and_center(wc, k, 0.05, traj.r(0.05), nb);
        CHECK(std::abs(ac.rho_bar - k.q) < 1e-9);
        CHECK(ac.refinement_gap < 1e-6);
    }
    SUBCASE("theta = 8 recovers the full charge to 1e-9") {
        Neighborhood nb(8.0 * a, a);
        AdjacentCharge ac = adjacent_charge_and_center(wc, k, 0.05, traj.r(0.05), nb);
        CHECK(ac.rho_bar == doctest::Approx(k.q * charge_norm({gaussian_profile(), a})).epsilon(1e-9));
    }
}

TEST_CASE("surface charge integral matches the closed form") {
    PhysicalConstants k{};
    AnalyticPotentials none;
    const RadialProfile prof = gaussian_profile();
    for (auto [a, R] : {std::pair{0.1, 0.5}, {0.05, 0.4}, {0.02, 0.3}}) {
        Trajectory traj = integrate_newton(none, Vec3{}, Vec3{}, 0.0, 0.01, 1e-3, k);
        WaveCorpuscle wc({prof, a}, traj, none, PolyScalarField{}, k);
        Neighborhood nb(R, a);
        double surf = 0.0;
        for (std::size_t i = 0; i < nb.sphere.dirs.size(); ++i) {
            const FieldSample s = wc.sample(0.0, R * nb.sphere.dirs[i]);
            surf += nb.sphere.weights[i] * std::norm(s.psi);
        }
        surf *= R * R;  // spherical surface measure
        const double theta = R / a;
        const double p1 = prof.value(theta);
        const double oracle = 4.0 * kPi * a * std::pow(R, -2.0) * std::pow(theta, 4.0) * p1 * p1;
        CHECK(surf == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("linear potentials give vanishing field-difference integrals") {
    PhysicalConstants k{};
    AnalyticPotentials pot = uniform_b_linear_e();  // E, B spatially constant
    Trajectory traj = integrate_newton(pot, Vec3{0.1, 0, 0}, Vec3{0.2, 0.1, 0}, 0.0, 0.2, 1e-3, k);
    const double a = 0.05;
    WaveCorpuscle wc({gaussian_profile(), a}, traj, pot, PolyScalarField{}, k);
    Nonlinearity nl = scaled_nonlinearity(logarithmic_nonlinearity(), a);
    Neighborhood nb(0.4, a);
    QRecord q = q_integrals(wc, pot, nl, traj, 0.0, 0.2, nb, 8, k);
    CHECK(norm(q.Q3) < 1e-12);
}

TEST_CASE("matching potentials zero out every primed quantity") {
    PhysicalConstants k{};
    AnalyticPotentials pot = uniform_b_linear_e();
    Trajectory traj = integrate_newton(pot, Vec3{0.1, 0, 0}, Vec3{0.2, 0.1, 0}, 0.0, 0.2, 1e-3, k);
    const double a = 0.05;
    // P3 = 0: the linearized effective potentials reproduce the true ones
    WaveCorpuscle wc({gaussian_profile(), a}, traj, pot, PolyScalarField{}, k);
    Nonlinearity nl = scaled_nonlinearity(logarithmic_nonlinearity(), a);
    Neighborhood nb(0.4, a);
    PrimedRecord p = primed_diagnostics(wc, nl, 0.0, 0.2, nb, 8);
    CHECK(p.Pprime_sup < 1e-14);
    CHECK(p.Q0prime < 1e-12);
    CHECK(p.Q2prime < 1e-14);
    CHECK(p.Q3prime < 1e-14);
}

TEST_CASE("schedule accessors and validation") {
    ConcentrationSchedule s;  // a = 0.02 n^-5, R = 0.5 n^-1
    CHECK(s.a(1) == doctest::Approx(0.02));
    CHECK(s.a(2) == doctest::Approx(0.02 / 32.0));
    CHECK(s.R(4) == doctest::Approx(0.125));
    s.validate();
    ConcentrationSchedule bad = s;
    bad.a_exp = 4.0;  // a R^-4 no longer vanishes
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = s;
    bad.R0 = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("log-log slope fit on synthetic power laws") {
    std::vector<double> x, y;
    for (int n = 1; n <= 8; ++n) {
        x.push_back(n);
        y.push_back(3.0 * std::pow(double(n), -2.5));
    }
    SlopeFit f = fit_loglog(x, y);
    CHECK(f.valid);
    CHECK(f.slope == doctest::Approx(-2.5).epsilon(1e-12));
    CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
    // degenerate input: all zeros
    SlopeFit z = fit_loglog(x, std::vector<double>(8, 0.0));
    CHECK_FALSE(z.valid);
}
