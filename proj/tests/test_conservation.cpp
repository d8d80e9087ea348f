#include <cmath>

#include "corpuscle/conservation.hpp"
#include "corpuscle/rng.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace corpuscle;
using corpuscle::testing::cubic_p3;
using corpuscle::testing::uniform_b_linear_e;

namespace {

// amplitude corrupted by (1 + 0.1 t): no longer a solution
struct Corrupted final : FieldProvider {
    const FieldProvider* base;
    explicit Corrupted(const FieldProvider& b) : base(&b) {}
    FieldSample sample(double t, const Vec3& x) const override {
        FieldSample s = base->sample(t, x);
        const double f = 1.0 + 0.1 * t;
        const FieldSample orig = s;
        s.psi *= f;
        s.dt_psi = f * orig.dt_psi + 0.1 * orig.psi;
        for (auto& g : s.grad_psi) g *= f;
        s.lap_psi *= f;
        return s;
    }
};

double slope2(double e1, double e2, double h1, double h2) {
    return std::log(e1 / e2) / std::log(h1 / h2);
}

}  // namespace

TEST_CASE("energy-momentum entries on a corpuscle") {
    PhysicalConstants k{};
    AnalyticPotentials pot = uniform_b_linear_e();
    Trajectory traj = integrate_newton(pot, Vec3{0.1, 0, 0}, Vec3{0.2, 0.1, 0}, 0.0, 0.5, 1e-3, k);
    const double a = 0.05;
    WaveCorpuscle wc({gaussian_profile(), a}, traj, pot, cubic_p3(), k);
    Nonlinearity nl = scaled_nonlinearity(logarithmic_nonlinearity(), a);
    SeededRng rng(23);
    for (int i = 0; i < 25; ++i) {
        const double t = rng.uniform(0.0, 0.5);
        const Vec3 x = traj.r(t) + rng.uniform(0.0, 3.0 * a) * rng.unit_vector();
        const FieldSample s = wc.sample(t, x);
        const EnMT e = enmt_at_point(s, pot, nl, t, x, k);
        const Vec3 P = momentum_density(s, pot, t, x, k);
        // T^{0j} equals the momentum density, two separate code paths
        const Vec3 A = pot.A.eval(t, x);
        const double n = std::norm(s.psi);
        for (int j = 0; j < 3; ++j) {
            const double scale = std::abs(k.chi * std::imag(std::conj(s.psi) * s.grad_psi[j])) +
                                 std::abs(k.q / k.c * A[j] * n);
            CHECK(std::abs(e.p[j] - P[j]) <= 4.0 * 2.23e-16 * scale);
        }
        // spatial symmetry holds exactly
        CHECK(e.Tspatial[0][1] == e.Tspatial[1][0]);
        CHECK(e.Tspatial[0][2] == e.Tspatial[2][0]);
        CHECK(e.Tspatial[1][2] == e.Tspatial[2][1]);
    }
}

TEST_CASE("gauge invariance of the lagrangian and tensor entries") {
    PhysicalConstants k{};
    AnalyticPotentials pot = uniform_b_linear_e();
    Trajectory traj = integrate_newton(pot, Vec3{0.1, 0, 0}, Vec3{0.2, 0.1, 0}, 0.0, 0.5, 1e-3, k);
    const double a = 0.05;
    WaveCorpuscle wc({gaussian_profile(), a}, traj, pot, PolyScalarField{}, k);
    Nonlinearity nl = scaled_nonlinearity(logarithmic_nonlinearity(), a);
    const double t = 0.3;
    const Vec3 x = traj.r(t) + Vec3{0.04, -0.02, 0.01};
    const FieldSample s = wc.sample(t, x);
    const double L = lagrangian_density(s, pot, nl, t, x, k);
    const EnMT e = enmt_at_point(s, pot, nl, t, x, k);
    const ForceDensity4 f = force_density(s, pot, t, x, k);
    for (double gamma : {0.37, 3.14159265358979323846}) {
        PhaseShifted sh(wc, gamma);
        const FieldSample s2 = sh.sample(t, x);
        const double scale = std::max(std::abs(L), 1.0);
        CHECK(std::abs(lagrangian_density(s2, pot, nl, t, x, k) - L) <= 1e-12 * scale);
        const EnMT e2 = enmt_at_point(s2, pot, nl, t, x, k);
        CHECK(std::abs(e2.u - e.u) <= 1e-12 * std::abs(e.u));
        CHECK(norm(e2.p - e.p) <= 1e-12 * norm(e.p));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(std::abs(e2.Tspatial[i][j] - e.Tspatial[i][j]) <=
                      1e-12 * std::max(std::abs(e.Tspatial[i][j]), scale));
        const ForceDensity4 f2 = force_density(s2, pot, t, x, k);
        CHECK(norm(f2.f - f.f) <= 1e-12 * std::max(norm(f.f), 1.0));
    }
    // structural identity behind the invariance, termwise
    SeededRng rng(29);
    for (int i = 0; i < 20; ++i) {
        const double tt = rng.uniform(0.0, 0.5);
        const Vec3 xx = traj.r(tt) + rng.uniform(0.0, 3.0 * a) * rng.unit_vector();
        const FieldSample ss = wc.sample(tt, xx);
        const double scale = std::max(std::abs(lagrangian_density(ss, pot, nl, tt, xx, k)), 1.0);
        CHECK(gauge_structural_identity(ss, pot, nl, tt, xx, k) <= 1e-12 * scale);
    }
}

TEST_CASE("continuity and momentum residuals converge at fourth order") {
    PhysicalConstants k{};
    AnalyticPotentials pot = uniform_b_linear_e();
    Trajectory traj = integrate_newton(pot, Vec3{0.1, 0, 0}, Vec3{0.2, 0.1, 0}, 0.0, 0.5, 1e-3, k);
    const double a = 0.4;
    WaveCorpuscle wc({gaussian_profile(), a}, traj, pot, cubic_p3(), k);
    Nonlinearity nl = scaled_nonlinearity(logarithmic_nonlinearity(), a);
    AuxPotentials prov(wc);
    const double t = 0.25;
    const Vec3 x = traj.r(t) + Vec3{0.5 * a, 0.3 * a, -0.2 * a};
    const double h1 = a / 10.0, h2 = a / 20.0, h3 = a / 40.0;
    const double c1 = std::abs(continuity_residual(wc, prov, t, x, h1, k));
    const double c2 = std::abs(continuity_residual(wc, prov, t, x, h2, k));
    const double c3 = std::abs(continuity_residual(wc, prov, t, x, h3, k));
    CHECK(slope2(c1, c2, h1, h2) == doctest::Approx(4.0).epsilon(0.08));
    CHECK(slope2(c2, c3, h2, h3) == doctest::Approx(4.0).epsilon(0.08));
    const double m1 = norm(momentum_residual(wc, prov, nl, t, x, h1, k));
    const double m2 = norm(momentum_residual(wc, prov, nl, t, x, h2, k));
    CHECK(slope2(m1, m2, h1, h2) == doctest::Approx(4.0).epsilon(0.08));
}

TEST_CASE("free corpuscle has zero force density") {
    PhysicalConstants k{};
    AnalyticPotentials none;
    Trajectory traj = integrate_newton(none, Vec3{}, Vec3{0.3, 0, 0}, 0.0, 0.5, 1e-3, k);
    const double a = 0.3;
    WaveCorpuscle wc({gaussian_profile(), a}, traj, none, PolyScalarField{}, k);
    AuxPotentials prov(wc);
    const double t = 0.2;
    const Vec3 x = traj.r(t) + Vec3{0.1, 0.05, 0.0};
    const ForceDensity4 f = force_density(wc.sample(t, x), none, t, x, k);
    CHECK(norm(f.f) < 1e-15);
    CHECK(std::abs(f.f0) < 1e-15);
    const double c2 = std::abs(continuity_residual(wc, prov, t, x, a / 20.0, k));
    const double c1 = std::abs(continuity_residual(wc, prov, t, x, a / 10.0, k));
    CHECK(slope2(c1, c2, a / 10.0, a / 20.0) == doctest::Approx(4.0).epsilon(0.08));
}

TEST_CASE("corrupted field is caught as a negative control") {
    PhysicalConstants k{};
    AnalyticPotentials pot = uniform_b_linear_e();
    Trajectory traj = integrate_newton(pot, Vec3{0.1, 0, 0}, Vec3{0.2, 0.1, 0}, 0.0, 0.5, 1e-3, k);
    const double a = 0.4;
    WaveCorpuscle wc({gaussian_profile(), a}, traj, pot, PolyScalarField{}, k);
    Corrupted bad(wc);
    AuxPotentials prov(wc);
    const double t = 0.25;
    const Vec3 x = traj.r(t) + Vec3{0.5 * a, 0.3 * a, -0.2 * a};
    const double h = a / 20.0;
    const double good = std::abs(continuity_residual(wc, prov, t, x, h, k));
    const double corrupted = std::abs(continuity_residual(bad, prov, t, x, h, k));
    CHECK(corrupted >= 1e3 * good);
}
