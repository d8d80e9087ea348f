#include "corpuscle/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "corpuscle/concentration.hpp"
#include "corpuscle/config.hpp"
#include "corpuscle/conservation.hpp"
#include "corpuscle/corpuscle.hpp"
#include "corpuscle/quadrature.hpp"
#include "corpuscle/rng.hpp"
#include "corpuscle/splitting.hpp"

namespace corpuscle {

namespace {

PolyScalarField monomial(const Vec3& origin, MultiIndex d, double c) {
    PolyScalarField f(origin);
    f.add_term(d, TimePoly(c));
    return f;
}

// uniform B = (0,0,1) in symmetric gauge plus uniform E = (0.1, 0, 0)
AnalyticPotentials uniform_b_linear_e() {
    AnalyticPotentials pot;
    pot.phi = monomial({}, {1, 0, 0}, -0.1);
    pot.A = PolyVectorField(Vec3{});
    pot.A[0] = monomial({}, {0, 1, 0}, -0.5);
    pot.A[1] = monomial({}, {1, 0, 0}, 0.5);
    return pot;
}

PolyScalarField cubic_p3() {
    PolyScalarField p(Vec3{});
    p.add_term({3, 0, 0}, TimePoly(0.1));
    p.add_term({1, 1, 1}, TimePoly(0.2));
    return p;
}

struct Runner {
    std::vector<SelfTestResult>& out;
    void check(const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
        SelfTestResult r;
        r.name = name;
        try {
            auto [ok, detail] = fn();
            r.pass = ok;
            r.detail = detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        out.push_back(r);
    }
};

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::vector<SelfTestResult> run_selftests() {
    std::vector<SelfTestResult> results;
    Runner run{results};
    const PhysicalConstants k{};

    run.check("sphere quadrature exact through degree 8", [] {
        const double err = make_sphere_rule().validate(8);
        return std::pair{err < 1e-12, "max rel err " + num(err)};
    });

    run.check("ball quadrature integrates constants", [] {
        const double R = 0.37;
        RadialRule rr = make_radial_rule(R, 0.01);
        double vol = 0.0;
        for (double w : rr.weights) vol += w;
        vol *= 4.0 * 3.14159265358979323846;
        const double exact = 4.0 / 3.0 * 3.14159265358979323846 * R * R * R;
        const double err = std::abs(vol - exact) / exact;
        return std::pair{err < 1e-12, "rel err " + num(err)};
    });

    run.check("polynomial splitter reconstructs and stays tangent", [] {
        SeededRng rng(7);
        PolyVectorField V(Vec3{});
        for (int comp = 0; comp < 3; ++comp)
            for (int i = 0; i <= 3; ++i)
                for (int j = 0; i + j <= 3; ++j)
                    for (int l = 0; i + j + l <= 3; ++l)
                        V[comp].add_term({i, j, l}, TimePoly(rng.uniform(-1.0, 1.0)));
        SplitResult s = split_polynomial_field(V);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const Vec3 y{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            const Vec3 rec = s.potential.gradient().eval(0.3, y) + s.tangent.eval(0.3, y);
            worst = std::max(worst, norm(rec - V.eval(0.3, y)));
            worst = std::max(worst, std::abs(dot(y, s.tangent.eval(0.3, y))));
        }
        return std::pair{worst < 1e-12, "max defect " + num(worst)};
    });

    run.check("numeric splitter matches polynomial splitter", [] {
        SeededRng rng(11);
        PolyVectorField V(Vec3{});
        for (int comp = 0; comp < 3; ++comp)
            for (int i = 0; i <= 2; ++i)
                for (int j = 0; i + j <= 2; ++j)
                    for (int l = 0; i + j + l <= 2; ++l)
                        V[comp].add_term({i, j, l}, TimePoly(rng.uniform(-1.0, 1.0)));
        SplitResult s = split_polynomial_field(V);
        auto fn = [&](const Vec3& y) { return V.eval(0.0, y); };
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const Vec3 y{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            PointSplit ps = split_field_at_point(fn, y);
            worst = std::max(worst, std::abs(ps.potential - s.potential.eval(0.0, y)));
            worst = std::max(worst, norm(ps.tangent - s.tangent.eval(0.0, y)));
        }
        return std::pair{worst < 1e-9, "max gap " + num(worst)};
    });

    run.check("charge norm is size-invariant for the gaussian", [] {
        double worst = 0.0;
        for (double a : {1.0, 0.05, 0.002})
            worst = std::max(worst, std::abs(charge_norm({gaussian_profile(), a}) - 1.0));
        return std::pair{worst < 1e-10, "max |v0 - 1| " + num(worst)};
    });

    run.check("decay bounds hold for built-in profiles", [] {
        std::vector<double> grid;
        for (int i = 0; i <= 400; ++i) grid.push_back(0.05 * i);
        const DecayReport g = decay_check(gaussian_profile(), grid);
        const DecayReport p = decay_check(power_profile(2.0), grid);
        return std::pair{g.pass && p.pass, "sup values " + num(g.sup_theta2_psi) + ", " +
                                               num(p.sup_theta2_psi)};
    });

    run.check("nonlinearity reconstruction matches the closed form", [] {
        Nonlinearity rec = reconstruct_nonlinearity(gaussian_profile());
        Nonlinearity ref = logarithmic_nonlinearity();
        double worst = 0.0;
        for (double s : {1e-7, 1e-4, 1e-2, 0.1})
            worst = std::max(worst,
                             std::abs(rec.gprime(s) - ref.gprime(s)) / std::abs(ref.gprime(s)));
        return std::pair{worst < 1e-8, "max rel err " + num(worst)};
    });

    run.check("auxiliary potentials satisfy the force balance", [k] {
        AnalyticPotentials pot = uniform_b_linear_e();
        const Vec3 r{0.2, -0.1, 0.3}, v{0.3, 0.2, -0.1};
        const double t = 0.4;
        AnalyticPotentials aux = build_auxiliary_potentials(pot, r, v, t, cubic_p3(), k);
        const Vec3 rddot = (1.0 / k.m) * lorentz_force(pot, t, r, v, k);
        double worst = 0.0;
        for (const Vec3& y : {Vec3{0.05, 0, 0}, Vec3{-0.1, 0.2, 0.07}}) {
            BalanceResidual br = balance_residual(aux, t, r, v, rddot, y, k);
            worst = std::max(worst, std::max(norm(br.force), std::abs(br.div_tangent)));
        }
        return std::pair{worst < 1e-12, "max residual " + num(worst)};
    });

    run.check("corpuscle solves its effective equation", [k] {
        AnalyticPotentials pot = uniform_b_linear_e();
        Trajectory traj = integrate_newton(pot, {0.1, 0, 0}, {0.2, 0.1, 0}, 0.0, 0.5, 1e-3, k);
        const double a = 0.05;
        WaveCorpuscle wc({gaussian_profile(), a}, traj, pot, cubic_p3(), k);
        Nonlinearity nl = scaled_nonlinearity(logarithmic_nonlinearity(), a);
        const double scale0 = k.chi * k.chi / (2.0 * k.m * a * a);
        SeededRng rng(3);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double t = rng.uniform(0.0, 0.5);
            const Vec3 x = traj.r(t) + rng.uniform(0.0, 3.0 * a) * rng.unit_vector();
            const FieldSample s = wc.sample(t, x);
            const Complex res = nls_residual(s, wc.aux_potentials(t), nl, t, x, k);
            worst = std::max(worst, std::abs(res) / (scale0 * std::abs(s.psi)));
        }
        return std::pair{worst < 1e-9, "max scaled residual " + num(worst)};
    });

    run.check("momentum identities and gauge invariance", [k] {
        AnalyticPotentials pot = uniform_b_linear_e();
        Trajectory traj = integrate_newton(pot, {0.1, 0, 0}, {0.2, 0.1, 0}, 0.0, 0.5, 1e-3, k);
        const double a = 0.05;
        WaveCorpuscle wc({gaussian_profile(), a}, traj, pot, cubic_p3(), k);
        Nonlinearity nl = scaled_nonlinearity(logarithmic_nonlinearity(), a);
        const double t = 0.31;
        const Vec3 x = traj.r(t) + Vec3{0.7 * a, -0.4 * a, 0.2 * a};
        const ChargeDensities d = densities(wc, pot, t, x);
        const FieldSample s = wc.sample(t, x);
        const EnMT e = enmt_at_point(s, pot, nl, t, x, k);
        double worst = norm(d.P - (k.m / k.q) * d.J) / std::max(norm(d.P), 1e-300);
        worst = std::max(worst, norm(e.p - d.P) / std::max(norm(d.P), 1e-300));
        const double tscale = std::max(std::abs(e.Tspatial[0][1]), 1.0);
        worst = std::max(worst, std::abs(e.Tspatial[0][1] - e.Tspatial[1][0]) / tscale);
        PhaseShifted shifted(wc, 0.37);
        const FieldSample s2 = shifted.sample(t, x);
        const double L = lagrangian_density(s, pot, nl, t, x, k);
        const double lscale = std::max(std::abs(L), 1.0);
        worst = std::max(worst, std::abs(L - lagrangian_density(s2, pot, nl, t, x, k)) / lscale);
        worst = std::max(worst, gauge_structural_identity(s, pot, nl, t, x, k) / lscale);
        return std::pair{worst < 1e-11, "max defect " + num(worst)};
    });

    run.check("conservation residuals shrink at fourth order", [k] {
        AnalyticPotentials pot = uniform_b_linear_e();
        Trajectory traj = integrate_newton(pot, {0.1, 0, 0}, {0.2, 0.1, 0}, 0.0, 0.5, 1e-3, k);
        const double a = 1.0;
        WaveCorpuscle wc({gaussian_profile(), a}, traj, pot, PolyScalarField{}, k);
        TruePotentials prov(pot);
        const double t = 0.25;
        const Vec3 x = traj.r(t) + Vec3{0.5 * a, 0.3 * a, -0.2 * a};
        const double r1 = std::abs(continuity_residual(wc, prov, t, x, a / 10.0, k));
        const double r2 = std::abs(continuity_residual(wc, prov, t, x, a / 20.0, k));
        const double ratio = r1 / std::max(r2, 1e-300);
        return std::pair{ratio > 8.0 && ratio < 40.0, "refinement ratio " + num(ratio)};
    });

    run.check("schedule validation rejects a R^-4 growth", [] {
        ConcentrationSchedule bad;
        bad.a_exp = 3.0;  // <= 4 * R_exp
        try {
            bad.validate();
            return std::pair{false, std::string("accepted invalid schedule")};
        } catch (const std::invalid_argument&) {
            return std::pair{true, std::string("rejected as expected")};
        }
    });

    run.check("config JSON round trip is idempotent", [] {
        StudyConfig c;
        c.potentials = uniform_b_linear_e();
        c.P3 = cubic_p3();
        const nlohmann::json j1 = c.to_json();
        const nlohmann::json j2 = StudyConfig::from_json(j1).to_json();
        return std::pair{j1 == j2, j1 == j2 ? "stable" : "mismatch"};
    });

    return results;
}

}  // namespace corpuscle
