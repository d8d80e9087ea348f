#include "corpuscle/concentration.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

namespace corpuscle {

Neighborhood::Neighborhood(double R_, double inner_scale_, int n_polar, int n_azimuth,
                           int radial_nodes)
    : R(R_), inner_scale(inner_scale_) {
    if (!(R > 0.0)) throw std::invalid_argument("Neighborhood: R must be positive");
    sphere = make_sphere_rule(n_polar, n_azimuth);
    radial = make_radial_rule(R, inner_scale, radial_nodes);
    radial_coarse = make_radial_rule(R, inner_scale, std::max(4, radial_nodes - 4));
}

AdjacentCharge adjacent_charge_and_center(const FieldProvider& field, const PhysicalConstants& k,
                                          double t, const Vec3& center, const Neighborhood& nb) {
    AdjacentCharge out;
    Vec3 moment{};
    auto integrate = [&](const RadialRule& rule, Vec3* moment_out) {
        double total = 0.0;
        for (std::size_t ir = 0; ir < rule.nodes.size(); ++ir) {
            const double r = rule.nodes[ir];
            const double wr = rule.weights[ir];
            for (std::size_t id = 0; id < nb.sphere.dirs.size(); ++id) {
                const Vec3 x = center + r * nb.sphere.dirs[id];
                const double rho = charge_density(field.sample(t, x), k);
                total += wr * nb.sphere.weights[id] * rho;
                if (moment_out) *moment_out += (wr * nb.sphere.weights[id] * rho) * x;
            }
        }
        return total;
    };
    out.rho_bar = integrate(nb.radial, &moment);
    const double coarse = integrate(nb.radial_coarse, nullptr);
    out.center = out.rho_bar != 0.0 ? moment / out.rho_bar : center;
    const double scale = std::max(std::abs(out.rho_bar), 1e-300);
    out.refinement_gap = std::abs(coarse - out.rho_bar) / scale;
    return out;
}

namespace {

// composite Simpson weights on an even number of intervals
std::vector<double> simpson_weights(int intervals, double h) {
    std::vector<double> w(intervals + 1, 0.0);
    for (int i = 0; i <= intervals; ++i) {
        double c = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        w[i] = c * h / 3.0;
    }
    return w;
}

int even_intervals(int requested) {
    int n = std::max(2, requested);
    return n % 2 == 0 ? n : n + 1;
}

}  // namespace

QRecord q_integrals(const FieldProvider& field, const AnalyticPotentials& pot,
                    const Nonlinearity& nl, const Trajectory& traj, double t0, double t1,
                    const Neighborhood& nb, int time_steps, const PhysicalConstants& k) {
    if (!(t1 > t0)) throw std::invalid_argument("q_integrals: need t1 > t0");
    const int nt = even_intervals(time_steps);
    const double ht = (t1 - t0) / nt;
    const std::vector<double> wt = simpson_weights(nt, ht);

    QRecord rec;
    for (int it = 0; it <= nt; ++it) {
        const double t = t0 + ht * it;
        const Vec3 rhat = traj.r(t);
        const Vec3 vhat = traj.v(t);
        // fields at the trajectory point for the zero-order subtraction
        const EMFieldSample em_inf = em_fields(pot, t, rhat, k);

        // surface sweep
        Vec3 q0_t{}, q01_t{}, q20_t{}, q22_t{};
        double q23_t = 0.0;
        for (std::size_t id = 0; id < nb.sphere.dirs.size(); ++id) {
            const Vec3& n = nb.sphere.dirs[id];
            const double w = nb.sphere.weights[id] * nb.R * nb.R;
            const Vec3 x = rhat + nb.R * n;
            const FieldSample s = field.sample(t, x);
            const double rho = charge_density(s, k);
            const Vec3 J = current_density(s, pot, t, x, k);
            const Vec3 P = momentum_density(s, pot, t, x, k);
            const EnMT en = enmt_at_point(s, pot, nl, t, x, k);
            const Vec3 xr = x - rhat;
            const double vn = dot(vhat, n);
            for (int j = 0; j < 3; ++j) {
                double flux = 0.0;
                for (int i = 0; i < 3; ++i) flux += n[i] * en.Tspatial[i][j];
                q0_t[j] += w * flux;
            }
            q01_t += (w * vn) * P;
            q20_t -= (w * vn * rho) * xr;
            q22_t += (w * dot(n, J)) * xr;
            q23_t += w * (vn * rho - dot(n, J));
        }
        rec.Q0 += wt[it] * q0_t;
        rec.Q01 += wt[it] * q01_t;
        rec.Q23 += wt[it] * q23_t;
        rec.Q20_sup = std::max(rec.Q20_sup, norm(q20_t));
        rec.Q22_sup = std::max(rec.Q22_sup, norm(q22_t));
        if (it == nt) {
            rec.Q20_final = q20_t;
            rec.Q22_final = q22_t;
        }

        // volume sweep for Q30 + Q31
        Vec3 q3_t{};
        for (std::size_t ir = 0; ir < nb.radial.nodes.size(); ++ir) {
            const double r = nb.radial.nodes[ir];
            const double wr = nb.radial.weights[ir];
            for (std::size_t id = 0; id < nb.sphere.dirs.size(); ++id) {
                const double w = wr * nb.sphere.weights[id];
                const Vec3 x = rhat + r * nb.sphere.dirs[id];
                const FieldSample s = field.sample(t, x);
                const double rho = charge_density(s, k);
                const Vec3 J = current_density(s, pot, t, x, k);
                const EMFieldSample em = em_fields(pot, t, x, k);
                q3_t += w * (rho * (em.E - em_inf.E) + (1.0 / k.c) * cross(J, em.B - em_inf.B));
            }
        }
        rec.Q3 += wt[it] * q3_t;
    }
    return rec;
}

PrimedRecord primed_diagnostics(const WaveCorpuscle& wc, const Nonlinearity& nl, double t0,
                                double t1, const Neighborhood& nb, int time_steps) {
    if (!(t1 > t0)) throw std::invalid_argument("primed_diagnostics: need t1 > t0");
    const PhysicalConstants& k = wc.constants();
    const AnalyticPotentials& pot = wc.true_potentials();
    const Trajectory& traj = wc.trajectory();
    const int nt = even_intervals(time_steps);
    const double ht = (t1 - t0) / nt;
    const std::vector<double> wt = simpson_weights(nt, ht);

    PrimedRecord rec;
    Vec3 pprime_first{};
    Vec3 pflux_int{}, tflux_int{};
    for (int it = 0; it <= nt; ++it) {
        const double t = t0 + ht * it;
        const Vec3 rhat = traj.r(t);
        const Vec3 vhat = traj.v(t);
        const AnalyticPotentials aux = wc.aux_potentials(t);

        // volume: int P', int J', int f'
        Vec3 pvol{}, jvol{}, fvol{};
        for (std::size_t ir = 0; ir < nb.radial.nodes.size(); ++ir) {
            const double r = nb.radial.nodes[ir];
            const double wr = nb.radial.weights[ir];
            for (std::size_t id = 0; id < nb.sphere.dirs.size(); ++id) {
                const double w = wr * nb.sphere.weights[id];
                const Vec3 x = rhat + r * nb.sphere.dirs[id];
                const FieldSample s = wc.sample(t, x);
                const Vec3 Pp = momentum_density(s, pot, t, x, k) -
                                momentum_density(s, aux, t, x, k);
                const Vec3 Jp = current_density(s, pot, t, x, k) -
                                current_density(s, aux, t, x, k);
                const ForceDensity4 ft = force_density(s, pot, t, x, k);
                const ForceDensity4 fa = force_density(s, aux, t, x, k);
                pvol += w * Pp;
                jvol += w * Jp;
                fvol += w * (ft.f - fa.f);
            }
        }
        rec.Pprime_sup = std::max(rec.Pprime_sup, norm(pvol));
        if (it == 0) pprime_first = pvol;
        if (it == nt) rec.Pprime_final = pvol;
        rec.fprime_int += wt[it] * fvol;

        // surface: P'(v.n), n_i T^{ij}', (x-r)(n.J'), n.J'
        Vec3 pflux_t{}, tflux_t{}, q2p_t{};
        double jflux_t = 0.0;
        for (std::size_t id = 0; id < nb.sphere.dirs.size(); ++id) {
            const Vec3& n = nb.sphere.dirs[id];
            const double w = nb.sphere.weights[id] * nb.R * nb.R;
            const Vec3 x = rhat + nb.R * n;
            const FieldSample s = wc.sample(t, x);
            const Vec3 Pp = momentum_density(s, pot, t, x, k) - momentum_density(s, aux, t, x, k);
            const Vec3 Jp = current_density(s, pot, t, x, k) - current_density(s, aux, t, x, k);
            const EnMT et = enmt_at_point(s, pot, nl, t, x, k);
            const EnMT ea = enmt_at_point(s, aux, nl, t, x, k);
            const double vn = dot(vhat, n);
            pflux_t += (w * vn) * Pp;
            for (int j = 0; j < 3; ++j) {
                double flux = 0.0;
                for (int i = 0; i < 3; ++i) flux += n[i] * (et.Tspatial[i][j] - ea.Tspatial[i][j]);
                tflux_t[j] += w * flux;
            }
            q2p_t += (w * dot(n, Jp)) * (x - rhat);
            jflux_t += w * dot(n, Jp);
        }
        pflux_int += wt[it] * pflux_t;
        tflux_int += wt[it] * tflux_t;
        rec.Q3prime += wt[it] * jflux_t;
        rec.Q2prime = std::max(rec.Q2prime, norm(q2p_t - jvol));
    }
    rec.Pprime_flux = norm(pflux_int);
    rec.Tprime_flux = norm(tflux_int);
    rec.Q0prime =
        norm(rec.Pprime_final - pprime_first - pflux_int + tflux_int - rec.fprime_int);
    rec.Q3prime = std::abs(rec.Q3prime);
    return rec;
}

double ConcentrationSchedule::a(int n) const { return a0 * std::pow(n, -a_exp); }
double ConcentrationSchedule::R(int n) const { return R0 * std::pow(n, -R_exp); }

void ConcentrationSchedule::validate() const {
    if (n_min < 1 || n_max < n_min) throw std::invalid_argument("schedule: bad n range");
    if (!(a0 > 0.0) || !(R0 > 0.0)) throw std::invalid_argument("schedule: a0, R0 must be positive");
    if (!(R_exp > 0.0)) throw std::invalid_argument("schedule: R_exp must be positive");
    if (!(a_exp > 4.0 * R_exp))
        throw std::invalid_argument("schedule: need a_exp > 4 R_exp so that a R^-4 -> 0");
}

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    SlopeFit f;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    f.points = static_cast<int>(lx.size());
    if (f.points < 2) return f;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < f.points; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
        syy += ly[i] * ly[i];
    }
    const double n = f.points;
    const double den = n * sxx - sx * sx;
    if (den == 0.0) return f;
    f.slope = (n * sxy - sx * sy) / den;
    const double vy = n * syy - sy * sy;
    f.r2 = vy > 0.0 ? (n * sxy - sx * sy) * (n * sxy - sx * sy) / (den * vy) : 1.0;
    f.valid = true;
    return f;
}

ConcentrationReport concentration_study(const AnalyticPotentials& pot,
                                        const RadialProfile& profile, const Nonlinearity& nl_base,
                                        const Vec3& r0, const Vec3& v0, double t0, double t1,
                                        const ConcentrationSchedule& sched,
                                        const PolyScalarField& P3, const PhysicalConstants& k,
                                        const StudyOptions& opt) {
    k.validate();
    sched.validate();
    Trajectory traj = integrate_newton(pot, r0, v0, t0, t1, opt.step, k);

    ConcentrationReport rep;
    rep.sup_speed = traj.sup_speed();
    rep.sup_accel = traj.sup_accel();

    auto run_one = [&](int n) {
        ConcentrationRecord rec;
        rec.n = n;
        rec.a = sched.a(n);
        rec.R = sched.R(n);
        rec.theta = rec.R / rec.a;
        FormFactor ff{profile, rec.a, 0.0};
        WaveCorpuscle wc(ff, traj, pot, P3, k);
        Neighborhood nb(rec.R, rec.a, opt.n_polar, opt.n_azimuth, opt.radial_nodes);
        const Nonlinearity nl = scaled_nonlinearity(nl_base, rec.a);

        const int nt = even_intervals(opt.time_steps);
        const double ht = (t1 - t0) / nt;
        double rho0 = 0.0;
        for (int it = 0; it <= nt; ++it) {
            const double t = t0 + ht * it;
            const AdjacentCharge ac = adjacent_charge_and_center(wc, k, t, traj.r(t), nb);
            if (it == 0) {
                rho0 = ac.rho_bar;
                rec.quad_gap = ac.refinement_gap;
            }
            rec.rho_drift = std::max(rec.rho_drift, std::abs(ac.rho_bar - rho0));
            rec.center_err = std::max(rec.center_err, norm(ac.center - traj.r(t)));
        }
        rec.rho_bar = rho0;
        rec.q = q_integrals(wc, pot, nl, traj, t0, t1, nb, opt.time_steps, k);
        rec.p = primed_diagnostics(wc, nl, t0, t1, nb, opt.time_steps);
        return rec;
    };

    std::vector<int> ns;
    for (int n = sched.n_min; n <= sched.n_max; ++n) ns.push_back(n);
    rep.records.resize(ns.size());
    if (opt.threads > 1) {
        std::vector<std::future<ConcentrationRecord>> futs;
        futs.reserve(ns.size());
        for (int n : ns) futs.push_back(std::async(std::launch::async, run_one, n));
        for (std::size_t i = 0; i < futs.size(); ++i) rep.records[i] = futs[i].get();
    } else {
        for (std::size_t i = 0; i < ns.size(); ++i) rep.records[i] = run_one(ns[i]);
    }

    std::vector<double> xn, xR;
    for (const auto& r : rep.records) {
        xn.push_back(static_cast<double>(r.n));
        xR.push_back(r.R);
    }
    auto collect = [&](auto getter) {
        std::vector<double> v;
        for (const auto& r : rep.records) v.push_back(getter(r));
        return v;
    };
    rep.slopes["Q0"] = fit_loglog(xn, collect([](const ConcentrationRecord& r) { return norm(r.q.Q0); }));
    rep.slopes["Q01"] = fit_loglog(xn, collect([](const ConcentrationRecord& r) { return norm(r.q.Q01); }));
    rep.slopes["Q20"] = fit_loglog(xn, collect([](const ConcentrationRecord& r) { return r.q.Q20_sup; }));
    rep.slopes["Q22"] = fit_loglog(xn, collect([](const ConcentrationRecord& r) { return r.q.Q22_sup; }));
    rep.slopes["Q23"] = fit_loglog(xn, collect([](const ConcentrationRecord& r) { return std::abs(r.q.Q23); }));
    rep.slopes["Q3"] = fit_loglog(xn, collect([](const ConcentrationRecord& r) { return norm(r.q.Q3); }));
    rep.slopes["Pprime"] = fit_loglog(xn, collect([](const ConcentrationRecord& r) { return r.p.Pprime_sup; }));
    rep.slopes["Q0prime"] = fit_loglog(xn, collect([](const ConcentrationRecord& r) { return r.p.Q0prime; }));
    rep.slopes["Q2prime"] = fit_loglog(xn, collect([](const ConcentrationRecord& r) { return r.p.Q2prime; }));
    rep.slopes["Q3prime"] = fit_loglog(xn, collect([](const ConcentrationRecord& r) { return r.p.Q3prime; }));
    rep.slopes["Pprime_vs_R"] =
        fit_loglog(xR, collect([](const ConcentrationRecord& r) { return r.p.Pprime_sup; }));
    return rep;
}

}  // namespace corpuscle
