#include "corpuscle/corpuscle.hpp"

#include <cmath>

namespace corpuscle {

namespace {

constexpr Complex kI{0.0, 1.0};

struct PhaseEval {
    double S = 0.0;
    Vec3 gradS;
    double lapS = 0.0;
    double dtS = 0.0;  // moving frame
    Vec3 v;
};

struct P3Eval {
    double value = 0.0;      // without any constant term
    Vec3 grad;
    double lap = 0.0;
    double dt = 0.0;
};

P3Eval eval_p3(const PolyScalarField& P3, double t, const Vec3& y) {
    P3Eval e;
    if (P3.empty()) return e;
    e.value = P3.eval(t, y) - P3.homogeneous_part(0).eval(t, y);
    for (int i = 0; i < 3; ++i) e.grad[i] = P3.diff(i).eval(t, y);
    e.lap = P3.laplacian(t, y);
    e.dt = (P3.dt().eval(t, y)) - P3.dt().homogeneous_part(0).eval(t, y);
    return e;
}

PhaseEval eval_phase(const FormFactor& ff, const TrajectoryState& st, const LocalFrame& f,
                     const PolyScalarField& P3, const PhysicalConstants& k, double t,
                     const Vec3& y) {
    PhaseEval p;
    p.v = st.v;
    const P3Eval p3 = eval_p3(P3, t, y);
    const double qcc = k.q / (k.chi * k.c);
    const Vec3 My = f.M.apply(y);
    const Vec3 Msym_y = f.M.sym().apply(y);
    const Vec3 abreve = f.M.antisym().apply(y);
    const double lam_rate = k.chi * ff.lambda / (2.0 * k.m);

    p.S = (k.m / k.chi) * dot(st.v, y) +
          qcc * (dot(y, f.A0) + 0.5 * dot(y, My) + p3.value) + st.s_p + lam_rate * t;
    p.gradS = (k.m / k.chi) * st.v + qcc * (f.A0 + Msym_y + p3.grad);
    p.lapS = qcc * (f.M.trace() + p3.lap);

    const Vec3 A_aux = f.A0 + My + p3.grad;
    const double ab2 = norm2(abreve);
    const double phi2 = -(k.q / (2.0 * k.m * k.c * k.c)) * ab2 -
                        (0.5 * dot(y, f.M_dot.apply(y)) + p3.dt) / k.c +
                        dot(st.v, p3.grad) / k.c;
    const double phi_aux = f.phi0 + dot(y, f.g) + phi2;
    p.dtS = (0.5 * k.m * norm2(st.v) + (k.q / k.c) * dot(st.v, A_aux) -
             (k.q * k.q / (2.0 * k.m * k.c * k.c)) * ab2 - k.q * phi_aux) /
                k.chi +
            lam_rate;
    return p;
}

}  // namespace

WaveCorpuscle::WaveCorpuscle(FormFactor ff, Trajectory traj, AnalyticPotentials pot,
                             PolyScalarField P3, PhysicalConstants k)
    : ff_(std::move(ff)), traj_(std::move(traj)), pot_(std::move(pot)), P3_(std::move(P3)),
      k_(k) {
    k_.validate();
    if (!(ff_.a > 0.0)) throw std::invalid_argument("WaveCorpuscle: form factor size must be positive");
    if (P3_.spatial_degree() > 3)
        throw std::invalid_argument("WaveCorpuscle: P3 degree exceeds 3");
    if (!P3_.empty() && norm2(P3_.origin()) != 0.0)
        throw std::invalid_argument("WaveCorpuscle: P3 must be centered at 0");
}

double WaveCorpuscle::phase(double t, const Vec3& y) const {
    const TrajectoryState st = traj_.state(t);
    const LocalFrame f = local_frame(pot_, t, st.r, st.v);
    return eval_phase(ff_, st, f, P3_, k_, t, y).S;
}

Vec3 WaveCorpuscle::phase_gradient(double t, const Vec3& y) const {
    const TrajectoryState st = traj_.state(t);
    const LocalFrame f = local_frame(pot_, t, st.r, st.v);
    return eval_phase(ff_, st, f, P3_, k_, t, y).gradS;
}

double WaveCorpuscle::phase_dt(double t, const Vec3& y) const {
    const TrajectoryState st = traj_.state(t);
    const LocalFrame f = local_frame(pot_, t, st.r, st.v);
    return eval_phase(ff_, st, f, P3_, k_, t, y).dtS;
}

Vec3 WaveCorpuscle::v_tilde(double t) const {
    const TrajectoryState st = traj_.state(t);
    return st.v + (k_.q / (k_.m * k_.c)) * pot_.A.eval(t, st.r);
}

AnalyticPotentials WaveCorpuscle::aux_potentials(double t) const {
    const TrajectoryState st = traj_.state(t);
    return build_auxiliary_potentials(pot_, st.r, st.v, t, P3_, k_);
}

FieldSample WaveCorpuscle::sample(double t, const Vec3& x) const {
    const TrajectoryState st = traj_.state(t);
    const LocalFrame f = local_frame(pot_, t, st.r, st.v);
    const Vec3 y = x - st.r;
    const PhaseEval p = eval_phase(ff_, st, f, P3_, k_, t, y);

    const double rr = norm(y);
    const double pv = ff_.value(rr);
    const double pd1 = ff_.d1(rr);
    const double pd2 = ff_.d2(rr);
    const Complex eiS = std::polar(1.0, p.S);

    FieldSample s;
    s.psi = eiS * pv;
    if (rr < 1e-12 * ff_.a) {
        // radial limit: psi'(0) = 0, psi'' + 2 psi'/r -> 3 psi''(0)
        const double d20 = ff_.d2(0.0);
        for (int i = 0; i < 3; ++i) s.grad_psi[i] = eiS * (kI * p.gradS[i] * pv);
        s.lap_psi = eiS * ((kI * p.lapS - norm2(p.gradS)) * pv + 3.0 * d20);
        s.dt_psi = eiS * (kI * (p.dtS - dot(p.v, p.gradS)) * pv);
        return s;
    }
    const Vec3 yhat = y / rr;
    for (int i = 0; i < 3; ++i) s.grad_psi[i] = eiS * (kI * p.gradS[i] * pv + pd1 * yhat[i]);
    s.lap_psi = eiS * ((kI * p.lapS - norm2(p.gradS)) * pv + 2.0 * kI * pd1 * dot(p.gradS, yhat) +
                       pd2 + 2.0 * pd1 / rr);
    s.dt_psi = eiS * (kI * (p.dtS - dot(p.v, p.gradS)) * pv - pd1 * dot(yhat, p.v));
    return s;
}

FieldSample PhaseShifted::sample(double t, const Vec3& x) const {
    FieldSample s = base->sample(t, x);
    s.psi *= factor;
    s.dt_psi *= factor;
    s.lap_psi *= factor;
    for (auto& g : s.grad_psi) g *= factor;
    return s;
}

double charge_density(const FieldSample& s, const PhysicalConstants& k) {
    return k.q * std::norm(s.psi);
}

Vec3 current_density(const FieldSample& s, const AnalyticPotentials& pot, double t, const Vec3& x,
                     const PhysicalConstants& k) {
    const Vec3 A = pot.A.eval(t, x);
    Vec3 J;
    const double n = std::norm(s.psi);
    for (int i = 0; i < 3; ++i)
        J[i] = (k.q * k.chi / k.m) * std::imag(std::conj(s.psi) * s.grad_psi[i]) -
               (k.q * k.q / (k.m * k.c)) * A[i] * n;
    return J;
}

Vec3 momentum_density(const FieldSample& s, const AnalyticPotentials& pot, double t, const Vec3& x,
                      const PhysicalConstants& k) {
    const Vec3 A = pot.A.eval(t, x);
    Vec3 P;
    const double n = std::norm(s.psi);
    for (int i = 0; i < 3; ++i)
        P[i] = k.chi * std::imag(std::conj(s.psi) * s.grad_psi[i]) - (k.q / k.c) * A[i] * n;
    return P;
}

ChargeDensities densities(const WaveCorpuscle& wc, const AnalyticPotentials& pot, double t,
                          const Vec3& x) {
    const PhysicalConstants& k = wc.constants();
    ChargeDensities d;
    const FieldSample s = wc.sample(t, x);
    d.rho = charge_density(s, k);
    d.J = current_density(s, pot, t, x, k);
    // independent path through the explicit phase gradient
    const Vec3 y = x - wc.trajectory().r(t);
    const double pv = wc.form_factor().value(norm(y));
    const Vec3 A = pot.A.eval(t, x);
    const Vec3 gS = wc.phase_gradient(t, y);
    for (int i = 0; i < 3; ++i)
        d.P[i] = k.chi * (gS[i] - (k.q / (k.chi * k.c)) * A[i]) * pv * pv;
    return d;
}

Complex nls_residual(const FieldSample& s, const AnalyticPotentials& pot, const Nonlinearity& nl,
                     double t, const Vec3& x, const PhysicalConstants& k) {
    const double phi = pot.phi.eval(t, x);
    const Vec3 A = pot.A.eval(t, x);
    const double divA = pot.A.divergence().eval(t, x);
    const double qcc = k.q / (k.chi * k.c);

    const Complex dt_cov = s.dt_psi + kI * (k.q * phi / k.chi) * s.psi;
    Complex A_dot_grad = 0.0;
    for (int i = 0; i < 3; ++i) A_dot_grad += A[i] * s.grad_psi[i];
    const Complex lap_cov = s.lap_psi - kI * qcc * (divA * s.psi + 2.0 * A_dot_grad) -
                            qcc * qcc * norm2(A) * s.psi;
    const double dens = std::norm(s.psi);
    const Complex nlterm = dens > 0.0 ? nl.gprime(dens) * s.psi : Complex{0.0, 0.0};
    return kI * k.chi * dt_cov - (k.chi * k.chi / (2.0 * k.m)) * (-lap_cov + nlterm);
}

}  // namespace corpuscle
