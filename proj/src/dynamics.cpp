#include "corpuscle/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace corpuscle {

Vec3 lorentz_force(const AnalyticPotentials& pot, double t, const Vec3& r, const Vec3& v,
                   const PhysicalConstants& k) {
    const EMFieldSample em = em_fields(pot, t, r, k);
    return k.q * em.E + (k.q / k.c) * cross(v, em.B);
}

namespace {

struct Deriv {
    Vec3 dr, dv;
    double dsp;
};

Deriv rhs(const AnalyticPotentials& pot, double t, const TrajectoryState& s,
          const PhysicalConstants& k) {
    Deriv d;
    d.dr = s.v;
    d.dv = (1.0 / k.m) * lorentz_force(pot, t, s.r, s.v, k);
    d.dsp = (0.5 * k.m * norm2(s.v) + (k.q / k.c) * dot(s.v, pot.A.eval(t, s.r)) -
             k.q * pot.phi.eval(t, s.r)) /
            k.chi;
    return d;
}

TrajectoryState advance(const TrajectoryState& s, const Deriv& d, double h) {
    return {s.r + h * d.dr, s.v + h * d.dv, s.s_p + h * d.dsp};
}

}  // namespace

Trajectory::Trajectory(std::vector<double> t, std::vector<TrajectoryState> s,
                       std::vector<TrajectoryState> sdot)
    : t_(std::move(t)), s_(std::move(s)), sdot_(std::move(sdot)) {
    if (t_.size() < 2 || t_.size() != s_.size() || t_.size() != sdot_.size())
        throw std::invalid_argument("Trajectory: inconsistent node arrays");
}

TrajectoryState Trajectory::state(double t) const {
    if (t <= t_.front()) return s_.front();
    if (t >= t_.back()) return s_.back();
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - t_.begin()) - 1;
    const double h = t_[i + 1] - t_[i];
    const double u = (t - t_[i]) / h;
    // cubic Hermite basis
    const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
    const double h10 = u * (1.0 - u) * (1.0 - u);
    const double h01 = u * u * (3.0 - 2.0 * u);
    const double h11 = u * u * (u - 1.0);
    auto blend = [&](double a, double da, double b, double db) {
        return h00 * a + h10 * h * da + h01 * b + h11 * h * db;
    };
    const TrajectoryState &a = s_[i], &b = s_[i + 1];
    const TrajectoryState &da = sdot_[i], &db = sdot_[i + 1];
    TrajectoryState out;
    for (int c = 0; c < 3; ++c) {
        out.r[c] = blend(a.r[c], da.r[c], b.r[c], db.r[c]);
        out.v[c] = blend(a.v[c], da.v[c], b.v[c], db.v[c]);
    }
    out.s_p = blend(a.s_p, da.s_p, b.s_p, db.s_p);
    return out;
}

double Trajectory::sup_speed() const {
    double s = 0.0;
    for (const auto& n : s_) s = std::max(s, norm(n.v));
    return s;
}

double Trajectory::sup_accel() const {
    double s = 0.0;
    for (const auto& n : sdot_) s = std::max(s, norm(n.v));
    return s;
}

Trajectory integrate_newton(const AnalyticPotentials& pot, const Vec3& r0, const Vec3& v0,
                            double t0, double t1, double step, const PhysicalConstants& k) {
    k.validate();
    if (!(t1 > t0)) throw std::invalid_argument("integrate_newton: need t1 > t0");
    if (!(step > 0.0)) throw std::invalid_argument("integrate_newton: step must be positive");
    const auto n_steps = static_cast<std::size_t>(std::ceil((t1 - t0) / step - 1e-12));
    const double h = (t1 - t0) / static_cast<double>(n_steps);

    std::vector<double> t;
    std::vector<TrajectoryState> s, sdot;
    t.reserve(n_steps + 1);
    s.reserve(n_steps + 1);
    sdot.reserve(n_steps + 1);

    TrajectoryState cur{r0, v0, 0.0};
    for (std::size_t i = 0; i <= n_steps; ++i) {
        const double ti = t0 + h * static_cast<double>(i);
        const Deriv d1 = rhs(pot, ti, cur, k);
        t.push_back(ti);
        s.push_back(cur);
        sdot.push_back({d1.dr, d1.dv, d1.dsp});
        if (i == n_steps) break;
        const Deriv d2 = rhs(pot, ti + 0.5 * h, advance(cur, d1, 0.5 * h), k);
        const Deriv d3 = rhs(pot, ti + 0.5 * h, advance(cur, d2, 0.5 * h), k);
        const Deriv d4 = rhs(pot, ti + h, advance(cur, d3, h), k);
        Deriv dsum;
        dsum.dr = (1.0 / 6.0) * (d1.dr + 2.0 * d2.dr + 2.0 * d3.dr + d4.dr);
        dsum.dv = (1.0 / 6.0) * (d1.dv + 2.0 * d2.dv + 2.0 * d3.dv + d4.dv);
        dsum.dsp = (d1.dsp + 2.0 * d2.dsp + 2.0 * d3.dsp + d4.dsp) / 6.0;
        cur = advance(cur, dsum, h);
    }
    return Trajectory(std::move(t), std::move(s), std::move(sdot));
}

}  // namespace corpuscle
