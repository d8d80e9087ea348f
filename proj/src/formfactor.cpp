#include "corpuscle/formfactor.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "corpuscle/quadrature.hpp"

namespace corpuscle {

namespace {
const double kGaussC = std::pow(std::numbers::pi, -0.75);
}

RadialProfile gaussian_profile() {
    RadialProfile p;
    p.name = "gaussian";
    p.value = [](double t) { return kGaussC * std::exp(-0.5 * t * t); };
    p.d1 = [](double t) { return -t * kGaussC * std::exp(-0.5 * t * t); };
    p.d2 = [](double t) { return (t * t - 1.0) * kGaussC * std::exp(-0.5 * t * t); };
    return p;
}

RadialProfile power_profile(double p, double C) {
    if (p <= 0.0 || C <= 0.0) throw std::invalid_argument("power_profile: p and C must be positive");
    RadialProfile r;
    r.name = "power";
    r.value = [p, C](double t) { return C * std::pow(1.0 + t * t, -p); };
    r.d1 = [p, C](double t) { return -2.0 * p * C * t * std::pow(1.0 + t * t, -p - 1.0); };
    r.d2 = [p, C](double t) {
        const double w = 1.0 + t * t;
        return -2.0 * p * C * std::pow(w, -p - 1.0) +
               4.0 * p * (p + 1.0) * C * t * t * std::pow(w, -p - 2.0);
    };
    return r;
}

double FormFactor::value(double r) const { return std::pow(a, -1.5) * profile.value(r / a); }
double FormFactor::d1(double r) const { return std::pow(a, -2.5) * profile.d1(r / a); }
double FormFactor::d2(double r) const { return std::pow(a, -3.5) * profile.d2(r / a); }

Nonlinearity logarithmic_nonlinearity() {
    Nonlinearity nl;
    nl.name = "logarithmic";
    const double c2 = kGaussC * kGaussC;  // pi^{-3/2}
    nl.s_max = c2;
    nl.gprime = [c2](double s) {
        if (s >= c2) return -3.0;
        return -std::log(s / c2) - 3.0;
    };
    nl.g = [c2](double s) {
        if (s <= 0.0) return 0.0;
        if (s >= c2) {
            const double gmax = -c2 * std::log(1.0) - 2.0 * c2;  // == -2*c2
            return gmax + (s - c2) * (-3.0);
        }
        return -s * std::log(s / c2) - 2.0 * s;
    };
    return nl;
}

Nonlinearity power_profile_nonlinearity(double p, double C) {
    if (p <= 0.0 || C <= 0.0)
        throw std::invalid_argument("power_profile_nonlinearity: p and C must be positive");
    Nonlinearity nl;
    nl.name = "power";
    const double C2 = C * C;
    nl.s_max = C2;
    auto gp = [p, C2](double s) {
        const double w = std::pow(C2 / s, 1.0 / (2.0 * p));  // 1 + theta^2
        return -6.0 * p / w + 4.0 * p * (p + 1.0) * (w - 1.0) / (w * w);
    };
    nl.gprime = [gp, p, C2](double s) {
        if (s >= C2) return -6.0 * p;
        return gp(s);
    };
    nl.g = [p, C2](double s) {
        if (s <= 0.0) return 0.0;
        auto closed = [p, C2](double w) {
            return 4.0 * p * p * C2 *
                   ((2.0 * p - 1.0) / (2.0 * p + 1.0) * std::pow(w, -2.0 * p - 1.0) -
                    std::pow(w, -2.0 * p - 2.0));
        };
        if (s >= C2) return closed(1.0) + (s - C2) * (-6.0 * p);
        return closed(std::pow(C2 / s, 1.0 / (2.0 * p)));
    };
    return nl;
}

Nonlinearity reconstruct_nonlinearity(const RadialProfile& profile, double r_max, int n_samples) {
    if (r_max <= 0.0 || n_samples < 8)
        throw std::invalid_argument("reconstruct_nonlinearity: bad r_max or n_samples");
    auto s_of_r = [profile](double r) {
        const double v = profile.value(r);
        return v * v;
    };
    auto table = std::make_shared<std::vector<std::pair<double, double>>>();  // (r, s)
    table->reserve(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double r = r_max * i / (n_samples - 1);
        table->push_back({r, s_of_r(r)});
        if (i > 0 && (*table)[i].second >= (*table)[i - 1].second)
            throw std::domain_error("reconstruct_nonlinearity: profile^2 not strictly decreasing");
    }
    const double s0 = table->front().second;
    const double s_tail = table->back().second;

    auto gp_at_r = [profile](double r) {
        const double v = profile.value(r);
        if (r < 1e-12) return 3.0 * profile.d2(0.0) / profile.value(0.0);
        return (profile.d2(r) + 2.0 * profile.d1(r) / r) / v;
    };
    auto r_of_s = [table, s_of_r](double s) {
        // bracket from the table, then bisect
        auto it = std::lower_bound(table->begin(), table->end(), s,
                                   [](const std::pair<double, double>& e, double val) {
                                       return e.second > val;  // s decreasing in r
                                   });
        double lo = (it == table->begin()) ? 0.0 : std::prev(it)->first;
        double hi = (it == table->end()) ? table->back().first : it->first;
        for (int k = 0; k < 200; ++k) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            if (s_of_r(mid) > s) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    Nonlinearity nl;
    nl.name = "reconstructed(" + profile.name + ")";
    nl.s_max = s0;
    const double gp_top = gp_at_r(0.0);
    const double gp_bottom = gp_at_r(table->back().first);
    auto gprime = [=](double s) {
        if (s >= s0) return gp_top;
        if (s <= s_tail) return gp_bottom;
        return gp_at_r(r_of_s(s));
    };
    nl.gprime = gprime;
    nl.g = [gprime, s0, gp_top](double s) {
        if (s <= 0.0) return 0.0;
        const double s_up = std::min(s, s0);
        // integrable endpoint at 0: start just above and neglect the sliver
        const double lo = s_up * 1e-12;
        double v = adaptive_simpson([&](double u) { return gprime(u); }, lo, s_up,
                                    1e-13 * std::max(1.0, s_up * 50.0));
        if (s > s0) v += (s - s0) * gp_top;
        return v;
    };
    return nl;
}

Nonlinearity scaled_nonlinearity(const Nonlinearity& base, double a) {
    if (a <= 0.0) throw std::invalid_argument("scaled_nonlinearity: a must be positive");
    Nonlinearity nl;
    nl.name = base.name + "/a=" + std::to_string(a);
    const double a2 = a * a, a3 = a * a * a, a5 = a3 * a2;
    auto gp = base.gprime;
    auto g = base.g;
    nl.gprime = [gp, a2, a3](double s) { return gp(a3 * s) / a2; };
    nl.g = [g, a5, a3](double s) { return g(a3 * s) / a5; };
    nl.s_max = base.s_max / a3;
    return nl;
}

double charge_norm(const FormFactor& ff) {
    if (ff.a <= 0.0) throw std::invalid_argument("charge_norm: a must be positive");
    // tail cutoff where theta^3 psi1(theta)^2 is negligible
    double theta_cut = 0.0;
    for (double t = 32.0; t <= 1048576.0; t *= 2.0) {
        const double v = ff.profile.value(t);
        if (t * t * t * v * v < 1e-13) {
            theta_cut = t;
            break;
        }
    }
    if (theta_cut == 0.0) throw std::domain_error("charge_norm: tail does not converge");
    auto f = [&](double r) {
        const double v = ff.value(r);
        return 4.0 * std::numbers::pi * v * v * r * r;
    };
    // dyadic panels so the peak near r ~ a is never missed
    double total = adaptive_simpson(f, 0.0, ff.a, 1e-14);
    for (double lo = ff.a; lo < ff.a * theta_cut; lo *= 2.0) {
        const double hi = std::min(lo * 2.0, ff.a * theta_cut);
        total += adaptive_simpson(f, lo, hi, 1e-14);
    }
    return total;
}

DecayReport decay_check(const RadialProfile& profile, std::span<const double> theta_grid) {
    DecayReport rep;
    if (theta_grid.size() < 4) throw std::invalid_argument("decay_check: grid too small");
    std::vector<double> q2(theta_grid.size()), q3(theta_grid.size());
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        const double t = theta_grid[i];
        q2[i] = t * t * std::abs(profile.value(t));
        q3[i] = t * t * t * std::abs(profile.d1(t));
        rep.sup_theta2_psi = std::max(rep.sup_theta2_psi, q2[i]);
        rep.sup_theta3_dpsi = std::max(rep.sup_theta3_dpsi, q3[i]);
    }
    // growth flag: still strictly rising over the last decade of the grid
    const std::size_t k = theta_grid.size() - theta_grid.size() / 8 - 1;
    rep.growing_psi = q2.back() > q2[k] && q2.back() >= 0.999 * rep.sup_theta2_psi;
    rep.growing_dpsi = q3.back() > q3[k] && q3.back() >= 0.999 * rep.sup_theta3_dpsi;
    rep.pass = !rep.growing_psi && !rep.growing_dpsi && std::isfinite(rep.sup_theta2_psi) &&
               std::isfinite(rep.sup_theta3_dpsi);
    return rep;
}

}  // namespace corpuscle
