#pragma once

#include <functional>
#include <span>
#include <string>

namespace corpuscle {

// Radial shape at unit size: value psi1(theta) with first and second derivatives.
struct RadialProfile {
    std::string name;
    std::function<double(double)> value;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
};

RadialProfile gaussian_profile();               // pi^{-3/4} exp(-theta^2/2)
RadialProfile power_profile(double p, double C = 1.0);  // C (1+theta^2)^{-p}

// Size-a dilation psi_a(r) = a^{-3/2} psi1(r/a).
struct FormFactor {
    RadialProfile profile;
    double a = 1.0;
    double lambda = 0.0;  // additive chi*lambda/(2m) phase rate

    double value(double r) const;
    double d1(double r) const;
    double d2(double r) const;
};

// Nonlinearity G' and antiderivative G with G(0) = 0; above s_max G' is extended
// by its value at s_max and G linearly.
struct Nonlinearity {
    std::string name;
    std::function<double(double)> gprime;
    std::function<double(double)> g;
    double s_max = 0.0;
};

// Closed forms matched to the built-in profiles at unit size.
Nonlinearity logarithmic_nonlinearity();                       // for gaussian_profile
Nonlinearity power_profile_nonlinearity(double p, double C = 1.0);

// G' recovered from an arbitrary monotone profile by inverting s = psi1(r)^2 on
// [0, r_max] and evaluating the radial Laplacian ratio; G by adaptive quadrature.
Nonlinearity reconstruct_nonlinearity(const RadialProfile& profile, double r_max = 12.0,
                                      int n_samples = 4096);

// Size-a rescaling: G_a'(s) = a^{-2} G'(a^3 s), G_a(s) = a^{-5} G(a^3 s).
Nonlinearity scaled_nonlinearity(const Nonlinearity& base, double a);

// 4*pi int_0^inf psi_a(r)^2 r^2 dr; throws std::domain_error if the tail bound
// does not converge.
double charge_norm(const FormFactor& ff);

struct DecayReport {
    double sup_theta2_psi = 0.0;   // sup theta^2 |psi1|
    double sup_theta3_dpsi = 0.0;  // sup theta^3 |psi1'|
    bool growing_psi = false;      // still rising at the end of the grid
    bool growing_dpsi = false;
    bool pass = false;
};

DecayReport decay_check(const RadialProfile& profile, std::span<const double> theta_grid);

}  // namespace corpuscle
