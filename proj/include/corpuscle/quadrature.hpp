#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "corpuscle/vec3.hpp"

namespace corpuscle {

struct QuadRule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1]; nodes by Newton iteration, cached per n.
const QuadRule1D& gauss_legendre(int n);

// Gauss-Legendre rule mapped to [a, b].
QuadRule1D gauss_legendre_on(int n, double a, double b);

// Recursive adaptive Simpson with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 50);

// Product rule on the unit sphere: Gauss-Legendre in cos(theta) x uniform azimuth.
// Weights sum to 4*pi; antipodally symmetric for even n_azimuth.
struct SphereRule {
    std::vector<Vec3> dirs;
    std::vector<double> weights;
    int n_polar = 0;
    int n_azimuth = 0;
    // Max relative error integrating monomials x^i y^j z^k, i+j+k <= max_deg, vs closed form.
    double validate(int max_deg = 8) const;
};

SphereRule make_sphere_rule(int n_polar = 24, int n_azimuth = 48);

// Radial rule on [0, R] with Gauss-Legendre panels refined near 0 at inner_scale.
// Weights include the r^2 Jacobian: sum_i w_i f(r_i) ~ int_0^R f(r) r^2 dr.
struct RadialRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

RadialRule make_radial_rule(double R, double inner_scale, int nodes_per_panel = 12);

}  // namespace corpuscle
