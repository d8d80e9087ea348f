#pragma once

#include <functional>

#include "corpuscle/polyfield.hpp"

namespace corpuscle {

// Decomposition V = grad(Pi) + tangent with y . tangent = 0, relative to V's origin.
struct SplitResult {
    PolyScalarField potential;  // Pi, no constant term
    PolyVectorField tangent;    // Vbreve
};

// Exact splitter for polynomial fields of spatial degree <= 3; per homogeneous
// degree j: Pi_{j+1} = y.V_j / (j+1), tangent_j = V_j - grad(Pi_{j+1}).
// Throws std::invalid_argument above degree 3.
SplitResult split_polynomial_field(const PolyVectorField& V);

struct PointSplit {
    double potential = 0.0;  // Pi(y)
    Vec3 grad_potential;     // grad Pi at y
    Vec3 tangent;            // V(y) - grad Pi
};

// Ray-integral splitter for a general field at a single point:
// Pi(y) = int_0^1 y . V(s y) ds by Gauss-Legendre, grad Pi by fourth-order
// central differences of Pi (exact through quartic Pi, so exact on cubic V).
PointSplit split_field_at_point(const std::function<Vec3(const Vec3&)>& V, const Vec3& y,
                                int quad_nodes = 32, double fd_step = 0.0);

}  // namespace corpuscle
