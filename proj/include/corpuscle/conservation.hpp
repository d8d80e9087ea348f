#pragma once

#include "corpuscle/corpuscle.hpp"

namespace corpuscle {

// Energy-momentum entries at a point: u = T00, p = (T01, T02, T03), full Tij
// for spatial i, j, and the energy flux column Tj0.
struct EnMT {
    double u = 0.0;
    Vec3 p;
    Mat3 Tspatial;  // Tspatial[i][j] = T^{ij}, i, j spatial
    Vec3 Tj0;
};

double lagrangian_density(const FieldSample& s, const AnalyticPotentials& pot,
                          const Nonlinearity& nl, double t, const Vec3& x,
                          const PhysicalConstants& k);

EnMT enmt_at_point(const FieldSample& s, const AnalyticPotentials& pot, const Nonlinearity& nl,
                   double t, const Vec3& x, const PhysicalConstants& k);

struct ForceDensity4 {
    double f0 = 0.0;  // (1/c) J.E
    Vec3 f;           // rho E + (1/c) J x B
};

ForceDensity4 force_density(const FieldSample& s, const AnalyticPotentials& pot, double t,
                            const Vec3& x, const PhysicalConstants& k);

// Structural identity behind gauge invariance: the phase-rotation combination
// of partial derivatives of L, identically zero for the NLS Lagrangian.
double gauge_structural_identity(const FieldSample& s, const AnalyticPotentials& pot,
                                 const Nonlinearity& nl, double t, const Vec3& x,
                                 const PhysicalConstants& k);

// d_t rho + div J via centered fourth-order stencils of half-width 2h; the
// potentials provider is queried at each stencil time.
double continuity_residual(const FieldProvider& field, const PotentialProvider& pots, double t,
                           const Vec3& x, double h, const PhysicalConstants& k);

// d_t P + d_i T^{ij} - f^j, same stencils.
Vec3 momentum_residual(const FieldProvider& field, const PotentialProvider& pots,
                       const Nonlinearity& nl, double t, const Vec3& x, double h,
                       const PhysicalConstants& k);

}  // namespace corpuscle
