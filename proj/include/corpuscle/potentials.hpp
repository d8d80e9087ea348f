#pragma once

#include <memory>

#include "corpuscle/polyfield.hpp"
#include "corpuscle/vec3.hpp"

namespace corpuscle {

struct PhysicalConstants {
    double m = 1.0;    // mass
    double q = 1.0;    // charge
    double chi = 1.0;  // action scale
    double c = 1.0;    // light speed
    void validate() const;
};

struct AnalyticPotentials {
    PolyScalarField phi;
    PolyVectorField A;

    nlohmann::json to_json() const;
    static AnalyticPotentials from_json(const nlohmann::json& j);
};

struct EMFieldSample {
    Vec3 E;  // -grad phi - (1/c) dA/dt
    Vec3 B;  // curl A
};

EMFieldSample em_fields(const AnalyticPotentials& pot, double t, const Vec3& x,
                        const PhysicalConstants& k);

// Zeroth plus first spatial order of both potentials about a fixed center;
// exact in t for that center.
AnalyticPotentials linearize_potentials(const AnalyticPotentials& pot, const Vec3& center);

// Values and first total time derivatives of the potentials along a trajectory
// point (r, v) at time t; jac[j][i] = d_i A_j.
struct LocalFrame {
    Vec3 r, v;
    Vec3 A0, A0_dot;        // A(t,r) and its total d/dt
    Mat3 M, M_dot;          // grad A and total d/dt of grad A
    double phi0 = 0.0, phi0_dot = 0.0;
    Vec3 g, g_dot;          // grad phi and total d/dt
};

LocalFrame local_frame(const AnalyticPotentials& pot, double t, const Vec3& r, const Vec3& v);

// Effective potentials with exact force balance about the trajectory point:
// A_aux = A0 + (x-r).grad A + grad P3, phi_aux = phi0 + (x-r).grad phi + phi2,
// phi2 = -(q/(2 m c^2)) |Abreve|^2 - (1/c) d_t(P2 + P3) + (1/c) v.grad P3.
// The snapshot is centered at r and is valid at the build time t: values are
// exact there and the A coefficients carry the exact first time derivative, so
// E/B derived from it at time t are exact. Rebuild per evaluation time.
// P3 must be a spatial polynomial in y = x - r (origin 0), degree <= 3.
AnalyticPotentials build_auxiliary_potentials(const AnalyticPotentials& pot, const Vec3& r,
                                              const Vec3& v, double t,
                                              const PolyScalarField& P3,
                                              const PhysicalConstants& k);

// Moving-frame force balance at offset y from the trajectory point:
//   force = m*rddot - (q/c) grad(v.A) + (q^2/(2 m c^2)) grad|Abreve|^2
//           + q grad(phi) + (q/c) d_t A_grad
// and the divergence of the tangential part; both vanish identically for the
// auxiliary potentials when rddot matches the Lorentz force.
struct BalanceResidual {
    Vec3 force;
    double div_tangent = 0.0;
};

BalanceResidual balance_residual(const AnalyticPotentials& pot, double t, const Vec3& r,
                                 const Vec3& v, const Vec3& rddot, const Vec3& y,
                                 const PhysicalConstants& k);

struct PotentialProvider {
    virtual ~PotentialProvider() = default;
    virtual AnalyticPotentials at(double t) const = 0;
};

// Time-independent provider wrapping fixed analytic potentials.
struct TruePotentials final : PotentialProvider {
    AnalyticPotentials pot;
    explicit TruePotentials(AnalyticPotentials p) : pot(std::move(p)) {}
    AnalyticPotentials at(double) const override { return pot; }
};

}  // namespace corpuscle
