#pragma once

#include <complex>

#include "corpuscle/dynamics.hpp"
#include "corpuscle/formfactor.hpp"
#include "corpuscle/potentials.hpp"

namespace corpuscle {

using Complex = std::complex<double>;

// Pointwise value of a complex field with the plain (non-covariant) derivatives
// needed to assemble any covariant quantity afterwards.
struct FieldSample {
    Complex psi;
    Complex dt_psi;
    std::array<Complex, 3> grad_psi;
    Complex lap_psi;
};

struct FieldProvider {
    virtual ~FieldProvider() = default;
    virtual FieldSample sample(double t, const Vec3& x) const = 0;
};

// Accelerating soliton psi = exp(iS) psi_a(|x - r(t)|) built over a trajectory.
// The phase S combines the translation term (m/chi) v.y, the local gauge terms
// from the potentials (linear, quadratic, and the optional cubic P3), the
// accumulated integral s_p carried by the trajectory, and chi*lambda t/(2m).
// Phase derivatives are evaluated through the exact balance relations, so the
// sample is an exact solution of the effective-potential equation at the
// interpolated state.
class WaveCorpuscle final : public FieldProvider {
  public:
    WaveCorpuscle(FormFactor ff, Trajectory traj, AnalyticPotentials pot, PolyScalarField P3,
                  PhysicalConstants k);

    FieldSample sample(double t, const Vec3& x) const override;

    double phase(double t, const Vec3& y) const;          // S at offset y from r(t)
    Vec3 phase_gradient(double t, const Vec3& y) const;   // grad_y S
    double phase_dt(double t, const Vec3& y) const;       // moving-frame dS/dt
    Vec3 v_tilde(double t) const;                         // v + (q/(m c)) A(t, r)

    // Effective-potential snapshot at time t (see build_auxiliary_potentials).
    AnalyticPotentials aux_potentials(double t) const;

    const FormFactor& form_factor() const { return ff_; }
    const Trajectory& trajectory() const { return traj_; }
    const AnalyticPotentials& true_potentials() const { return pot_; }
    const PolyScalarField& p3() const { return P3_; }
    const PhysicalConstants& constants() const { return k_; }

  private:
    FormFactor ff_;
    Trajectory traj_;
    AnalyticPotentials pot_;
    PolyScalarField P3_;
    PhysicalConstants k_;
};

// Provider rebuilding the corpuscle's effective potentials at each time.
struct AuxPotentials final : PotentialProvider {
    const WaveCorpuscle* wc;
    explicit AuxPotentials(const WaveCorpuscle& w) : wc(&w) {}
    AnalyticPotentials at(double t) const override { return wc->aux_potentials(t); }
};

// Constant global phase shift psi -> exp(i gamma) psi.
struct PhaseShifted final : FieldProvider {
    const FieldProvider* base;
    Complex factor;
    PhaseShifted(const FieldProvider& b, double gamma)
        : base(&b), factor(std::polar(1.0, gamma)) {}
    FieldSample sample(double t, const Vec3& x) const override;
};

struct ChargeDensities {
    double rho = 0.0;  // q |psi|^2
    Vec3 J;            // charge current from the covariant gradient
    Vec3 P;            // momentum density chi (grad S - (q/(chi c)) A) |psi|^2
};

ChargeDensities densities(const WaveCorpuscle& wc, const AnalyticPotentials& pot, double t,
                          const Vec3& x);

// rho and J for a generic field sample against given potentials.
double charge_density(const FieldSample& s, const PhysicalConstants& k);
Vec3 current_density(const FieldSample& s, const AnalyticPotentials& pot, double t, const Vec3& x,
                     const PhysicalConstants& k);
// Momentum density i chi (psi grad* psi* - psi* grad psi)/2 from a sample.
Vec3 momentum_density(const FieldSample& s, const AnalyticPotentials& pot, double t, const Vec3& x,
                      const PhysicalConstants& k);

// i chi dcov_t psi - (chi^2/(2m)) ( -lapcov psi + G'(|psi|^2) psi )
Complex nls_residual(const FieldSample& s, const AnalyticPotentials& pot, const Nonlinearity& nl,
                     double t, const Vec3& x, const PhysicalConstants& k);

}  // namespace corpuscle
