#pragma once

#include <map>
#include <string>
#include <vector>

#include "corpuscle/conservation.hpp"
#include "corpuscle/corpuscle.hpp"
#include "corpuscle/quadrature.hpp"

namespace corpuscle {

// Ball of radius R around a moving center, discretized by a product sphere
// rule and a radial rule refined near the center at inner_scale.
struct Neighborhood {
    double R = 0.0;
    double inner_scale = 0.0;
    SphereRule sphere;
    RadialRule radial;
    RadialRule radial_coarse;  // for refinement-gap estimates

    Neighborhood(double R, double inner_scale, int n_polar = 24, int n_azimuth = 48,
                 int radial_nodes = 12);
};

struct AdjacentCharge {
    double rho_bar = 0.0;    // int over the ball of q|psi|^2
    Vec3 center;             // charge centroid
    double refinement_gap = 0.0;  // relative change under radial refinement
};

AdjacentCharge adjacent_charge_and_center(const FieldProvider& field, const PhysicalConstants& k,
                                          double t, const Vec3& center, const Neighborhood& nb);

// Boundary and field-zero-order diagnostics of Definition-style concentration
// conditions over [t0, t1]; time integrals by composite Simpson on time_steps
// intervals (rounded up to even).
struct QRecord {
    Vec3 Q0;           // int dt oint n_i T^{ij} dsigma
    Vec3 Q01;          // int dt oint P (v.n) dsigma
    Vec3 Q20_final;    // -oint (x-r)(v.n) rho dsigma at t1
    double Q20_sup = 0.0;
    Vec3 Q22_final;    // oint (x-r)(n.J) dsigma at t1
    double Q22_sup = 0.0;
    double Q23 = 0.0;  // int dt oint (v.n rho - n.J) dsigma
    Vec3 Q3;           // int dt [ int (E-Einf) rho + (1/c) J x (B-Binf) dx ]
};

QRecord q_integrals(const FieldProvider& field, const AnalyticPotentials& pot,
                    const Nonlinearity& nl, const Trajectory& traj, double t0, double t1,
                    const Neighborhood& nb, int time_steps, const PhysicalConstants& k);

// Differences between quantities computed with the true potentials and with
// the corpuscle's effective potentials (primed quantities); rho' == 0.
struct PrimedRecord {
    double Pprime_sup = 0.0;   // sup_t |int P' dx|
    Vec3 Pprime_final;         // int P' dx at t1
    Vec3 fprime_int;           // int dt int f' dx
    double Pprime_flux = 0.0;  // |int dt oint P'(v.n) dsigma|
    double Tprime_flux = 0.0;  // |int dt oint n_i T^{ij}' dsigma|
    double Q0prime = 0.0;      // |dP' - P'flux + T'flux - f'int| combined
    double Q2prime = 0.0;      // sup_t |oint (x-r)(n.J') dsigma - int J' dx|
    double Q3prime = 0.0;      // |int dt oint n.J' dsigma|
};

PrimedRecord primed_diagnostics(const WaveCorpuscle& wc, const Nonlinearity& nl, double t0,
                                double t1, const Neighborhood& nb, int time_steps);

struct ConcentrationSchedule {
    int n_min = 1;
    int n_max = 6;
    double a0 = 0.02;
    double a_exp = 5.0;
    double R0 = 0.5;
    double R_exp = 1.0;

    double a(int n) const;
    double R(int n) const;
    // requires a0, R0 > 0, R_exp > 0 and a_exp > 4 R_exp so that a R^{-4} -> 0
    void validate() const;
};

struct SlopeFit {
    double slope = 0.0;
    double r2 = 0.0;
    int points = 0;
    bool valid = false;
};

// Least-squares slope of log|y| vs log x over entries with positive finite y.
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct ConcentrationRecord {
    int n = 0;
    double a = 0.0, R = 0.0, theta = 0.0;
    double rho_bar = 0.0;     // at t0
    double rho_drift = 0.0;   // max |rho_bar(t) - rho_bar(t0)|
    double center_err = 0.0;  // sup_t |centroid - r(t)|
    double quad_gap = 0.0;    // quadrature refinement gap for rho_bar
    QRecord q;
    PrimedRecord p;
};

struct ConcentrationReport {
    std::vector<ConcentrationRecord> records;
    std::map<std::string, SlopeFit> slopes;  // diagnostics vs n; "Pprime_vs_R" vs R
    double sup_speed = 0.0;
    double sup_accel = 0.0;
};

struct StudyOptions {
    double step = 1e-3;     // trajectory step
    int time_steps = 24;    // Simpson intervals per diagnostic window
    int threads = 1;
    int n_polar = 24;
    int n_azimuth = 48;
    int radial_nodes = 12;
};

ConcentrationReport concentration_study(const AnalyticPotentials& pot, const RadialProfile& profile,
                                        const Nonlinearity& nl_base, const Vec3& r0, const Vec3& v0,
                                        double t0, double t1, const ConcentrationSchedule& sched,
                                        const PolyScalarField& P3, const PhysicalConstants& k,
                                        const StudyOptions& opt = {});

}  // namespace corpuscle
