#pragma once

#include <vector>

#include "corpuscle/potentials.hpp"

namespace corpuscle {

// q E + (q/c) v x B evaluated from the potentials.
Vec3 lorentz_force(const AnalyticPotentials& pot, double t, const Vec3& r, const Vec3& v,
                   const PhysicalConstants& k);

struct TrajectoryState {
    Vec3 r, v;
    double s_p = 0.0;  // accumulated phase integral
};

// Fixed-step RK4 solution of the point dynamics
//   dr/dt = v,  m dv/dt = Lorentz force,
//   ds_p/dt = ( m v^2 / 2 + (q/c) v.A(t,r) - q phi(t,r) ) / chi,
// with cubic Hermite dense output between stored nodes.
class Trajectory {
  public:
    Trajectory(std::vector<double> t, std::vector<TrajectoryState> s,
               std::vector<TrajectoryState> sdot);

    double t0() const { return t_.front(); }
    double t1() const { return t_.back(); }
    std::size_t size() const { return t_.size(); }
    const std::vector<double>& times() const { return t_; }
    const TrajectoryState& node(std::size_t i) const { return s_[i]; }
    const TrajectoryState& node_derivative(std::size_t i) const { return sdot_[i]; }

    TrajectoryState state(double t) const;
    Vec3 r(double t) const { return state(t).r; }
    Vec3 v(double t) const { return state(t).v; }
    double s_p(double t) const { return state(t).s_p; }

    double sup_speed() const;
    double sup_accel() const;

  private:
    std::vector<double> t_;
    std::vector<TrajectoryState> s_;
    std::vector<TrajectoryState> sdot_;
};

Trajectory integrate_newton(const AnalyticPotentials& pot, const Vec3& r0, const Vec3& v0,
                            double t0, double t1, double step, const PhysicalConstants& k);

}  // namespace corpuscle
