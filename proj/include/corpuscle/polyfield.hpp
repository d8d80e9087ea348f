#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "corpuscle/vec3.hpp"

namespace corpuscle {

// Polynomial in t, stored as coefficients of increasing powers.
class TimePoly {
  public:
    TimePoly() = default;
    explicit TimePoly(double c0) : c_{c0} { trim(); }
    explicit TimePoly(std::vector<double> c) : c_(std::move(c)) { trim(); }

    double eval(double t) const;
    TimePoly derivative() const;
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero poly
    bool is_zero() const { return c_.empty(); }
    const std::vector<double>& coeffs() const { return c_; }

    TimePoly& operator+=(const TimePoly& o);
    TimePoly operator*(const TimePoly& o) const;
    TimePoly operator*(double s) const;

  private:
    void trim();
    std::vector<double> c_;
};

using MultiIndex = std::array<int, 3>;

inline int total_degree(const MultiIndex& d) { return d[0] + d[1] + d[2]; }

class PolyVectorField;

// Polynomial scalar field: sum over terms of c(t) * prod_k (x_k - origin_k)^deg_k.
class PolyScalarField {
  public:
    PolyScalarField() = default;
    explicit PolyScalarField(const Vec3& origin) : origin_(origin) {}

    void add_term(const MultiIndex& deg, const TimePoly& c);
    double eval(double t, const Vec3& x) const;
    const Vec3& origin() const { return origin_; }
    bool empty() const { return terms_.empty(); }
    int spatial_degree() const;  // -1 if empty
    int time_degree() const;     // max over terms, -1 if empty

    PolyScalarField dt() const;        // coefficient-wise d/dt
    PolyScalarField diff(int axis) const;
    PolyVectorField gradient() const;
    double laplacian(double t, const Vec3& x) const;

    // Exact re-expansion around a new origin.
    PolyScalarField recentered(const Vec3& new_origin) const;
    // Terms of given total spatial degree only.
    PolyScalarField homogeneous_part(int j) const;

    PolyScalarField operator+(const PolyScalarField& o) const;  // origins must match
    PolyScalarField operator-(const PolyScalarField& o) const;
    PolyScalarField operator*(const PolyScalarField& o) const;  // origins must match
    PolyScalarField scaled(double s) const;

    const std::map<MultiIndex, TimePoly>& terms() const { return terms_; }

    nlohmann::json to_json() const;
    // max_spatial_degree/max_time_coeffs enforce the serialization contract.
    static PolyScalarField from_json(const nlohmann::json& j, int max_spatial_degree = 3,
                                     int max_time_coeffs = 4);

  private:
    Vec3 origin_;
    std::map<MultiIndex, TimePoly> terms_;
};

class PolyVectorField {
  public:
    PolyVectorField() = default;
    explicit PolyVectorField(const Vec3& origin)
        : c_{PolyScalarField(origin), PolyScalarField(origin), PolyScalarField(origin)} {}
    PolyVectorField(PolyScalarField c0, PolyScalarField c1, PolyScalarField c2);

    PolyScalarField& operator[](int i) { return c_[i]; }
    const PolyScalarField& operator[](int i) const { return c_[i]; }

    Vec3 eval(double t, const Vec3& x) const;
    const Vec3& origin() const { return c_[0].origin(); }
    int spatial_degree() const;
    bool empty() const { return c_[0].empty() && c_[1].empty() && c_[2].empty(); }

    PolyVectorField dt() const;
    PolyScalarField divergence() const;
    PolyVectorField curl() const;
    // jac[j][i] = d(component j)/d(x_i) at (t, x)
    Mat3 jacobian(double t, const Vec3& x) const;
    // Directional derivative (v . grad) applied to each component.
    PolyVectorField directional(const Vec3& v) const;

    PolyVectorField recentered(const Vec3& new_origin) const;
    PolyVectorField homogeneous_part(int j) const;

    PolyVectorField operator+(const PolyVectorField& o) const;
    PolyVectorField operator-(const PolyVectorField& o) const;
    PolyVectorField scaled(double s) const;

    // x . V as a scalar field (x relative to origin).
    PolyScalarField dot_position() const;

    nlohmann::json to_json() const;
    static PolyVectorField from_json(const nlohmann::json& j, int max_spatial_degree = 3,
                                     int max_time_coeffs = 4);

  private:
    std::array<PolyScalarField, 3> c_;
};

}  // namespace corpuscle
