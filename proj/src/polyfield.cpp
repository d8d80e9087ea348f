#include "corpuscle/polyfield.hpp"

#include <cmath>

namespace corpuscle {

double TimePoly::eval(double t) const {
    double v = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
    return v;
}

TimePoly TimePoly::derivative() const {
    std::vector<double> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(static_cast<double>(k) * c_[k]);
    return TimePoly(std::move(d));
}

TimePoly& TimePoly::operator+=(const TimePoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

TimePoly TimePoly::operator*(const TimePoly& o) const {
    if (c_.empty() || o.c_.empty()) return {};
    std::vector<double> p(c_.size() + o.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t k = 0; k < o.c_.size(); ++k) p[i + k] += c_[i] * o.c_[k];
    return TimePoly(std::move(p));
}

TimePoly TimePoly::operator*(double s) const {
    std::vector<double> p(c_);
    for (double& v : p) v *= s;
    return TimePoly(std::move(p));
}

void TimePoly::trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

void PolyScalarField::add_term(const MultiIndex& deg, const TimePoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(deg, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

double PolyScalarField::eval(double t, const Vec3& x) const {
    const Vec3 y = x - origin_;
    double v = 0.0;
    for (const auto& [deg, c] : terms_) {
        double mono = 1.0;
        for (int k = 0; k < deg[0]; ++k) mono *= y.x;
        for (int k = 0; k < deg[1]; ++k) mono *= y.y;
        for (int k = 0; k < deg[2]; ++k) mono *= y.z;
        v += c.eval(t) * mono;
    }
    return v;
}

int PolyScalarField::spatial_degree() const {
    int d = -1;
    for (const auto& [deg, c] : terms_) d = std::max(d, total_degree(deg));
    return d;
}

int PolyScalarField::time_degree() const {
    int d = -1;
    for (const auto& [deg, c] : terms_) d = std::max(d, c.degree());
    return d;
}

PolyScalarField PolyScalarField::dt() const {
    PolyScalarField r(origin_);
    for (const auto& [deg, c] : terms_) r.add_term(deg, c.derivative());
    return r;
}

PolyScalarField PolyScalarField::diff(int axis) const {
    PolyScalarField r(origin_);
    for (const auto& [deg, c] : terms_) {
        if (deg[axis] == 0) continue;
        MultiIndex d = deg;
        d[axis] -= 1;
        r.add_term(d, c * static_cast<double>(deg[axis]));
    }
    return r;
}

PolyVectorField PolyScalarField::gradient() const {
    return PolyVectorField(diff(0), diff(1), diff(2));
}

double PolyScalarField::laplacian(double t, const Vec3& x) const {
    double v = 0.0;
    for (int i = 0; i < 3; ++i) v += diff(i).diff(i).eval(t, x);
    return v;
}

namespace {
double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}
}  // namespace

PolyScalarField PolyScalarField::recentered(const Vec3& new_origin) const {
    const Vec3 s = new_origin - origin_;  // (x - old) = (x - new) + s
    PolyScalarField r(new_origin);
    for (const auto& [deg, c] : terms_) {
        // powers of shift per axis
        std::array<std::vector<double>, 3> sp;
        const double sv[3] = {s.x, s.y, s.z};
        for (int ax = 0; ax < 3; ++ax) {
            sp[ax].resize(deg[ax] + 1);
            sp[ax][0] = 1.0;
            for (int k = 1; k <= deg[ax]; ++k) sp[ax][k] = sp[ax][k - 1] * sv[ax];
        }
        for (int i = 0; i <= deg[0]; ++i)
            for (int j = 0; j <= deg[1]; ++j)
                for (int k = 0; k <= deg[2]; ++k) {
                    const double w = binom(deg[0], i) * sp[0][deg[0] - i] *
                                     binom(deg[1], j) * sp[1][deg[1] - j] *
                                     binom(deg[2], k) * sp[2][deg[2] - k];
                    if (w != 0.0) r.add_term({i, j, k}, c * w);
                }
    }
    return r;
}

PolyScalarField PolyScalarField::homogeneous_part(int j) const {
    PolyScalarField r(origin_);
    for (const auto& [deg, c] : terms_)
        if (total_degree(deg) == j) r.add_term(deg, c);
    return r;
}

PolyScalarField PolyScalarField::operator+(const PolyScalarField& o) const {
    if (empty()) return o;
    if (o.empty()) return *this;
    if (norm2(origin_ - o.origin()) != 0.0)
        throw std::invalid_argument("PolyScalarField: origin mismatch");
    PolyScalarField r = *this;
    for (const auto& [deg, c] : o.terms_) r.add_term(deg, c);
    return r;
}

PolyScalarField PolyScalarField::operator-(const PolyScalarField& o) const {
    return *this + o.scaled(-1.0);
}

PolyScalarField PolyScalarField::operator*(const PolyScalarField& o) const {
    if (empty() || o.empty()) return PolyScalarField(origin_);
    const Vec3 d = origin_ - o.origin();
    if (norm2(d) != 0.0) throw std::invalid_argument("PolyScalarField: origin mismatch");
    PolyScalarField r(origin_);
    for (const auto& [da, ca] : terms_)
        for (const auto& [db, cb] : o.terms_)
            r.add_term({da[0] + db[0], da[1] + db[1], da[2] + db[2]}, ca * cb);
    return r;
}

PolyScalarField PolyScalarField::scaled(double s) const {
    PolyScalarField r(origin_);
    if (s == 0.0) return r;
    for (const auto& [deg, c] : terms_) r.add_term(deg, c * s);
    return r;
}

nlohmann::json PolyScalarField::to_json() const {
    nlohmann::json j;
    j["origin"] = {origin_.x, origin_.y, origin_.z};
    j["terms"] = nlohmann::json::array();
    for (const auto& [deg, c] : terms_) {
        nlohmann::json term;
        term["deg"] = {deg[0], deg[1], deg[2]};
        term["t_coeffs"] = c.coeffs();
        j["terms"].push_back(term);
    }
    return j;
}

PolyScalarField PolyScalarField::from_json(const nlohmann::json& j, int max_spatial_degree,
                                           int max_time_coeffs) {
    Vec3 origin{};
    if (j.contains("origin")) {
        const auto& o = j.at("origin");
        if (!o.is_array() || o.size() != 3) throw std::invalid_argument("polyfield: origin must be a 3-array");
        origin = {o[0].get<double>(), o[1].get<double>(), o[2].get<double>()};
    }
    PolyScalarField f(origin);
    if (!j.contains("terms")) return f;
    for (const auto& term : j.at("terms")) {
        const auto& d = term.at("deg");
        if (!d.is_array() || d.size() != 3) throw std::invalid_argument("polyfield: deg must be a 3-array");
        MultiIndex deg = {d[0].get<int>(), d[1].get<int>(), d[2].get<int>()};
        if (deg[0] < 0 || deg[1] < 0 || deg[2] < 0)
            throw std::invalid_argument("polyfield: negative degree");
        if (total_degree(deg) > max_spatial_degree)
            throw std::invalid_argument("polyfield: spatial degree exceeds " +
                                        std::to_string(max_spatial_degree));
        auto coeffs = term.at("t_coeffs").get<std::vector<double>>();
        if (static_cast<int>(coeffs.size()) > max_time_coeffs)
            throw std::invalid_argument("polyfield: too many time coefficients");
        f.add_term(deg, TimePoly(std::move(coeffs)));
    }
    return f;
}

PolyVectorField::PolyVectorField(PolyScalarField c0, PolyScalarField c1, PolyScalarField c2)
    : c_{std::move(c0), std::move(c1), std::move(c2)} {
    for (int i = 1; i < 3; ++i) {
        if (c_[i].empty() || c_[0].empty()) continue;
        if (norm2(c_[i].origin() - c_[0].origin()) != 0.0)
            throw std::invalid_argument("PolyVectorField: component origin mismatch");
    }
}

Vec3 PolyVectorField::eval(double t, const Vec3& x) const {
    return {c_[0].eval(t, x), c_[1].eval(t, x), c_[2].eval(t, x)};
}

int PolyVectorField::spatial_degree() const {
    return std::max({c_[0].spatial_degree(), c_[1].spatial_degree(), c_[2].spatial_degree()});
}

PolyVectorField PolyVectorField::dt() const {
    return PolyVectorField(c_[0].dt(), c_[1].dt(), c_[2].dt());
}

PolyScalarField PolyVectorField::divergence() const {
    return c_[0].diff(0) + c_[1].diff(1) + c_[2].diff(2);
}

PolyVectorField PolyVectorField::curl() const {
    return PolyVectorField(c_[2].diff(1) - c_[1].diff(2),
                           c_[0].diff(2) - c_[2].diff(0),
                           c_[1].diff(0) - c_[0].diff(1));
}

Mat3 PolyVectorField::jacobian(double t, const Vec3& x) const {
    Mat3 m;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) m[j][i] = c_[j].diff(i).eval(t, x);
    return m;
}

PolyVectorField PolyVectorField::directional(const Vec3& v) const {
    PolyVectorField r(origin());
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) r[j] = r[j] + c_[j].diff(i).scaled(v[i]);
    return r;
}

PolyVectorField PolyVectorField::recentered(const Vec3& new_origin) const {
    return PolyVectorField(c_[0].recentered(new_origin), c_[1].recentered(new_origin),
                           c_[2].recentered(new_origin));
}

PolyVectorField PolyVectorField::homogeneous_part(int j) const {
    return PolyVectorField(c_[0].homogeneous_part(j), c_[1].homogeneous_part(j),
                           c_[2].homogeneous_part(j));
}

PolyVectorField PolyVectorField::operator+(const PolyVectorField& o) const {
    return PolyVectorField(c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2]);
}

PolyVectorField PolyVectorField::operator-(const PolyVectorField& o) const {
    return PolyVectorField(c_[0] - o.c_[0], c_[1] - o.c_[1], c_[2] - o.c_[2]);
}

PolyVectorField PolyVectorField::scaled(double s) const {
    return PolyVectorField(c_[0].scaled(s), c_[1].scaled(s), c_[2].scaled(s));
}

PolyScalarField PolyVectorField::dot_position() const {
    PolyScalarField r(origin());
    for (int i = 0; i < 3; ++i) {
        PolyScalarField xi(origin());
        MultiIndex d{};
        d[i] = 1;
        xi.add_term(d, TimePoly(1.0));
        r = r + xi * c_[i];
    }
    return r;
}

nlohmann::json PolyVectorField::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (int i = 0; i < 3; ++i) j.push_back(c_[i].to_json());
    return j;
}

PolyVectorField PolyVectorField::from_json(const nlohmann::json& j, int max_spatial_degree,
                                           int max_time_coeffs) {
    if (!j.is_array() || j.size() != 3)
        throw std::invalid_argument("vector field: expected array of 3 scalar fields");
    return PolyVectorField(PolyScalarField::from_json(j[0], max_spatial_degree, max_time_coeffs),
                           PolyScalarField::from_json(j[1], max_spatial_degree, max_time_coeffs),
                           PolyScalarField::from_json(j[2], max_spatial_degree, max_time_coeffs));
}

}  // namespace corpuscle
