#include "corpuscle/potentials.hpp"

#include <stdexcept>

#include "corpuscle/splitting.hpp"

namespace corpuscle {

void PhysicalConstants::validate() const {
    if (!(m > 0.0)) throw std::invalid_argument("constants: m must be positive");
    if (!(chi > 0.0)) throw std::invalid_argument("constants: chi must be positive");
    if (!(c > 0.0)) throw std::invalid_argument("constants: c must be positive");
    if (q == 0.0) throw std::invalid_argument("constants: q must be nonzero");
}

nlohmann::json AnalyticPotentials::to_json() const {
    nlohmann::json j;
    j["phi"] = phi.to_json();
    j["A"] = A.to_json();
    return j;
}

AnalyticPotentials AnalyticPotentials::from_json(const nlohmann::json& j) {
    AnalyticPotentials p;
    if (j.contains("phi")) p.phi = PolyScalarField::from_json(j.at("phi"));
    if (j.contains("A")) p.A = PolyVectorField::from_json(j.at("A"));
    return p;
}

EMFieldSample em_fields(const AnalyticPotentials& pot, double t, const Vec3& x,
                        const PhysicalConstants& k) {
    EMFieldSample s;
    const Vec3 grad_phi{pot.phi.diff(0).eval(t, x), pot.phi.diff(1).eval(t, x),
                        pot.phi.diff(2).eval(t, x)};
    s.E = -grad_phi - (1.0 / k.c) * pot.A.dt().eval(t, x);
    s.B = pot.A.curl().eval(t, x);
    return s;
}

AnalyticPotentials linearize_potentials(const AnalyticPotentials& pot, const Vec3& center) {
    AnalyticPotentials lin;
    PolyScalarField phir = pot.phi.recentered(center);
    lin.phi = phir.homogeneous_part(0) + phir.homogeneous_part(1);
    if (lin.phi.empty()) lin.phi = PolyScalarField(center);
    PolyVectorField Ar = pot.A.recentered(center);
    lin.A = PolyVectorField(center);
    for (int i = 0; i < 3; ++i) {
        lin.A[i] = Ar[i].homogeneous_part(0) + Ar[i].homogeneous_part(1);
        if (lin.A[i].empty()) lin.A[i] = PolyScalarField(center);
    }
    return lin;
}

LocalFrame local_frame(const AnalyticPotentials& pot, double t, const Vec3& r, const Vec3& v) {
    LocalFrame f;
    f.r = r;
    f.v = v;
    f.A0 = pot.A.eval(t, r);
    f.A0_dot = pot.A.dt().eval(t, r) + pot.A.jacobian(t, r).apply(v);
    f.M = pot.A.jacobian(t, r);
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
            const PolyScalarField dij = pot.A[j].diff(i);
            f.M_dot[j][i] = dij.dt().eval(t, r) + dij.diff(0).scaled(v.x).eval(t, r) +
                            dij.diff(1).scaled(v.y).eval(t, r) + dij.diff(2).scaled(v.z).eval(t, r);
        }
    f.phi0 = pot.phi.eval(t, r);
    const PolyVectorField gphi = pot.phi.gradient();
    f.g = gphi.eval(t, r);
    f.phi0_dot = pot.phi.dt().eval(t, r) + dot(f.g, v);
    f.g_dot = gphi.dt().eval(t, r) + gphi.jacobian(t, r).apply(v);
    return f;
}

namespace {

// polynomial in t' with given value and slope at t
TimePoly lin_at(double t, double v0, double v1) {
    return TimePoly(std::vector<double>{v0 - v1 * t, v1});
}

// copy terms of src (a field in y, origin 0) into dst (origin r), evaluating
// each time coefficient at t; if slope_src is non-null, add the first-order
// t-correction from it.
void emplace_frozen(PolyScalarField& dst, const PolyScalarField& src,
                    const PolyScalarField* slope_src, double t, double scale) {
    for (const auto& [deg, c] : src.terms()) {
        double v1 = c.derivative().eval(t);
        dst.add_term(deg, lin_at(t, scale * c.eval(t), scale * v1));
    }
    if (slope_src)
        for (const auto& [deg, c] : slope_src->terms())
            dst.add_term(deg, lin_at(t, 0.0, scale * c.eval(t)));
}

void emplace_value_only(PolyScalarField& dst, const PolyScalarField& src, double t, double scale) {
    for (const auto& [deg, c] : src.terms()) dst.add_term(deg, TimePoly(scale * c.eval(t)));
}

}  // namespace

AnalyticPotentials build_auxiliary_potentials(const AnalyticPotentials& pot, const Vec3& r,
                                              const Vec3& v, double t,
                                              const PolyScalarField& P3,
                                              const PhysicalConstants& k) {
    k.validate();
    if (P3.spatial_degree() > 3)
        throw std::invalid_argument("build_auxiliary_potentials: P3 degree exceeds 3");
    if (!P3.empty() && norm2(P3.origin()) != 0.0)
        throw std::invalid_argument("build_auxiliary_potentials: P3 must be centered at 0");
    const LocalFrame f = local_frame(pot, t, r, v);

    AnalyticPotentials aux;
    aux.A = PolyVectorField(r);
    aux.phi = PolyScalarField(r);

    const Vec3 dtA_fixed = f.A0_dot - f.M.apply(v);  // fixed-x dA/dt at (t, r)
    PolyVectorField gradP3(Vec3{});
    PolyVectorField gradP3_conv(Vec3{});
    const bool has_p3 = !P3.empty();
    if (has_p3) {
        gradP3 = P3.gradient();
        gradP3_conv = gradP3.directional(v).scaled(-1.0);  // -(v.grad) grad P3
    }

    for (int j = 0; j < 3; ++j) {
        aux.A[j].add_term({0, 0, 0}, lin_at(t, f.A0[j], dtA_fixed[j]));
        for (int i = 0; i < 3; ++i) {
            MultiIndex d{};
            d[i] = 1;
            aux.A[j].add_term(d, lin_at(t, f.M[j][i], f.M_dot[j][i]));
        }
        if (has_p3) emplace_frozen(aux.A[j], gradP3[j], &gradP3_conv[j], t, 1.0);
    }

    // phi_aux: value-only snapshot (consumers never need its time derivative)
    aux.phi.add_term({0, 0, 0}, TimePoly(f.phi0));
    for (int i = 0; i < 3; ++i) {
        MultiIndex d{};
        d[i] = 1;
        aux.phi.add_term(d, TimePoly(f.g[i]));
    }
    // phi2 = -(q/(2mc^2)) |Abreve|^2 - (1/c) d_t(P2 + P3) + (1/c) v.grad P3
    const Mat3 Ma = f.M.antisym();
    Mat3 Q;  // Ma^T Ma
    for (int i = 0; i < 3; ++i)
        for (int j2 = 0; j2 < 3; ++j2) {
            double s = 0.0;
            for (int l = 0; l < 3; ++l) s += Ma[l][i] * Ma[l][j2];
            Q[i][j2] = s;
        }
    const double cA2 = -k.q / (2.0 * k.m * k.c * k.c);
    for (int i = 0; i < 3; ++i)
        for (int j2 = i; j2 < 3; ++j2) {
            MultiIndex d{};
            d[i] += 1;
            d[j2] += 1;
            const double qc = (i == j2) ? Q[i][i] : Q[i][j2] + Q[j2][i];
            const double pc = (i == j2) ? 0.5 * f.M_dot[i][i]
                                        : 0.5 * (f.M_dot[i][j2] + f.M_dot[j2][i]);
            aux.phi.add_term(d, TimePoly(cA2 * qc - pc / k.c));
        }
    if (has_p3) {
        emplace_value_only(aux.phi, P3.dt(), t, -1.0 / k.c);
        PolyScalarField vdotgrad(Vec3{});
        for (int i = 0; i < 3; ++i) vdotgrad = vdotgrad + gradP3[i].scaled(v[i]);
        emplace_value_only(aux.phi, vdotgrad, t, 1.0 / k.c);
    }
    return aux;
}

BalanceResidual balance_residual(const AnalyticPotentials& pot, double t, const Vec3& r,
                                 const Vec3& v, const Vec3& rddot, const Vec3& y,
                                 const PhysicalConstants& k) {
    k.validate();
    const Vec3 x = r + y;
    PolyVectorField Amov = pot.A.recentered(r);
    SplitResult sa = split_polynomial_field(Amov);
    // moving-frame time derivative of A, then its gradient part
    PolyVectorField W = (pot.A.dt() + pot.A.directional(v)).recentered(r);
    SplitResult sw = split_polynomial_field(W);

    const Mat3 JA = Amov.jacobian(t, x);
    const Vec3 grad_vA = JA.apply_transpose(v);
    const Vec3 abreve = sa.tangent.eval(t, x);
    const Mat3 Jab = sa.tangent.jacobian(t, x);
    const Vec3 grad_abreve2 = 2.0 * Jab.apply_transpose(abreve);
    const Vec3 grad_phi{pot.phi.diff(0).eval(t, x), pot.phi.diff(1).eval(t, x),
                        pot.phi.diff(2).eval(t, x)};
    const Vec3 dt_Agrad = sw.potential.gradient().eval(t, x);

    BalanceResidual out;
    out.force = k.m * rddot - (k.q / k.c) * grad_vA +
                (k.q * k.q / (2.0 * k.m * k.c * k.c)) * grad_abreve2 + k.q * grad_phi +
                (k.q / k.c) * dt_Agrad;
    out.div_tangent = sa.tangent.divergence().eval(t, x);
    return out;
}

}  // namespace corpuscle
