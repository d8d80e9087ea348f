#include "corpuscle/splitting.hpp"

#include <cmath>

#include "corpuscle/quadrature.hpp"

namespace corpuscle {

SplitResult split_polynomial_field(const PolyVectorField& V) {
    const int deg = V.spatial_degree();
    if (deg > 3)
        throw std::invalid_argument("split_polynomial_field: spatial degree exceeds 3");
    SplitResult out;
    out.potential = PolyScalarField(V.origin());
    out.tangent = PolyVectorField(V.origin());
    for (int j = 0; j <= std::max(deg, 0); ++j) {
        PolyVectorField Vj = V.homogeneous_part(j);
        if (Vj.empty()) continue;
        PolyScalarField Pi_j = Vj.dot_position().scaled(1.0 / (j + 1));
        out.potential = out.potential + Pi_j;
        out.tangent = out.tangent + (Vj - Pi_j.gradient());
    }
    return out;
}

PointSplit split_field_at_point(const std::function<Vec3(const Vec3&)>& V, const Vec3& y,
                                int quad_nodes, double fd_step) {
    const QuadRule1D& gl = gauss_legendre(quad_nodes);
    auto Pi = [&](const Vec3& p) {
        // int_0^1 p . V(s p) ds on [0,1] via GL
        double acc = 0.0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double s = 0.5 * (gl.nodes[i] + 1.0);
            acc += 0.5 * gl.weights[i] * dot(p, V(s * p));
        }
        return acc;
    };
    PointSplit out;
    out.potential = Pi(y);
    const double h = fd_step > 0.0 ? fd_step : 0.05 * std::max(1.0, norm(y));
    for (int ax = 0; ax < 3; ++ax) {
        Vec3 e{};
        e[ax] = 1.0;
        const double f1 = Pi(y + h * e), fm1 = Pi(y - h * e);
        const double f2 = Pi(y + 2.0 * h * e), fm2 = Pi(y - 2.0 * h * e);
        out.grad_potential[ax] = (-f2 + 8.0 * f1 - 8.0 * fm1 + fm2) / (12.0 * h);
    }
    out.tangent = V(y) - out.grad_potential;
    return out;
}

}  // namespace corpuscle
