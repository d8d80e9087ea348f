#pragma once

#include "corpuscle/potentials.hpp"

namespace corpuscle::testing {

inline PolyScalarField monomial(const Vec3& origin, MultiIndex d, double c) {
    PolyScalarField f(origin);
    f.add_term(d, TimePoly(c));
    return f;
}

// uniform B = (0,0,1) in symmetric gauge plus uniform E = (0.1, 0, 0)
inline AnalyticPotentials uniform_b_linear_e() {
    AnalyticPotentials pot;
    pot.phi = monomial(Vec3{}, {1, 0, 0}, -0.1);
    pot.A = PolyVectorField(Vec3{});
    pot.A[0] = monomial(Vec3{}, {0, 1, 0}, -0.5);
    pot.A[1] = monomial(Vec3{}, {1, 0, 0}, 0.5);
    return pot;
}

inline PolyScalarField cubic_p3() {
    PolyScalarField p(Vec3{});
    p.add_term({3, 0, 0}, TimePoly(0.1));
    p.add_term({1, 1, 1}, TimePoly(0.2));
    return p;
}

}  // namespace corpuscle::testing
