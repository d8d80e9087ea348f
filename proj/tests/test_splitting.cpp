#include <cmath>

#include "corpuscle/rng.hpp"
#include "corpuscle/splitting.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace corpuscle;
using corpuscle::testing::monomial;

namespace {

PolyVectorField random_poly_field(std::uint64_t seed, int max_deg) {
    SeededRng rng(seed);
    PolyVectorField V(Vec3{});
    for (int comp = 0; comp < 3; ++comp)
        for (int i = 0; i <= max_deg; ++i)
            for (int j = 0; i + j <= max_deg; ++j)
                for (int l = 0; i + j + l <= max_deg; ++l)
                    V[comp].add_term({i, j, l}, TimePoly(rng.uniform(-1.0, 1.0)));
    return V;
}

}  // namespace

TEST_CASE("splitter is coefficient-exact on monomial basis fields") {
    for (int comp = 0; comp < 3; ++comp)
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; i + j <= 3; ++j)
                for (int l = 0; i + j + l <= 3; ++l) {
                    PolyVectorField V(Vec3{});
                    V[comp] = monomial(Vec3{}, {i, j, l}, 1.0);
                    SplitResult s = split_polynomial_field(V);
                    PolyVectorField rec = s.potential.gradient() + s.tangent;
                    PolyVectorField diff = rec - V;
                    for (int c = 0; c < 3; ++c)
                        for (const auto& [deg, coeff] : diff[c].terms())
                            CHECK(coeff.is_zero());
                }
}

TEST_CASE("tangent part is orthogonal to the position vector") {
    PolyVectorField V = random_poly_field(31, 3);
    SplitResult s = split_polynomial_field(V);
    // polynomial identity: x . tangent has all-zero coefficients
    PolyScalarField xd = s.tangent.dot_position();
    for (const auto& [deg, coeff] : xd.terms())
        for (double c : coeff.coeffs()) CHECK(std::abs(c) < 1e-12);
    SeededRng rng(5);
    for (int i = 0; i < 100; ++i) {
        const Vec3 y{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        CHECK(std::abs(dot(y, s.tangent.eval(0.7, y))) <= 1e-12);
    }
}

TEST_CASE("splitting a tangent field again gives zero potential") {
    SplitResult s = split_polynomial_field(random_poly_field(47, 3));
    SplitResult s2 = split_polynomial_field(s.tangent);
    for (const auto& [deg, coeff] : s2.potential.terms())
        for (double c : coeff.coeffs()) CHECK(std::abs(c) < 1e-12);
}

TEST_CASE("antisymmetric linear part is divergence-free") {
    PolyVectorField V(Vec3{});
    V[0] = monomial(Vec3{}, {0, 1, 0}, 2.0) + monomial(Vec3{}, {0, 0, 1}, -1.0);
    V[1] = monomial(Vec3{}, {1, 0, 0}, -2.0);
    V[2] = monomial(Vec3{}, {1, 0, 0}, 1.0);
    CHECK(V.divergence().empty());
    SplitResult s = split_polynomial_field(V);
    CHECK(s.potential.empty());  // pure rotation: no gradient part
}

TEST_CASE("numeric ray-integral splitter agrees with the polynomial one") {
    PolyVectorField V = random_poly_field(59, 3);
    SplitResult s = split_polynomial_field(V);
    auto fn = [&](const Vec3& y) { return V.eval(0.0, y); };
    SeededRng rng(9);
    for (int i = 0; i < 100; ++i) {
        const Vec3 y{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
        PointSplit ps = split_field_at_point(fn, y);
        CHECK(ps.potential == doctest::Approx(s.potential.eval(0.0, y)).epsilon(1e-9));
        CHECK(norm(ps.tangent - s.tangent.eval(0.0, y)) <= 1e-9);
        CHECK(norm(ps.grad_potential - s.potential.gradient().eval(0.0, y)) <= 1e-9);
    }
}

TEST_CASE("degree above three is rejected") {
    PolyVectorField V(Vec3{});
    V[0] = monomial(Vec3{}, {4, 0, 0}, 1.0);
    CHECK_THROWS_AS((void)split_polynomial_field(V), std::invalid_argument);
}
