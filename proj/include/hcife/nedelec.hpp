#pragma once

#include <array>
#include <functional>

#include "hcife/mesh.hpp"

namespace hcife {

/// First-family lowest-order edge element shape function
///     v(x) = a + b * (x2, -x1)^t,
/// with constant curl v = -2b. The space is invariant under the covariant
/// Piola transform and its tangential trace is constant along any line.
struct NDPolynomial {
    Vec2 a = Vec2::Zero();
    double b = 0.0;

    Vec2 operator()(const Vec2& p) const { return a + b * Vec2(p.y(), -p.x()); }
    double curl() const { return -2.0 * b; }

    NDPolynomial operator+(const NDPolynomial& o) const { return {a + o.a, b + o.b}; }
    NDPolynomial operator-(const NDPolynomial& o) const { return {a - o.a, b - o.b}; }
    NDPolynomial operator*(double s) const { return {s * a, s * b}; }
};

inline NDPolynomial operator*(double s, const NDPolynomial& v) { return v * s; }

/// Shape functions on the reference triangle (0,0)-(1,0)-(0,1) dual to the
/// tangential edge integrals, edge i running from vertex (i+1)%3 to (i+2)%3.
std::array<NDPolynomial, 3> reference_basis();

/// Covariant Piola image v(x) = B^{-t} vhat(B^{-1}(x - p0)) of a reference
/// shape function under the affine map F(xhat) = p0 + B xhat. Tangential edge
/// integrals are preserved.
NDPolynomial piola_push(const NDPolynomial& vhat, const Vec2& p0, const Mat2& B);

/// Tangential integral of v along the segment p0 -> p1 (exact; the integrand
/// is linear).
double edge_dof(const NDPolynomial& v, const Vec2& p0, const Vec2& p1);

/// Whitney edge basis on a physical CCW triangle, dual to the tangential
/// integrals over local edges oriented counter-clockwise.
std::array<NDPolynomial, 3> whitney_basis(const std::array<Vec2, 3>& tri);

/// Edge interpolant of a smooth field: the shape function sharing its three
/// tangential edge integrals.
NDPolynomial interpolate(const std::function<Vec2(const Vec2&)>& field,
                         const std::array<Vec2, 3>& tri, int quad_degree = 8);

/// Barycentric coordinates of a CCW triangle as affine functions c + g.x.
void barycentric_coordinates(const std::array<Vec2, 3>& tri, std::array<double, 3>& c,
                             std::array<Vec2, 3>& g);

}  // namespace hcife
