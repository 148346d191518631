#include "hcife/nedelec.hpp"

#include "hcife/quadrature.hpp"

namespace hcife {

std::array<NDPolynomial, 3> reference_basis() {
    // (-y, x), (-y, x-1), (1-y, x) in the a + b*(y,-x) storage.
    return {NDPolynomial{{0.0, 0.0}, -1.0}, NDPolynomial{{0.0, -1.0}, -1.0},
            NDPolynomial{{1.0, 0.0}, -1.0}};
}

NDPolynomial piola_push(const NDPolynomial& vhat, const Vec2& p0, const Mat2& B) {
    const double det = B.determinant();
    const Mat2 Binvt = B.inverse().transpose();
    const double b = vhat.b / det;
    // B^{-t} R B^{-1} = R / det(B) with R = [0,1;-1,0], so the rotational part
    // keeps its form and only the affine part picks up the base point shift.
    return {Binvt * vhat.a - b * Vec2(p0.y(), -p0.x()), b};
}

double edge_dof(const NDPolynomial& v, const Vec2& p0, const Vec2& p1) {
    return v(0.5 * (p0 + p1)).dot(p1 - p0);
}

void barycentric_coordinates(const std::array<Vec2, 3>& tri, std::array<double, 3>& c,
                             std::array<Vec2, 3>& g) {
    const double det2 = (tri[1] - tri[0]).x() * (tri[2] - tri[0]).y() -
                        (tri[1] - tri[0]).y() * (tri[2] - tri[0]).x();
    for (int i = 0; i < 3; ++i) {
        const Vec2& p = tri[(i + 1) % 3];
        const Vec2& q = tri[(i + 2) % 3];
        // lambda_i = cross(q - p, x - p) / cross(q - p, v_i - p)
        g[i] = Vec2(p.y() - q.y(), q.x() - p.x()) / det2;
        c[i] = (p.x() * q.y() - p.y() * q.x()) / det2;
    }
}

std::array<NDPolynomial, 3> whitney_basis(const std::array<Vec2, 3>& tri) {
    std::array<double, 3> c;
    std::array<Vec2, 3> g;
    barycentric_coordinates(tri, c, g);

    std::array<NDPolynomial, 3> basis;
    for (int i = 0; i < 3; ++i) {
        int ia = (i + 1) % 3, ib = (i + 2) % 3;
        // lambda_a grad lambda_b - lambda_b grad lambda_a
        basis[i].a = c[ia] * g[ib] - c[ib] * g[ia];
        basis[i].b = -(g[ia].x() * g[ib].y() - g[ia].y() * g[ib].x());
    }
    return basis;
}

NDPolynomial interpolate(const std::function<Vec2(const Vec2&)>& field,
                         const std::array<Vec2, 3>& tri, int quad_degree) {
    auto basis = whitney_basis(tri);
    NDPolynomial out;
    for (int i = 0; i < 3; ++i) {
        const Vec2& p0 = tri[(i + 1) % 3];
        const Vec2& p1 = tri[(i + 2) % 3];
        Vec2 t = (p1 - p0).normalized();
        double dof = segment_rule(quad_degree, p0, p1).integrate([&](const Vec2& p) {
            return field(p).dot(t);
        });
        out = out + dof * basis[i];
    }
    return out;
}

}  // namespace hcife
