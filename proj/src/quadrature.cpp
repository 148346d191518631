#include "hcife/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace hcife {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration from the Chebyshev estimate.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

QuadratureRule triangle_rule(int degree, const std::array<Vec2, 3>& tri) {
    if (degree < 1 || degree > 12) throw std::invalid_argument("triangle_rule: unsupported degree");
    // Duffy-collapsed tensor rule: exact for the requested total degree.
    const int nu = (degree + 3) / 2;  // integrand degree+1 in u after the Jacobian
    const int nv = (degree + 2) / 2;
    std::vector<double> xu, wu, xv, wv;
    gauss_legendre(nu, xu, wu);
    gauss_legendre(nv, xv, wv);

    const Vec2 e1 = tri[1] - tri[0], e2 = tri[2] - tri[0];
    const double detj = e1.x() * e2.y() - e1.y() * e2.x();  // = 2 * signed area

    QuadratureRule rule;
    rule.degree = degree;
    rule.points.reserve(nu * nv);
    rule.weights.reserve(nu * nv);
    for (int i = 0; i < nu; ++i) {
        const double u = 0.5 * (xu[i] + 1.0);
        for (int j = 0; j < nv; ++j) {
            const double v = 0.5 * (xv[j] + 1.0) * (1.0 - u);
            rule.points.push_back(tri[0] + u * e1 + v * e2);
            rule.weights.push_back(0.25 * wu[i] * wv[j] * (1.0 - u) * detj);
        }
    }
    return rule;
}

QuadratureRule polygon_rule(int degree, std::span<const Vec2> poly) {
    QuadratureRule rule;
    rule.degree = degree;
    if (poly.size() < 3) return rule;

    double area = 0.0, scale2 = 0.0;
    for (size_t i = 0; i < poly.size(); ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % poly.size()];
        area += 0.5 * (a.x() * b.y() - a.y() * b.x());
        scale2 = std::max(scale2, (b - a).squaredNorm());
    }
    if (std::abs(area) < 1e-14 * std::max(scale2, 1e-30)) return rule;  // EmptyRule

    for (size_t i = 1; i + 1 < poly.size(); ++i)
        rule.append(triangle_rule(degree, {poly[0], poly[i], poly[i + 1]}));
    return rule;
}

QuadratureRule segment_rule(int degree, const Vec2& p0, const Vec2& p1) {
    const int n = degree / 2 + 1;
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    QuadratureRule rule;
    rule.degree = degree;
    const double len = (p1 - p0).norm();
    for (int i = 0; i < n; ++i) {
        const double s = 0.5 * (x[i] + 1.0);
        rule.points.push_back(p0 + s * (p1 - p0));
        rule.weights.push_back(0.5 * w[i] * len);
    }
    return rule;
}

}  // namespace hcife
