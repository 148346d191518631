#pragma once

#include <array>
#include <span>
#include <vector>

#include "hcife/mesh.hpp"

namespace hcife {

/// Points and weights in physical coordinates. Weights sum to the measure of
/// the integration domain; rules of declared degree integrate all monomials
/// up to that degree exactly. Weights may be signed for composite
/// curved-region rules.
struct QuadratureRule {
    std::vector<Vec2> points;
    std::vector<double> weights;
    int degree = 0;

    double total_weight() const {
        double s = 0.0;
        for (double w : weights) s += w;
        return s;
    }

    void append(const QuadratureRule& other) {
        points.insert(points.end(), other.points.begin(), other.points.end());
        weights.insert(weights.end(), other.weights.begin(), other.weights.end());
    }

    template <class F>
    auto integrate(F&& f) const {
        auto acc = decltype(f(Vec2{}) * 0.0){};
        for (size_t i = 0; i < points.size(); ++i) acc += weights[i] * f(points[i]);
        return acc;
    }
};

/// Gauss-Legendre nodes/weights on [-1,1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Rule of the requested polynomial exactness on a (possibly degenerate-order,
/// i.e. clockwise) triangle; clockwise input yields negative weights.
QuadratureRule triangle_rule(int degree, const std::array<Vec2, 3>& tri);

/// Fan triangulation of a convex CCW polygon (<= 4 vertices in practice).
/// Polygons with area below ~1e-14 * scale^2 yield an empty rule.
QuadratureRule polygon_rule(int degree, std::span<const Vec2> poly);

/// Gauss-Legendre rule mapped to the segment [p0, p1].
QuadratureRule segment_rule(int degree, const Vec2& p0, const Vec2& p1);

}  // namespace hcife
