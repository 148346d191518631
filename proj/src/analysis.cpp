#include "hcife/analysis.hpp"

#include <cmath>

namespace hcife {

Vec2 ManufacturedSolution::u(const Vec2& p, int side) const {
    const double s = p.squaredNorm();
    const Vec2 yx(p.y(), p.x());
    if (side < 0) return -coeff.mu_minus * k1() * (r1 * r1 - s) * yx;
    return -coeff.mu_plus * k2 * (r2 * r2 - s) * (r1 * r1 - s) * yx;
}

double ManufacturedSolution::curl_u(const Vec2& p, int side) const {
    return coeff.mu(side) * curl_over_mu(p, side);
}

double ManufacturedSolution::curl_over_mu(const Vec2& p, int side) const {
    // curl(-mu k G(s) (y,x)) = -2 mu k G'(s) (x^2 - y^2)
    const double s = p.squaredNorm();
    const double xy2 = p.x() * p.x() - p.y() * p.y();
    if (side < 0) return 2.0 * k1() * xy2;  // G' = -1
    return -2.0 * k2 * (2.0 * s - r1 * r1 - r2 * r2) * xy2;
}

Vec2 ManufacturedSolution::f(const Vec2& p, int side) const {
    const double s = p.squaredNorm();
    const double x = p.x(), y = p.y();
    if (side < 0) {
        const double k = k1();
        return -k * (4.0 + coeff.beta_minus * coeff.mu_minus * (r1 * r1 - s)) * Vec2(y, x);
    }
    const double gp = 2.0 * s - r1 * r1 - r2 * r2;  // G'
    const double g = (r2 * r2 - s) * (r1 * r1 - s);
    const double xy2 = x * x - y * y;
    Vec2 curl_part(-4.0 * k2 * y * (2.0 * xy2 - gp), 4.0 * k2 * x * (2.0 * xy2 + gp));
    return curl_part - coeff.beta_plus * coeff.mu_plus * k2 * g * Vec2(y, x);
}

ErrorReport hcurl_error(const MeshTopology& mesh, const Classification& cls,
                        const std::vector<LocalEdgeBasis>& bases, const Eigen::VectorXd& dofs,
                        const ManufacturedSolution& exact, const ErrorRules& rules) {
    ErrorReport rep;
    rep.h = mesh.h;
    rep.dofs = mesh.num_edges();

    double l2 = 0.0, curl = 0.0, band_l2 = 0.0, band_curl = 0.0;

    for (int elem = 0; elem < mesh.num_elements(); ++elem) {
        if (cls.is_interface(elem)) {
            const auto& cut = cls.cut(elem);
            rep.band_area += mesh.element_area(elem);
            // Both fields are split by the element chord; the exact formulas
            // are polynomials, so selecting the chord side extends them
            // smoothly over the O(h^2) sliver between chord and interface.
            for (int side : {-1, 1}) {
                QuadratureRule rule = straight_subdomain_rule(rules.degree, cut, side);
                NDPolynomial uh = element_field(mesh, cls, bases, dofs, elem, side);
                for (size_t q = 0; q < rule.points.size(); ++q) {
                    const Vec2& p = rule.points[q];
                    const double w = rule.weights[q];
                    const double dl2 = (exact.u(p, side) - uh(p)).squaredNorm();
                    const double dc = exact.curl_u(p, side) - uh.curl();
                    l2 += w * dl2;
                    curl += w * dc * dc;
                    band_l2 += w * dl2;
                    band_curl += w * dc * dc;
                }
            }
        } else {
            const int side = cls.labels[elem] == ElementLabel::InteriorMinus ? -1 : 1;
            QuadratureRule rule = triangle_rule(rules.degree, mesh.element_vertices(elem));
            NDPolynomial uh = element_field(mesh, cls, bases, dofs, elem, side);
            for (size_t q = 0; q < rule.points.size(); ++q) {
                const Vec2& p = rule.points[q];
                const double w = rule.weights[q];
                const double dc = exact.curl_u(p, side) - uh.curl();
                l2 += w * (exact.u(p, side) - uh(p)).squaredNorm();
                curl += w * dc * dc;
            }
        }
    }

    rep.l2_part = std::sqrt(std::max(l2, 0.0));
    rep.curl_part = std::sqrt(std::max(curl, 0.0));
    rep.e0 = std::sqrt(std::max(l2 + curl, 0.0));
    if (rep.band_area > 0.0)
        rep.e1 = std::sqrt(std::max(band_l2 + band_curl, 0.0) / rep.band_area);
    return rep;
}

Eigen::VectorXd ife_interpolant(const MeshTopology& mesh, const Classification& cls,
                                const ManufacturedSolution& exact, int quad_degree) {
    Eigen::VectorXd dofs = Eigen::VectorXd::Zero(mesh.num_edges());
    for (int e = 0; e < mesh.num_edges(); ++e) {
        const Vec2& lo = mesh.nodes[mesh.edges[e][0]];
        const Vec2& hi = mesh.nodes[mesh.edges[e][1]];
        const Vec2 t = (hi - lo).normalized();
        std::vector<std::pair<Vec2, Vec2>> segments;
        if (cls.edge_is_cut[e]) {
            Vec2 mid = lo + cls.edge_cut_ratio[e] * (hi - lo);
            segments = {{lo, mid}, {mid, hi}};
        } else {
            segments = {{lo, hi}};
        }
        for (const auto& [a, b] : segments)
            dofs(e) += segment_rule(quad_degree, a, b).integrate([&](const Vec2& p) {
                return exact.u(p, exact.side(p)).dot(t);
            });
    }
    return dofs;
}

std::vector<double> convergence_rates(const std::vector<std::pair<double, double>>& errors) {
    std::vector<double> rates;
    for (size_t k = 0; k + 1 < errors.size(); ++k)
        rates.push_back(std::log(errors[k].second / errors[k + 1].second) /
                        std::log(errors[k].first / errors[k + 1].first));
    return rates;
}

}  // namespace hcife
