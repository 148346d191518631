#pragma once

#include "hcife/assembly.hpp"

namespace hcife {

/// Closed-form exact solution on the square with a circular interface of
/// radius r1 centered at the origin:
///     u_pm = -mu_pm * k_pm * G_pm(s) * (y, x),  s = x^2 + y^2,
/// with G_minus = r1^2 - s (k = k1) and G_plus = (r2^2 - s)(r1^2 - s)
/// (k = k2). Both pieces vanish on the interface, so the tangential and
/// beta-weighted normal jumps are zero, and k1 = k2 (r2^2 - r1^2) makes
/// (1/mu) curl u continuous as well. f is the hand-differentiated source
/// curl (1/mu) curl u + beta u.
struct ManufacturedSolution {
    CoefficientPair coeff;
    double r1 = M_PI / 5.0, r2 = 1.0, k2 = 20.0;

    double k1() const { return k2 * (r2 * r2 - r1 * r1); }
    LevelSetInterface interface() const { return LevelSetInterface::circle({0.0, 0.0}, r1); }
    int side(const Vec2& p) const { return p.squaredNorm() < r1 * r1 ? -1 : 1; }

    Vec2 u(const Vec2& p, int side) const;
    double curl_u(const Vec2& p, int side) const;       // scalar curl
    double curl_over_mu(const Vec2& p, int side) const;  // (1/mu) curl u
    Vec2 f(const Vec2& p, int side) const;

    SourceFn source() const {
        return [*this](const Vec2& p, int s) { return f(p, s); };
    }
    std::function<Vec2(const Vec2&)> boundary() const {
        return [*this](const Vec2& p) { return u(p, 1); };
    }
    std::function<Vec2(const Vec2&)> field() const {
        return [*this](const Vec2& p) { return u(p, side(p)); };
    }
};

struct ErrorReport {
    double h = 0.0;
    int dofs = 0;
    double e0 = 0.0, e1 = 0.0;       // global / interface-band H(curl) errors
    double l2_part = 0.0, curl_part = 0.0;  // components of e0
    double band_area = 0.0;          // measure of the interface-element union
};

struct ErrorRules {
    int degree = 6;
};

/// Element-wise H(curl) errors of a DOF vector in the trial space. Interface
/// elements are integrated per chord subdomain, with the exact piece chosen
/// by chord side as well (its closed forms are polynomials, so this is their
/// smooth extension over the sliver between chord and interface). e1 is
/// normalized by the inverse square root of the band area.
ErrorReport hcurl_error(const MeshTopology& mesh, const Classification& cls,
                        const std::vector<LocalEdgeBasis>& bases, const Eigen::VectorXd& dofs,
                        const ManufacturedSolution& exact, const ErrorRules& rules = {});

/// DOF vector of the edge interpolant of the exact solution: tangential edge
/// integrals, split at the interface crossing on cut edges.
Eigen::VectorXd ife_interpolant(const MeshTopology& mesh, const Classification& cls,
                                const ManufacturedSolution& exact, int quad_degree = 8);

/// rate_k = log(e_k / e_{k+1}) / log(h_k / h_{k+1}).
std::vector<double> convergence_rates(const std::vector<std::pair<double, double>>& errors);

}  // namespace hcife
