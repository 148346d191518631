#pragma once

#include <array>
#include <stdexcept>

#include "hcife/interface_geometry.hpp"
#include "hcife/nedelec.hpp"

namespace hcife {

struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Piecewise-constant material coefficients. mu enters as 1/mu in the curl
/// term, beta as the zeroth-order weight.
struct CoefficientPair {
    double mu_minus = 1.0, mu_plus = 1.0;
    double beta_minus = 1.0, beta_plus = 1.0;

    bool matched() const { return mu_minus == mu_plus && beta_minus == beta_plus; }
    double mu(int side) const { return side < 0 ? mu_minus : mu_plus; }
    double beta(int side) const { return side < 0 ? beta_minus : beta_plus; }
};

/// Extension of an edge shape function from the minus to the plus side of the
/// chord, enforcing tangential continuity along the chord, continuity of
/// (1/mu) curl, and beta-weighted normal continuity at the chord midpoint.
NDPolynomial ct_apply(const CutConfiguration& cut, const NDPolynomial& v,
                      const CoefficientPair& coeff);

/// Inverse of ct_apply (the extension map is bijective).
NDPolynomial ct_inverse(const CutConfiguration& cut, const NDPolynomial& w,
                        const CoefficientPair& coeff);

/// Immersed edge basis on one interface element: three piecewise shape
/// functions with Kronecker tangential edge integrals. The minus piece lives
/// on the minus side of the chord and the plus piece on the plus side; the
/// two are linked by the extension map, so all interface conditions hold by
/// construction and the three functions share one constant (1/mu) curl.
struct LocalEdgeBasis {
    CutConfiguration cut;
    CoefficientPair coeff;
    std::array<NDPolynomial, 3> minus, plus;

    const NDPolynomial& piece(int i, int side) const { return side < 0 ? minus[i] : plus[i]; }
    Vec2 eval(int i, const Vec2& p) const { return piece(i, cut.chord_side(p))(p); }
    double curl_over_mu(int i) const { return minus[i].curl() / coeff.mu_minus; }
};

/// Tangential integral of a piecewise shape function along p0 -> p1, split at
/// the chord points D/E where they fall inside the segment.
double split_edge_dof(const CutConfiguration& cut, const NDPolynomial& vminus,
                      const NDPolynomial& vplus, const Vec2& p0, const Vec2& p1);

/// Solve the three 3x3 edge-DOF systems for the basis. Throws SingularSystem
/// if the DOF matrix is numerically singular (cannot happen on non-obtuse
/// cut triangles).
LocalEdgeBasis build_local_basis(const CutConfiguration& cut, const CoefficientPair& coeff);

/// The two eigenvalue surrogates governing unisolvence of the local basis;
/// both are bounded below by min{1, mu_apex/mu_far} resp. min{1,
/// beta_far/beta_apex} on non-obtuse elements and are 1 for matched
/// coefficients.
std::pair<double, double> unisolvence_margin(const CutConfiguration& cut,
                                             const CoefficientPair& coeff);

struct LinearScalar {
    double c = 0.0;
    Vec2 g = Vec2::Zero();
    double operator()(const Vec2& p) const { return c + g.dot(p); }
};

/// Nodal (piecewise linear, continuous across the chord) immersed basis with
/// the beta-weighted flux condition beta- grad z- . n = beta+ grad z+ . n.
struct LocalNodalIFEBasis {
    CutConfiguration cut;
    CoefficientPair coeff;
    std::array<LinearScalar, 3> minus, plus;

    const LinearScalar& piece(int i, int side) const { return side < 0 ? minus[i] : plus[i]; }
    double eval(int i, const Vec2& p) const { return piece(i, cut.chord_side(p))(p); }
    Vec2 grad(int i, int side) const { return piece(i, side).g; }
};

LocalNodalIFEBasis h1_local_basis(const CutConfiguration& cut, const CoefficientPair& coeff);

/// Largest relative least-squares residual of expressing the gradient of each
/// nodal basis function in the span of the edge basis (sampled over both
/// subelements). Zero up to roundoff: the discrete sequence is exact.
double exact_sequence_residual(const CutConfiguration& cut, const CoefficientPair& coeff);

struct InfSupDiagnostics {
    double lambda1 = 0.0, lambda2 = 0.0;  // closed-form eigenvalue pair in (d, e)
    double min_inner = 0.0;  // min over unit curl-free u of u_minus . (interpolant of u)
};

/// Closed-form eigenvalues de(d+e -/+ sqrt(2(d^2+e^2))) / (2(d^2+e^2)).
std::pair<double, double> infsup_case1_eigs(double d, double e);

InfSupDiagnostics local_infsup_eigs(const CutConfiguration& cut, const CoefficientPair& coeff);

}  // namespace hcife
